#pragma once

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <vector>

#include "phi3/numeric.hpp"
#include "phi3/rational.hpp"

namespace phi3 {

namespace detail {

template <class S>
inline constexpr bool is_floating_scalar =
    std::is_same_v<S, double> || std::is_same_v<S, cplx>;

inline void check_branch_point(double x, const char* what) {
    if (x <= 0.0) throw domain_error(std::string(what) + ": base point on the cut (-inf,0]");
}
inline void check_branch_point(cplx z, const char* what) { require_off_cut(z, what); }

inline double scalar_pow(double x, double a) { return std::pow(x, a); }
inline cplx scalar_pow(cplx z, double a) { return std::exp(a * std::log(z)); }

}  // namespace detail

// Truncated Taylor series in one variable t around 0: coeffs[k] is the k-th
// Taylor coefficient, i.e. f^(k)(0)/k!. The order is fixed at construction;
// arithmetic between different orders truncates to the smaller one.
template <class S>
class Jet {
public:
    explicit Jet(int order) : a_(check_order(order) + 1, S(0)) {}

    static Jet constant(const S& v, int order) {
        Jet j(order);
        j.a_[0] = v;
        return j;
    }
    // v + t
    static Jet variable(const S& v, int order) {
        Jet j(order);
        j.a_[0] = v;
        if (order >= 1) j.a_[1] = S(1);
        return j;
    }

    int order() const { return int(a_.size()) - 1; }
    const S& operator[](int k) const { return a_[std::size_t(k)]; }
    S& operator[](int k) { return a_[std::size_t(k)]; }
    const S& value() const { return a_[0]; }

    Jet truncated(int order) const {
        Jet j(order);
        for (int k = 0; k <= std::min(order, this->order()); ++k) j.a_[k] = a_[k];
        return j;
    }

    // d/dt, one order lower (order stays 0 for an order-0 jet).
    Jet derivative() const {
        Jet j(std::max(order() - 1, 0));
        for (int k = 1; k <= order(); ++k) j.a_[k - 1] = S(double(k)) * a_[k];
        if (order() == 0) j.a_[0] = S(0);
        return j;
    }

    S eval(const S& h) const {
        S acc = a_[order()];
        for (int k = order() - 1; k >= 0; --k) acc = acc * h + a_[k];
        return acc;
    }

    friend Jet operator+(const Jet& x, const Jet& y) {
        Jet r(std::min(x.order(), y.order()));
        for (int k = 0; k <= r.order(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
        return r;
    }
    friend Jet operator-(const Jet& x, const Jet& y) {
        Jet r(std::min(x.order(), y.order()));
        for (int k = 0; k <= r.order(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
        return r;
    }
    friend Jet operator-(const Jet& x) {
        Jet r(x.order());
        for (int k = 0; k <= r.order(); ++k) r.a_[k] = -x.a_[k];
        return r;
    }
    friend Jet operator*(const Jet& x, const Jet& y) {
        Jet r(std::min(x.order(), y.order()));
        for (int k = 0; k <= r.order(); ++k) {
            S acc = S(0);
            for (int j = 0; j <= k; ++j) acc += x.a_[j] * y.a_[k - j];
            r.a_[k] = acc;
        }
        return r;
    }
    friend Jet operator/(const Jet& x, const Jet& y) {
        if (y.a_[0] == S(0)) throw singular_error("jet division by zero constant term");
        Jet r(std::min(x.order(), y.order()));
        for (int k = 0; k <= r.order(); ++k) {
            S acc = x.a_[k];
            for (int j = 0; j < k; ++j) acc -= r.a_[j] * y.a_[k - j];
            r.a_[k] = acc / y.a_[0];
        }
        return r;
    }

    friend Jet operator+(const Jet& x, const S& s) { Jet r = x; r.a_[0] += s; return r; }
    friend Jet operator+(const S& s, const Jet& x) { return x + s; }
    friend Jet operator-(const Jet& x, const S& s) { Jet r = x; r.a_[0] -= s; return r; }
    friend Jet operator-(const S& s, const Jet& x) { return (-x) + s; }
    friend Jet operator*(const Jet& x, const S& s) {
        Jet r = x;
        for (auto& v : r.a_) v *= s;
        return r;
    }
    friend Jet operator*(const S& s, const Jet& x) { return x * s; }
    friend Jet operator/(const Jet& x, const S& s) {
        Jet r = x;
        for (auto& v : r.a_) v = v / s;
        return r;
    }
    friend Jet operator/(const S& s, const Jet& x) { return constant(s, x.order()) / x; }

private:
    static int check_order(int order) {
        if (order < 0) throw input_error("Jet: negative order");
        return order;
    }
    std::vector<S> a_;
};

// sqrt via s0 = sqrt(a0), s_k = (a_k - sum_{j=1}^{k-1} s_j s_{k-j}) / (2 s0).
template <class S>
Jet<S> sqrt(const Jet<S>& x) {
    static_assert(detail::is_floating_scalar<S>, "jet sqrt needs a floating scalar");
    detail::check_branch_point(x[0], "jet sqrt");
    using std::sqrt;
    Jet<S> r(x.order());
    r[0] = sqrt(x[0]);
    for (int k = 1; k <= r.order(); ++k) {
        S acc = x[k];
        for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
        r[k] = acc / (S(2) * r[0]);
    }
    return r;
}

// log via a l' = a'.
template <class S>
Jet<S> log(const Jet<S>& x) {
    static_assert(detail::is_floating_scalar<S>, "jet log needs a floating scalar");
    detail::check_branch_point(x[0], "jet log");
    using std::log;
    Jet<S> r(x.order());
    r[0] = log(x[0]);
    for (int k = 1; k <= r.order(); ++k) {
        S acc = x[k];
        for (int m = 1; m < k; ++m) acc -= (double(k - m) / double(k)) * x[m] * r[k - m];
        r[k] = acc / x[0];
    }
    return r;
}

// x^alpha (principal branch) via a p' = alpha a' p.
template <class S>
Jet<S> pow(const Jet<S>& x, double alpha, const char* what = "jet pow") {
    static_assert(detail::is_floating_scalar<S>, "jet pow needs a floating scalar");
    detail::check_branch_point(x[0], what);
    Jet<S> r(x.order());
    r[0] = detail::scalar_pow(x[0], alpha);
    for (int k = 1; k <= r.order(); ++k) {
        S acc = S(0);
        for (int j = 1; j <= k; ++j) acc += S((alpha + 1.0) * j - double(k)) * x[j] * r[k - j];
        r[k] = acc / (S(double(k)) * x[0]);
    }
    return r;
}

// exp via e' = a' e. For non-floating scalars (exact jets) only a vanishing
// constant term is accepted: exp then stays inside the coefficient field.
template <class S>
Jet<S> exp(const Jet<S>& x) {
    Jet<S> r(x.order());
    if constexpr (detail::is_floating_scalar<S>) {
        using std::exp;
        r[0] = exp(x[0]);
    } else {
        if (!(x[0] == S(0)))
            throw input_error("jet exp on an exact scalar requires zero constant term");
        r[0] = S(1);
    }
    for (int k = 1; k <= r.order(); ++k) {
        S acc = S(0);
        for (int j = 1; j <= k; ++j) acc += S(double(j)) * x[j] * r[k - j];
        r[k] = acc / S(double(k));
    }
    return r;
}

inline double jet_abs(const Jet<cplx>& j) {
    double m = 0.0;
    for (int k = 0; k <= j.order(); ++k) m = std::max(m, std::abs(j[k]));
    return m;
}
inline double jet_abs(const Jet<double>& j) {
    double m = 0.0;
    for (int k = 0; k <= j.order(); ++k) m = std::max(m, std::abs(j[k]));
    return m;
}

}  // namespace phi3
