#pragma once

#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "phi3/mpoly.hpp"
#include "phi3/rational.hpp"

namespace phi3 {

namespace detail {

template <class T>
struct ring;
template <>
struct ring<Rational> {
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational one(const Rational&) { return Rational(1); }
    static Rational scalar(const Rational&, const Rational& q) { return q; }
};
template <>
struct ring<MPoly> {
    static MPoly zero(const MPoly& p) { return MPoly(p.arity()); }
    static MPoly one(const MPoly& p) { return MPoly::constant(p.arity(), 1); }
    static MPoly scalar(const MPoly& p, const Rational& q) { return MPoly::constant(p.arity(), q); }
};

}  // namespace detail

// Partial Bell polynomial B_{n,k}(x_1,...,x_{n-k+1}) over Rational or MPoly
// entries, by the recurrence
//   B_{n,k} = sum_{j=1}^{n-k+1} C(n-1, j-1) x_j B_{n-j,k-1}.
// B_{0,k} = delta_{k,0}; k > n yields zero (an empty sum, not an error).
template <class T>
T bell_partial(int n, int k, std::span<const T> xs) {
    if (n < 0 || k < 0) throw input_error("bell_partial: negative arguments");
    if (n == 0) {
        if (!xs.empty())
            return k == 0 ? detail::ring<T>::one(xs[0]) : detail::ring<T>::zero(xs[0]);
        if constexpr (std::is_same_v<T, Rational>) return Rational(k == 0 ? 1 : 0);
        else throw input_error("bell_partial: B_{0,k} over MPoly needs a prototype variable");
    }
    if (xs.empty()) throw input_error("bell_partial: no variables supplied");
    const T& proto = xs[0];
    if (k == 0 || k > n) return detail::ring<T>::zero(proto);
    if (int(xs.size()) < n - k + 1) throw input_error("bell_partial: needs x_1..x_{n-k+1}");

    std::vector<std::vector<T>> memo(std::size_t(n) + 1,
                                     std::vector<T>(std::size_t(k) + 1, detail::ring<T>::zero(proto)));
    memo[0][0] = detail::ring<T>::one(proto);
    for (int nn = 1; nn <= n; ++nn)
        for (int kk = 1; kk <= std::min(nn, k); ++kk) {
            T acc = detail::ring<T>::zero(proto);
            for (int j = 1; j <= nn - kk + 1; ++j) {
                if (j > int(xs.size())) break;
                acc += xs[std::size_t(j - 1)] *
                       detail::ring<T>::scalar(proto, Rational(binomial(nn - 1, j - 1))) *
                       memo[std::size_t(nn - j)][std::size_t(kk - 1)];
            }
            memo[std::size_t(nn)][std::size_t(kk)] = acc;
        }
    return memo[std::size_t(n)][std::size_t(k)];
}

// The Definition's multi-index sum; exponential cost, kept as a cross-check.
template <class T>
T bell_partial_definition(int n, int k, std::span<const T> xs) {
    if (n < 0 || k < 0) throw input_error("bell_partial_definition: negative arguments");
    if (n == 0) {
        if (!xs.empty()) return k == 0 ? detail::ring<T>::one(xs[0]) : detail::ring<T>::zero(xs[0]);
        if constexpr (std::is_same_v<T, Rational>) return Rational(k == 0 ? 1 : 0);
        else throw input_error("bell_partial_definition: needs a prototype variable");
    }
    if (xs.empty()) throw input_error("bell_partial_definition: no variables supplied");
    const T& proto = xs[0];
    T total = detail::ring<T>::zero(proto);
    const int W = n - k + 1;
    if (k > n || k < 1 || int(xs.size()) < W) {
        if (k > n || k < 1) return total;
        throw input_error("bell_partial_definition: needs x_1..x_{n-k+1}");
    }
    std::vector<int> j(std::size_t(W) + 1, 0);  // j[i] for i = 1..W
    auto rec = [&](auto&& self, int i, int sum_j, int sum_ij) -> void {
        if (i > W) {
            if (sum_j != k || sum_ij != n) return;
            Rational coef(factorial(n));
            for (int t = 1; t <= W; ++t)
                coef /= Rational(factorial(j[std::size_t(t)]) *
                                 Int(boost::multiprecision::pow(Int(factorial(t)), unsigned(j[std::size_t(t)]))));
            T term = detail::ring<T>::scalar(proto, coef);
            for (int t = 1; t <= W; ++t)
                for (int rep = 0; rep < j[std::size_t(t)]; ++rep) term *= xs[std::size_t(t - 1)];
            total += term;
            return;
        }
        for (int v = 0; sum_j + v <= k && sum_ij + i * v <= n; ++v) {
            j[std::size_t(i)] = v;
            self(self, i + 1, sum_j + v, sum_ij + i * v);
        }
        j[std::size_t(i)] = 0;
    };
    rec(rec, 1, 0, 0);
    return total;
}

// Cached symbolic B_{n,k} in x_1..x_arity.
inline const MPoly& bell_symbolic(int n, int k, int arity) {
    if (arity < 1) throw input_error("bell_symbolic: arity < 1");
    if (n >= 1 && k >= 1 && k <= n && arity < n - k + 1)
        throw input_error("bell_symbolic: arity too small");
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, MPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, k, arity);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<MPoly> xs;
    for (int i = 1; i <= arity; ++i) xs.push_back(MPoly::var(arity, i));
    MPoly val = bell_partial<MPoly>(n, k, xs);
    return cache.emplace(key, std::move(val)).first->second;
}

// Left/right side of the Bell identity
//   sum_{j=1}^{n-k} (alpha j + beta) C(n,j) x_j B_{n-j,k} =
//   (alpha n + beta (k+1)) B_{n,k+1},
// as polynomials in x_1..x_{n-k}.
inline MPoly bell_identity_lhs(int n, int k, const Rational& alpha, const Rational& beta) {
    if (n < 1 || k < 0 || k > n - 1) throw input_error("bell_identity: need n >= 1, 0 <= k <= n-1");
    const int R = std::max(n - k, 1);
    MPoly acc(R);
    for (int j = 1; j <= n - k; ++j) {
        Rational coef = (alpha * j + beta) * Rational(binomial(n, j));
        acc += coef * MPoly::var(R, j) * bell_symbolic(n - j, k, R);
    }
    return acc;
}

inline MPoly bell_identity_rhs(int n, int k, const Rational& alpha, const Rational& beta) {
    if (n < 1 || k < 0 || k > n - 1) throw input_error("bell_identity: need n >= 1, 0 <= k <= n-1");
    const int R = std::max(n - k, 1);
    return (alpha * n + beta * (k + 1)) * bell_symbolic(n, k + 1, R);
}

inline bool verify_bell_identity_1(int n, int k, const Rational& alpha, const Rational& beta) {
    return (bell_identity_lhs(n, k, alpha, beta) - bell_identity_rhs(n, k, alpha, beta)).is_zero();
}

namespace detail {

// F(s, a) = sum_{K=0}^{s} (a+K)! B_{s,K}(x) / s!, with empty or
// negative-argument terms dropped (1/Gamma convention).
inline MPoly conjecture_inner_sum(int s, long a, int arity) {
    MPoly acc(arity);
    if (s < 0) return acc;
    if (s == 0) {
        if (a >= 0) acc += MPoly::constant(arity, Rational(factorial(a)));
        return acc;
    }
    const Rational inv_sfact(1, factorial(s));
    for (int K = 1; K <= s; ++K) {
        if (a + K < 0) continue;
        acc += Rational(factorial(a + K)) * inv_sfact * bell_symbolic(s, K, arity);
    }
    return acc;
}

}  // namespace detail

struct ConjectureSides {
    MPoly lhs, rhs;
    int arity;
};

// Both sides of the multi-boundary Bell identity for parameters
// (l; n_0..n_p), expanded exactly over symbolic x_r.
inline ConjectureSides conjecture_sides(int l, std::span<const int> counts) {
    if (l < 0) throw input_error("conjecture: l < 0");
    long N = 0, M = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) throw input_error("conjecture: negative count");
        N += counts[i];
        M += long(i) * counts[i];
    }
    if (N == 0) throw input_error("conjecture: all counts zero");
    const int p = int(counts.size()) - 1;
    const long s0 = N - M - l - 4;
    const int R = int(std::max<long>({1, s0, N - 2}));

    MPoly lhs(R), rhs(R);

    if (s0 >= 0) {
        lhs += Rational(double_factorial(2 * l + 5), factorial(l + 2)) *
               detail::conjecture_inner_sum(int(s0), N - 2, R);
        Rational inner(0);
        for (int i = 0; i <= p; ++i) {
            if (counts[std::size_t(i)] == 0) continue;
            inner += Rational(counts[std::size_t(i)]) *
                     Rational(double_factorial(2 * l + 2 * i + 3) * Int(2 * i + 1) * factorial(i),
                              double_factorial(2 * i + 1) * factorial(l + i + 1));
        }
        lhs -= inner * detail::conjecture_inner_sum(int(s0), N - 3, R);
    }

    for (long j = 1; s0 - j >= 0; ++j) {
        Rational coef(double_factorial(2 * j + 2 * l + 5) * factorial(j + 1),
                      double_factorial(2 * j + 1) * factorial(j + l + 2));
        coef /= Rational(factorial(j));
        rhs += coef * MPoly::var(R, int(j)) * detail::conjecture_inner_sum(int(s0 - j), N - 2, R);
    }

    // sum over partitions of the multiset and of l
    std::vector<int> sub(counts.size(), 0);
    auto loop = [&](auto&& self, std::size_t i) -> void {
        if (i == counts.size()) {
            long Np = 0, Mp = 0;
            Rational mult(1);
            for (std::size_t t = 0; t < counts.size(); ++t) {
                Np += sub[t];
                Mp += long(t) * sub[t];
                mult *= Rational(binomial(counts[t], sub[t]));
            }
            const long Npp = N - Np, Mpp = M - Mp;
            for (int lp = 0; lp <= l; ++lp) {
                const int lpp = l - lp;
                const long sp = Np - Mp - lp - 2, spp = Npp - Mpp - lpp - 2;
                if (sp < 0 || spp < 0) continue;
                Rational coef = mult *
                                Rational(double_factorial(2 * lp + 1) * double_factorial(2 * lpp + 1),
                                         factorial(lp) * factorial(lpp)) *
                                Rational(1, 2);
                rhs += coef * (detail::conjecture_inner_sum(int(sp), Np - 2, R) *
                               detail::conjecture_inner_sum(int(spp), Npp - 2, R));
            }
            return;
        }
        for (int v = 0; v <= counts[i]; ++v) {
            sub[i] = v;
            self(self, i + 1);
        }
        sub[i] = 0;
    };
    loop(loop, 0);

    return {std::move(lhs), std::move(rhs), R};
}

inline bool verify_conjecture(int l, std::span<const int> counts) {
    auto sides = conjecture_sides(l, counts);
    return sides.lhs == sides.rhs;
}

// The footnote identity: an exact rational identity in (m; n_2..n_p).
// counts[j-2] holds n_j.
inline Rational footnote_lhs(int m, std::span<const int> counts) {
    if (m < 0) throw input_error("footnote: m < 0");
    for (int v : counts)
        if (v < 0) throw input_error("footnote: negative count");
    Rational acc(0);
    std::vector<int> sub(counts.size(), 0);
    auto loop = [&](auto&& self, std::size_t i) -> void {
        if (i == counts.size()) {
            long jsum_p = 0, jm1_p = 0, jsum_pp = 0, jm1_pp = 0;
            Rational mult(1);
            for (std::size_t t = 0; t < counts.size(); ++t) {
                const long j = long(t) + 2;
                jsum_p += j * sub[t];
                jm1_p += (j - 1) * sub[t];
                jsum_pp += j * (counts[t] - sub[t]);
                jm1_pp += (j - 1) * (counts[t] - sub[t]);
                mult *= Rational(binomial(counts[t], sub[t]));
            }
            for (int kp = 0; kp <= m; ++kp) {
                const int kpp = m - kp;
                Rational term = mult;
                term *= Rational(double_factorial(2 * kp + 1) * double_factorial(2 * kpp + 1),
                                 factorial(kp) * factorial(kpp));
                term *= Rational(factorial(kp + jsum_p) * factorial(kpp + jsum_pp),
                                 factorial(2 + kp + jm1_p) * factorial(2 + kpp + jm1_pp));
                acc += term;
            }
            return;
        }
        for (int v = 0; v <= counts[i]; ++v) {
            sub[i] = v;
            self(self, i + 1);
        }
        sub[i] = 0;
    };
    loop(loop, 0);
    return acc;
}

inline Rational footnote_rhs(int m, std::span<const int> counts) {
    long jsum = 0, jm1 = 0;
    for (std::size_t t = 0; t < counts.size(); ++t) {
        jsum += (long(t) + 2) * counts[t];
        jm1 += (long(t) + 1) * counts[t];
    }
    Rational brace(double_factorial(2 * m + 3), factorial(m));
    for (std::size_t t = 0; t < counts.size(); ++t) {
        if (counts[t] == 0) continue;
        const long j = long(t) + 2;
        Rational a(double_factorial(2 * m + 3) * Int((m + 3) * j + m + 2), factorial(m + 2));
        Rational b(factorial(j) * double_factorial(2 * j + 2 * m + 3),
                   factorial(j + m + 1) * double_factorial(2 * j - 1));
        brace += Rational(counts[t]) * (a - b);
    }
    return Rational(2 * factorial(m + 1 + jsum), factorial(m + 4 + jm1)) * brace;
}

inline bool verify_footnote_identity(int m, std::span<const int> counts) {
    return footnote_lhs(m, counts) == footnote_rhs(m, counts);
}

}  // namespace phi3
