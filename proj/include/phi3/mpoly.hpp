#pragma once

#include <map>
#include <span>
#include <sstream>
#include <vector>

#include "phi3/rational.hpp"

namespace phi3 {

// Multivariate polynomial over Rational in indeterminates x_1..x_R.
// Terms are kept in a canonical total-degree-then-lex order and zero
// coefficients are never stored, so operator== is structural equality.
class MPoly {
public:
    using Exp = std::vector<unsigned>;

    explicit MPoly(int arity) : arity_(check_arity(arity)) {}

    static MPoly constant(int arity, Rational c) {
        MPoly p(arity);
        if (c != 0) p.terms_.emplace(Exp(arity, 0u), std::move(c));
        return p;
    }

    // x_i with 1-based index i.
    static MPoly var(int arity, int i) {
        if (i < 1 || i > arity) throw input_error("MPoly::var: index out of range");
        MPoly p(arity);
        Exp e(arity, 0u);
        e[i - 1] = 1;
        p.terms_.emplace(std::move(e), Rational(1));
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    MPoly with_arity(int R) const {
        if (R == arity_) return *this;
        if (R < arity_) {
            for (const auto& [e, c] : terms_)
                for (int i = R; i < arity_; ++i)
                    if (e[i] != 0) throw input_error("MPoly::with_arity: would drop a live indeterminate");
        }
        MPoly p(R);
        for (const auto& [e, c] : terms_) {
            Exp f(R, 0u);
            for (int i = 0; i < std::min(R, arity_); ++i) f[i] = e[i];
            p.terms_.emplace(std::move(f), c);
        }
        return p;
    }

    MPoly& operator+=(const MPoly& o) {
        check_same_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check_same_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(const MPoly& a) {
        MPoly r(a.arity_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_same_arity(b);
        MPoly r(a.arity_);
        Exp e(a.arity_, 0u);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly& operator*=(const Rational& s) {
        if (s == 0) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend MPoly operator*(MPoly a, const Rational& s) { return a *= s; }
    friend MPoly operator*(const Rational& s, MPoly a) { return a *= s; }

    MPoly pow(unsigned n) const {
        MPoly r = constant(arity_, 1);
        MPoly base = *this;
        while (n) {
            if (n & 1u) r *= base;
            base = (n >>= 1u) ? base * base : base;
        }
        return r;
    }

    template <class F>
    F eval(std::span<const F> xs) const {
        if (int(xs.size()) != arity_) throw input_error("MPoly::eval: wrong number of values");
        F acc = F(0);
        for (const auto& [e, c] : terms_) {
            F t = coeff_as<F>(c);
            for (int i = 0; i < arity_; ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= xs[i];
            acc += t;
        }
        return acc;
    }
    Rational eval_exact(std::span<const Rational> xs) const { return eval<Rational>(xs); }
    cplx eval_complex(std::span<const cplx> xs) const { return eval<cplx>(xs); }

    bool operator==(const MPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            for (int i = 0; i < arity_; ++i) {
                if (e[i] == 0) continue;
                os << "*x" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    struct GradedLex {
        bool operator()(const Exp& a, const Exp& b) const {
            unsigned da = 0, db = 0;
            for (unsigned v : a) da += v;
            for (unsigned v : b) db += v;
            if (da != db) return da < db;
            return a < b;
        }
    };

    static int check_arity(int arity) {
        if (arity < 0) throw input_error("MPoly: negative arity");
        return arity;
    }
    void check_same_arity(const MPoly& o) const {
        if (arity_ != o.arity_) throw input_error("MPoly: arity mismatch");
    }
    void add_term(const Exp& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    template <class F>
    static F coeff_as(const Rational& c) {
        if constexpr (std::is_same_v<F, Rational>) return c;
        else return F(to_double(c));
    }

    int arity_;
    std::map<Exp, Rational, GradedLex> terms_;
};

}  // namespace phi3
