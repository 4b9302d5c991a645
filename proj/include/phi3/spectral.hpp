#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "phi3/jet.hpp"
#include "phi3/numeric.hpp"
#include "phi3/quadrature.hpp"

namespace phi3 {

// Eigenvalue profile e: R+ -> R+ with e(0) = 0, monotone increasing and
// differentiable. The linear profile e(x) = x is the model of interest and
// gets closed forms everywhere; Custom profiles are served by quadrature.
struct EigenvalueFunction {
    enum class Kind { linear, custom };
    Kind kind = Kind::linear;
    std::function<double(double)> e, de, einv;

    static EigenvalueFunction linear() { return {}; }
    static EigenvalueFunction custom(std::function<double(double)> e_,
                                     std::function<double(double)> de_,
                                     std::function<double(double)> einv_) {
        EigenvalueFunction f;
        f.kind = Kind::custom;
        f.e = std::move(e_);
        f.de = std::move(de_);
        f.einv = std::move(einv_);
        return f;
    }

    bool is_linear() const { return kind == Kind::linear; }
    double eval(double x) const { return is_linear() ? x : e(x); }
    double deriv(double x) const { return is_linear() ? 1.0 : de(x); }
    double inverse(double y) const { return is_linear() ? y : einv(y); }
};

// X = (2 e(x) + 1)^2, the transformed argument all closed forms live on.
inline double X_of_x(double x, const EigenvalueFunction& e = EigenvalueFunction::linear()) {
    const double v = 2.0 * e.eval(x) + 1.0;
    return v * v;
}

// Spectral measure rho(Y) = 2 lambda^2 / (sqrt(Y) e'(e^{-1}((sqrt(Y)-1)/2))).
struct Measure {
    cplx lambda2;
    EigenvalueFunction e;

    cplx operator()(double Y) const {
        const double sy = std::sqrt(Y);
        double d = 1.0;
        if (!e.is_linear()) d = e.deriv(e.inverse(0.5 * (sy - 1.0)));
        return 2.0 * lambda2 / (sy * d);
    }
};

// A solved model point: lambda2 with the matching c on the branch connected to
// c(0) = 0, plus rho0. Z = 1 and nu = 0 throughout.
struct Coupling {
    cplx lambda;   // the (signed / branch-chosen) coupling itself
    cplx lambda2;  // lambda^2
    cplx c;
    cplx rho0;
    EigenvalueFunction e;

    bool is_free() const { return lambda2 == cplx(0); }
    Measure measure() const { return Measure{lambda2, e}; }
};

struct MomentTable {
    Coupling coupling;
    std::vector<cplx> rho;  // rho[l], l = 0..L

    int max_order() const { return int(rho.size()) - 1; }
};

namespace detail {

inline cplx cpow(cplx z, double a) { return scalar_pow(z, a); }

// residual of the normalisation W(1) = 1 as a function of c
inline cplx normalization_residual_c(cplx lambda2, cplx c, const EigenvalueFunction& e) {
    require_off_cut(1.0 + c, "normalisation");
    const cplx s1 = std::sqrt(1.0 + c);
    if (e.is_linear()) return 1.0 - s1 - 2.0 * lambda2 * std::log(1.0 + 1.0 / s1);
    Measure rho{lambda2, e};
    cplx integral = integrate_tail(
        [&](double T) {
            const cplx st = std::sqrt(T + c);
            return rho(T) / ((s1 + st) * st);
        },
        1e-14);
    return 1.0 - s1 - 0.5 * integral;
}

inline cplx normalization_residual_dc(cplx lambda2, cplx c, const EigenvalueFunction& e) {
    if (e.is_linear()) {
        const cplx s1 = std::sqrt(1.0 + c);
        return -0.5 / s1 + lambda2 / ((1.0 + c) * (s1 + 1.0));
    }
    const double h = 1e-7 * (1.0 + std::abs(c));
    return (normalization_residual_c(lambda2, c + h, e) -
            normalization_residual_c(lambda2, c - h, e)) /
           (2.0 * h);
}

inline cplx rho0_of(cplx lambda2, cplx c, const EigenvalueFunction& e) {
    if (e.is_linear()) {
        const cplx s1 = std::sqrt(1.0 + c);
        return 1.0 - 2.0 * lambda2 / (s1 * (s1 + 1.0));
    }
    Measure rho{lambda2, e};
    cplx integral = integrate_tail([&](double T) { return rho(T) * cpow(T + c, -1.5); }, 1e-14);
    return 1.0 - 0.5 * integral;
}

// I1(c) = int rho(T)/lambda2 dT / ((sqrt(1+c)+sqrt(T+c)) sqrt(T+c)) / 2 * 2 ...
// Both critical-point integrals are linear in lambda2, so factor it out.
inline double crit_I1(double c, const EigenvalueFunction& e) {
    if (e.is_linear()) return 2.0 * std::log(1.0 + 1.0 / std::sqrt(1.0 + c));
    Measure rho{cplx(1.0), e};  // unit lambda2
    const double s1 = std::sqrt(1.0 + c);
    return 0.5 * integrate_tail(
                     [&](double T) {
                         const double st = std::sqrt(T + c);
                         return rho(T).real() / ((s1 + st) * st);
                     },
                     1e-14);
}

inline double crit_I2(double c, const EigenvalueFunction& e) {
    if (e.is_linear()) {
        const double s1 = std::sqrt(1.0 + c);
        return 2.0 / (s1 * (s1 + 1.0));
    }
    Measure rho{cplx(1.0), e};
    return 0.5 *
           integrate_tail([&](double T) { return rho(T).real() * std::pow(T + c, -1.5); }, 1e-14);
}

}  // namespace detail

// Coefficients of c as a series in lambda2 (linear profile), obtained by
// formal inversion of the normalisation with Jet arithmetic: coeff[k]
// multiplies lambda2^k, coeff[0] = 0.
inline std::vector<double> c_series(int order) {
    if (order < 0) throw input_error("c_series: negative order");
    if (order > 10) throw input_error("c_series: order > 10 not supported");
    using J = Jet<double>;
    J s = J::variable(0.0, order);
    J u = J::constant(1.0, order);
    // u = 1 - 2 s log(1 + 1/u); each sweep gains one order in s
    for (int it = 0; it <= order; ++it) {
        u = J::constant(1.0, order) - 2.0 * s * log(J::constant(1.0, order) + J::constant(1.0, order) / u);
    }
    J c = u * u - J::constant(1.0, order);
    std::vector<double> out(std::size_t(order) + 1);
    for (int k = 0; k <= order; ++k) out[std::size_t(k)] = c[k];
    return out;
}

// The 2x2 critical-point system in the unknowns (lambda2, c):
//   F1 = normalisation residual of W(1) = 1,   F2 = rho0.
inline std::pair<double, double> critical_system(double lambda2, double c,
                                                 const EigenvalueFunction& e) {
    const double F1 = detail::normalization_residual_c(lambda2, c, e).real();
    const double F2 = 1.0 - lambda2 * detail::crit_I2(c, e);
    return {F1, F2};
}

// Jacobian of critical_system; analytic for the linear profile.
inline std::array<double, 4> critical_jacobian(double lambda2, double c,
                                               const EigenvalueFunction& e) {
    const double J11 = -detail::crit_I1(c, e);
    const double J12 = detail::normalization_residual_dc(lambda2, c, e).real();
    const double J21 = -detail::crit_I2(c, e);
    double J22;
    if (e.is_linear()) {
        const double s = std::sqrt(1.0 + c);
        const double q = s * s + s;
        J22 = lambda2 * (2.0 * s + 1.0) / (s * q * q);
    } else {
        const double hc = 1e-7 * (1.0 + std::abs(c));
        J22 = -lambda2 * (detail::crit_I2(c + hc, e) - detail::crit_I2(c - hc, e)) / (2.0 * hc);
    }
    return {J11, J12, J21, J22};
}

// Critical point (lambda_c, c_c): the simultaneous zero of the normalisation
// residual and rho0. A 1D bracket on c seeds the 2x2 Newton iteration.
inline std::pair<double, double> critical_point(
    const EigenvalueFunction& e = EigenvalueFunction::linear()) {
    auto g = [&](double c) {
        return 1.0 - std::sqrt(1.0 + c) - detail::crit_I1(c, e) / detail::crit_I2(c, e);
    };
    double lo = -0.999, hi = -1e-3;
    double glo = g(lo), ghi = g(hi);
    if (glo * ghi > 0) throw convergence_error("critical_point: no sign change on (-1,0)");
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (glo * gm <= 0) { hi = mid; ghi = gm; } else { lo = mid; glo = gm; }
    }
    double c = 0.5 * (lo + hi);
    double a = 1.0 / detail::crit_I2(c, e);  // lambda2

    for (int it = 0; it < 40; ++it) {
        auto [F1, F2] = critical_system(a, c, e);
        auto [J11, J12, J21, J22] = critical_jacobian(a, c, e);
        const double det = J11 * J22 - J12 * J21;
        if (det == 0.0) throw convergence_error("critical_point: singular Jacobian");
        const double da = (F1 * J22 - J12 * F2) / det;
        const double dc = (J11 * F2 - F1 * J21) / det;
        a -= da;
        c -= dc;
        if (std::abs(da) + std::abs(dc) < 1e-15) break;
    }
    if (!(a > 0.0) || !(c > -1.0 && c < 0.0))
        throw convergence_error("critical_point: iteration left the physical branch");
    return {std::sqrt(a), c};
}

// Solve the normalisation W(1) = 1 for c on the branch continuously connected
// to c = 0 at lambda = 0. Real lambda2 is handled on the real branch
// (bisection-safeguarded Newton); complex lambda2 by damped Newton seeded from
// the small-coupling series.
inline Coupling solve_c(cplx lambda2, const EigenvalueFunction& e = EigenvalueFunction::linear()) {
    Coupling cp;
    cp.e = e;
    cp.lambda2 = lambda2;
    cp.lambda = std::sqrt(lambda2);
    if (lambda2 == cplx(0)) {
        cp.c = 0.0;
        cp.rho0 = 1.0;
        return cp;
    }

    if (lambda2.imag() == 0.0) {
        const double a = lambda2.real();
        double c_crit = -1.0;
        if (a > 0.0) {
            auto [lc, cc] = critical_point(e);
            c_crit = cc;
            if (a >= lc * lc) {
                std::ostringstream os;
                os << "solve_c: no real solution for lambda2 = " << a
                   << "; the coupling must satisfy |lambda| < lambda_c = " << lc
                   << " (attained at c_c = " << cc << ")";
                throw domain_error(os.str());
            }
        }
        auto F = [&](double c) { return detail::normalization_residual_c(lambda2, c, e).real(); };
        double lo, hi;
        if (a > 0.0) {
            lo = c_crit + 1e-13;
            hi = 0.0;
        } else {
            lo = 0.0;
            hi = 1.0;
            while (F(hi) > 0.0 && hi < 1e8) hi *= 2.0;
        }
        double flo = F(lo), fhi = F(hi);
        if (flo * fhi > 0) throw convergence_error("solve_c: bracket failure on the real branch");
        double c = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            const double f = F(c);
            if (f == 0.0) break;
            if (flo * f <= 0) { hi = c; fhi = f; } else { lo = c; flo = f; }
            const double dF = detail::normalization_residual_dc(lambda2, c, e).real();
            double cn = c - f / dF;
            if (!(cn > lo && cn < hi)) cn = 0.5 * (lo + hi);
            if (std::abs(cn - c) < 1e-16 * (1.0 + std::abs(c))) { c = cn; break; }
            c = cn;
        }
        cp.c = c;
        cp.rho0 = detail::rho0_of(lambda2, cp.c, e);
        return cp;
    }

    // complex coupling: Newton from the series seed
    auto series = c_series(3);
    cplx c = series[1] * lambda2 + series[2] * lambda2 * lambda2 +
             series[3] * lambda2 * lambda2 * lambda2;
    std::ostringstream trace;
    for (int it = 0; it < 80; ++it) {
        const cplx f = detail::normalization_residual_c(lambda2, c, e);
        trace << it << ": c=" << c << " |F|=" << std::abs(f) << "\n";
        if (std::abs(f) < 1e-14) {
            cp.c = c;
            cp.rho0 = detail::rho0_of(lambda2, c, e);
            return cp;
        }
        const cplx df = detail::normalization_residual_dc(lambda2, c, e);
        cplx step = f / df;
        // keep iterates off the cut (-inf,-1]
        for (int halve = 0; halve < 50 && on_principal_cut(1.0 + c - step); ++halve) step *= 0.5;
        c -= step;
    }
    throw convergence_error("solve_c: Newton did not converge; trace:\n" + trace.str());
}

// Convenience constructor fixing the sign of lambda itself (needed by the
// lambda-odd correlators).
inline Coupling solve_coupling(cplx lambda,
                               const EigenvalueFunction& e = EigenvalueFunction::linear()) {
    Coupling cp = solve_c(lambda * lambda, e);
    cp.lambda = lambda;
    return cp;
}

inline cplx normalization_residual(const Coupling& cp) {
    return detail::normalization_residual_c(cp.lambda2, cp.c, cp.e);
}

// Moments rho_l = delta_{l,0} - 1/2 int_1^inf rho(T) (T+c)^{-(3+2l)/2} dT by
// adaptive quadrature on the compactified tail; absolute accuracy 1e-12.
inline MomentTable moments(const Coupling& cp, int L) {
    if (L < 0) throw input_error("moments: L < 0");
    require_off_cut(cp.c + 1.0, "moments: c");
    MomentTable t;
    t.coupling = cp;
    t.rho.resize(std::size_t(L) + 1);
    Measure rho = cp.measure();
    for (int l = 0; l <= L; ++l) {
        cplx integral(0);
        if (!cp.is_free()) {
            const double expo = -(1.5 + double(l));
            integral = integrate_tail(
                [&](double T) { return rho(T) * detail::cpow(T + cp.c, expo); }, 1e-12);
        }
        t.rho[std::size_t(l)] = (l == 0 ? cplx(1) : cplx(0)) - 0.5 * integral;
    }
    return t;
}

}  // namespace phi3
