#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "phi3/jet.hpp"
#include "phi3/numeric.hpp"

namespace phi3 {
namespace quad {

// Gauss-Kronrod 7-15 pair (QUADPACK dqk15 abscissas/weights).
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(cplx v) { return std::abs(v); }
template <class S>
double norm_of(const Jet<S>& v) { return jet_abs(v); }

template <class V>
struct Panel {
    V integral;
    double err;
    double resabs;  // integral of |f|, the roundoff scale
};

template <class F, class V = std::invoke_result_t<F, double>>
Panel<V> kronrod_panel(F&& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double m = 0.5 * (a + b);
    V fc = f(m);
    V ik = fc * wgk[7];
    V ig = fc * wg[3];
    double resabs = norm_of(fc) * wgk[7];
    for (int i = 0; i < 7; ++i) {
        V f1 = f(m - h * xgk[i]);
        V f2 = f(m + h * xgk[i]);
        ik = ik + (f1 + f2) * wgk[i];
        resabs += (norm_of(f1) + norm_of(f2)) * wgk[i];
        if (i % 2 == 1) ig = ig + (f1 + f2) * wg[i / 2];
    }
    ik = ik * h;
    ig = ig * h;
    return {ik, norm_of(ik - ig), resabs * std::abs(h)};
}

template <class F, class V>
void adapt(F& f, double a, double b, double tol, int depth, V& acc, double& err_acc,
           long& panels) {
    auto p = kronrod_panel(f, a, b);
    // stop at the roundoff floor of the estimator, QUADPACK-style
    const double floor = 100.0 * 2.3e-16 * p.resabs;
    if (p.err <= tol || p.err <= floor || depth >= 50 || ++panels > 200000) {
        acc = acc + p.integral;
        err_acc += p.err;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1, acc, err_acc, panels);
    adapt(f, m, b, 0.5 * tol, depth + 1, acc, err_acc, panels);
}

}  // namespace quad

// Adaptive Gauss-Kronrod integration of f over [a,b]; V may be double, cplx or
// a Jet (coefficient-wise integration with a max-norm error estimate).
template <class F, class V = std::invoke_result_t<F, double>>
V integrate(F f, double a, double b, double abs_tol = 1e-12) {
    auto p0 = quad::kronrod_panel(f, a, b);
    if (p0.err <= abs_tol) return p0.integral;
    V acc = p0.integral * 0.0;
    double err = 0.0;
    long panels = 0;
    quad::adapt(f, a, b, abs_tol, 0, acc, err, panels);
    if (err > std::max(64.0 * abs_tol, 1e-13 * quad::norm_of(acc)))
        throw quadrature_error("adaptive quadrature: achieved error estimate " +
                               std::to_string(err) + " exceeds target " + std::to_string(abs_tol));
    return acc;
}

// Integral over the spectral tail [1, infinity) via T = 1/v^2, v in (0,1]:
//   int_1^inf f(T) dT = int_0^1 f(1/v^2) * 2 v^-3 dv.
// The decay f(T) ~ T^(-1-eps) makes the transformed integrand bounded; the
// open Kronrod rule never evaluates v = 0.
template <class F, class V = std::invoke_result_t<F, double>>
V integrate_tail(F f, double abs_tol = 1e-12) {
    auto g = [&f](double v) {
        const double T = 1.0 / (v * v);
        return f(T) * (2.0 / (v * v * v));
    };
    return integrate(std::move(g), 0.0, 1.0, abs_tol);
}

// Integral over [1, Xi] via the same map (v from Xi^-1/2 to 1).
template <class F, class V = std::invoke_result_t<F, double>>
V integrate_to_cutoff(F f, double Xi, double abs_tol = 1e-12) {
    auto g = [&f](double v) {
        const double T = 1.0 / (v * v);
        return f(T) * (2.0 / (v * v * v));
    };
    return integrate(std::move(g), 1.0 / std::sqrt(Xi), 1.0, abs_tol);
}

}  // namespace phi3
