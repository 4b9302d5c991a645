#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "phi3/correlators.hpp"
#include "phi3/quadrature.hpp"

namespace phi3 {

struct SchwingerPoint {
    double mu2 = 1.0;  // squared mass scale, > 0
    cplx p2;           // squared momentum
};

enum class ImagSign { negative, nonnegative };
enum class StieltjesVerdict { stieltjes_violated, inconclusive_by_triviality };

struct PositivityReport {
    cplx test_point;
    cplx value;
    ImagSign imaginary_part_sign = ImagSign::nonnegative;
    std::vector<cplx> branch_points;
    StieltjesVerdict verdict = StieltjesVerdict::inconclusive_by_triviality;
};

namespace schwinger_detail {

// -z without a negative-zero imaginary part (which would flip the principal
// branch of the square root for real z)
inline cplx clean_negate(cplx z) {
    return {z.real() == 0.0 ? 0.0 : -z.real(), z.imag() == 0.0 ? 0.0 : -z.imag()};
}

// factored root s(q) = sqrt(q - r) sqrt(q + r) with r = sqrt(-c); this is the
// prescribed holomorphic extension of sqrt(q^2 + c) off the physical axis
struct FactoredRoot {
    cplx r;
    cplx operator()(cplx q) const {
        require_off_cut(q - r, "S2_hat: factored root (q - sqrt(-c))");
        require_off_cut(q + r, "S2_hat: factored root (q + sqrt(-c))");
        return std::sqrt(q - r) * std::sqrt(q + r);
    }
    Jet<cplx> jet(cplx q, int order) const {
        auto qj = Jet<cplx>::variable(q, order);
        require_off_cut(q - r, "S2_hat: factored root (q - sqrt(-c))");
        require_off_cut(q + r, "S2_hat: factored root (q + sqrt(-c))");
        return sqrt(qj - r) * sqrt(qj + r);
    }
};

}  // namespace schwinger_detail

// Momentum-space 2-point function: the closed display evaluated with the
// factored-root extension, q := p^2/mu^2 + 1,
//   S2 = [1 - lambda^2 Int dT / (sqrt(T) sqrt(T+c) (s + sqrt(T+c))^2)] / (mu^2 s).
inline cplx S2_hat(const Coupling& cp, double mu2, cplx p2) {
    if (!(mu2 > 0)) throw input_error("S2_hat: mu2 must be positive");
    const cplx q = p2 / mu2 + 1.0;
    schwinger_detail::FactoredRoot root{std::sqrt(schwinger_detail::clean_negate(cp.c))};
    const cplx s = root(q);
    if (cp.is_free()) return 1.0 / (mu2 * s);
    Measure rho = cp.measure();
    const cplx I = integrate_tail(
        [&](double T) {
            const cplx st = std::sqrt(T + cp.c);
            const cplx d = s + st;
            // rho(T)/(2 lambda^2) = 1/(sqrt(T) e'(...)), the display integrand
            return rho(T) / (2.0 * cp.lambda2 * st * d * d);
        },
        1e-13);
    return (1.0 - cp.lambda2 * I) / (mu2 * s);
}

// The same function through the W jet (S2 = 2 W'(q^2)/mu^2) with the factored
// root substituted into the closed log form; valid where the composed
// principal branches agree with the analytic continuation (in particular on
// and near the physical axis Re q > 0).
inline cplx S2_hat_wjet(const Coupling& cp, double mu2, cplx p2) {
    if (!(mu2 > 0)) throw input_error("S2_hat_wjet: mu2 must be positive");
    if (!cp.e.is_linear()) throw input_error("S2_hat_wjet: linear profile only");
    const cplx q0 = p2 / mu2 + 1.0;
    auto q = Jet<cplx>::variable(q0, 1);
    schwinger_detail::FactoredRoot root{std::sqrt(schwinger_detail::clean_negate(cp.c))};
    auto s = root.jet(q0, 1);
    Jet<cplx> w(1);
    if (cp.is_free()) {
        w = q;
    } else {
        const cplx s1 = std::sqrt(1.0 + cp.c);
        auto arg = (s + q) * (q + cplx(1)) / (q * s1 + s);
        w = s + (2.0 * cp.lambda2) * log(arg) / q;
    }
    // S2 = 2 W'(X) / mu2 with X = q^2: W'(X) = (dW/dq)/(2q)
    return w[1] / (q0 * mu2);
}

// Branch points of the factored root in the p^2 plane: mu^2 (-1 +- sqrt(-c)),
// refined by Newton on (p^2/mu^2 + 1)^2 + c = 0.
inline std::vector<cplx> s2_branch_points(const Coupling& cp, double mu2) {
    const cplx r = std::sqrt(schwinger_detail::clean_negate(cp.c));
    std::vector<cplx> out;
    for (double sign : {+1.0, -1.0}) {
        cplx P = -1.0 + sign * r * 1.1 + cplx(0.0, sign == 1.0 ? 1e-3 : -1e-3);
        for (int it = 0; it < 80; ++it) {
            const cplx f = (P + 1.0) * (P + 1.0) + cp.c;
            if (std::abs(f) < 1e-15) break;
            P -= f / (2.0 * (P + 1.0));
        }
        out.push_back(mu2 * P);
    }
    // order: -1 + r first
    if (std::abs(out[0] - mu2 * (-1.0 + r)) > std::abs(out[1] - mu2 * (-1.0 + r)))
        std::swap(out[0], out[1]);
    return out;
}

// Reflection-positivity diagnostic. For real coupling (-1 < c < 0) the
// anti-Herglotz property is probed at p^2 = (-3 - i|c|/10) mu^2; for imaginary
// coupling (c > 0) the branch points sit off the negative real axis. Either
// observation contradicts the Stieltjes property.
inline PositivityReport positivity_check(const Coupling& cp, double mu2) {
    PositivityReport rep;
    // at the free point |c|/10 collapses onto the pole at -mu^2's axis; keep
    // the probe slightly off-axis there
    const double off = cp.is_free() ? 0.1 : std::abs(cp.c.real()) / 10.0;
    rep.test_point = cplx(-3.0, -off) * mu2;
    rep.branch_points = s2_branch_points(cp, mu2);
    rep.value = S2_hat(cp, mu2, rep.test_point);
    rep.imaginary_part_sign =
        rep.value.imag() < 0.0 ? ImagSign::negative : ImagSign::nonnegative;
    if (cp.is_free()) {
        rep.verdict = StieltjesVerdict::inconclusive_by_triviality;
        return rep;
    }
    if (cp.c.real() > 0.0) {
        // imaginary coupling: branch points at mu^2(-1 +- i sqrt(c))
        const bool off_axis = std::abs(rep.branch_points[0].imag()) > 1e-12 * mu2;
        rep.verdict = off_axis ? StieltjesVerdict::stieltjes_violated
                               : StieltjesVerdict::inconclusive_by_triviality;
    } else {
        rep.verdict = rep.imaginary_part_sign == ImagSign::negative
                          ? StieltjesVerdict::stieltjes_violated
                          : StieltjesVerdict::inconclusive_by_triviality;
    }
    return rep;
}

// Position-space 2-point function at separation |xi_1 - xi_2|:
//   S(sep) = (2 pi mu^2)^-1 Int_0^inf p J0(p sep) S2(p^2) dp,
// integrated between Bessel zeros with averaged (Euler-transformed) partial
// sums to tame the oscillatory tail.
inline double S2_position(const Coupling& cp, double mu2, double separation) {
    if (!(separation > 0)) throw input_error("S2_position: separation must be positive");
    if (!(mu2 > 0)) throw input_error("S2_position: mu2 must be positive");
    auto f = [&](double p) {
        const double s2 = std::real(S2_hat_wjet(cp, mu2, p * p));
        return p * std::cyl_bessel_j(0.0, p * separation) * s2;
    };
    auto bessel_zero = [](int k) {
        const double b = (k - 0.25) * M_PI;
        return b + 1.0 / (8.0 * b) - 124.0 / (3.0 * std::pow(8.0 * b, 3));
    };

    std::vector<double> partial;
    double acc = 0.0, prev_edge = 0.0;
    const int max_cells = 400;
    for (int k = 1; k <= max_cells; ++k) {
        const double edge = bessel_zero(k) / separation;
        acc += integrate(f, prev_edge, edge, 1e-13);
        partial.push_back(acc);
        prev_edge = edge;
        if (int(partial.size()) >= 24) {
            // repeated averaging of the last terms accelerates the alternating tail
            std::vector<double> v(partial.end() - 12, partial.end());
            for (std::size_t lvl = 1; lvl < 12; ++lvl)
                for (std::size_t i = 0; i + lvl < 12; ++i) v[i] = 0.5 * (v[i] + v[i + 1]);
            const double accel = v[0];
            // second estimate from one fewer cell
            std::vector<double> u(partial.end() - 13, partial.end() - 1);
            for (std::size_t lvl = 1; lvl < 12; ++lvl)
                for (std::size_t i = 0; i + lvl < 12; ++i) u[i] = 0.5 * (u[i] + u[i + 1]);
            if (std::abs(accel - u[0]) < 1e-7 * std::max(1e-300, std::abs(accel)) ||
                std::abs(accel - u[0]) < 1e-12)
                return accel / (2.0 * M_PI * mu2);
        }
    }
    throw quadrature_error("S2_position: oscillatory quadrature did not settle");
}

namespace schwinger_detail {

inline long num_permutation_count(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace schwinger_detail

struct SchwingerIntegrand {
    cplx value;
    bool odd_partition = false;  // set when some N_beta is odd (exact zero)
};

// The momentum-space integrand of the connected N-point Schwinger function
// for a fixed boundary partition: phase sums over all external-point
// permutations, the multi-boundary correlator at coincident arguments
// x_beta = |p_beta|^2 / (2 mu^2), measure factors 1/(2 pi mu^2) per boundary
// and the symmetry prefactor 1/(8 pi S).
inline SchwingerIntegrand schwinger_N_integrand(const Coupling& cp,
                                                const std::vector<int>& partition,
                                                const std::vector<std::array<double, 2>>& momenta,
                                                const std::vector<std::array<double, 2>>& points,
                                                double mu2 = 1.0) {
    const int B = int(partition.size());
    if (B < 1) throw input_error("schwinger_N_integrand: empty partition");
    if (int(momenta.size()) != B)
        throw input_error("schwinger_N_integrand: one momentum per boundary required");
    int N = 0;
    for (int Nb : partition) {
        if (Nb < 1) throw input_error("schwinger_N_integrand: invalid partition entry");
        N += Nb;
    }
    if (int(points.size()) != N)
        throw input_error("schwinger_N_integrand: point count must match the partition");
    if (N > 8) throw input_error("schwinger_N_integrand: N > 8 permutation sum not supported");

    for (int Nb : partition)
        if (Nb % 2 == 1) return {cplx(0), true};

    // symmetry factor: regroup identical valences
    double S = 1.0;
    {
        std::vector<int> sorted = partition;
        std::sort(sorted.begin(), sorted.end());
        int run = 1;
        for (std::size_t i = 1; i <= sorted.size(); ++i) {
            if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
                ++run;
            } else {
                for (int t = 2; t <= run; ++t) S *= t;
                run = 1;
            }
        }
    }

    // the multi-boundary correlator at coincident transformed arguments
    BoundarySpec spec;
    for (int b = 0; b < B; ++b) {
        const double pp = momenta[std::size_t(b)][0] * momenta[std::size_t(b)][0] +
                          momenta[std::size_t(b)][1] * momenta[std::size_t(b)][1];
        const double x = pp / (2.0 * mu2);
        const double X = (2.0 * x + 1.0) * (2.0 * x + 1.0);
        spec.boundaries.push_back(std::vector<cplx>(std::size_t(partition[std::size_t(b)]), X));
    }
    const cplx Gval = G_multi_boundary(cp, spec).value;

    // phase sum over permutations of the external points
    std::vector<int> idx(std::size_t(N), 0);
    std::iota(idx.begin(), idx.end(), 0);
    cplx phases(0);
    do {
        double arg = 0.0;
        int pos = 0;
        for (int b = 0; b < B; ++b) {
            double ax = 0.0, ay = 0.0;
            for (int j = 0; j < partition[std::size_t(b)]; ++j, ++pos) {
                const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
                ax += sgn * points[std::size_t(idx[std::size_t(pos)])][0];
                ay += sgn * points[std::size_t(idx[std::size_t(pos)])][1];
            }
            arg += momenta[std::size_t(b)][0] * ax + momenta[std::size_t(b)][1] * ay;
        }
        phases += std::polar(1.0, arg);
    } while (std::next_permutation(idx.begin(), idx.end()));

    cplx pref = 1.0 / (8.0 * M_PI * S);
    for (int b = 0; b < B; ++b) {
        double t = 1.0;
        for (int i = 0; i < partition[std::size_t(b)]; ++i) t *= 2.0;
        pref *= t / (partition[std::size_t(b)] * 2.0 * M_PI * mu2);
    }
    return {pref * phases * Gval, false};
}

}  // namespace phi3
