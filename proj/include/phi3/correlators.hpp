#pragma once

#include <array>
#include <span>
#include <vector>

#include "phi3/divided_difference.hpp"
#include "phi3/gamma_tower.hpp"
#include "phi3/jet.hpp"
#include "phi3/mseries.hpp"
#include "phi3/quadrature.hpp"
#include "phi3/spectral.hpp"

namespace phi3 {

enum class Provenance {
    free_theory,
    w_closed_linear,
    w_quadrature,
    g2_difference_quotient,
    gn_propagator_sum,
    g_1plus1,
    g_1plus1plus1,
    tower_jet,
    multi_boundary,
};

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::free_theory: return "free_theory";
        case Provenance::w_closed_linear: return "w_closed_linear";
        case Provenance::w_quadrature: return "w_quadrature";
        case Provenance::g2_difference_quotient: return "g2_difference_quotient";
        case Provenance::gn_propagator_sum: return "gn_propagator_sum";
        case Provenance::g_1plus1: return "g_1plus1";
        case Provenance::g_1plus1plus1: return "g_1plus1plus1";
        case Provenance::tower_jet: return "tower_jet";
        case Provenance::multi_boundary: return "multi_boundary";
    }
    return "?";
}

struct PlanarFunctionValue {
    cplx value;
    Provenance provenance = Provenance::free_theory;
};

// relative separation below which difference quotients switch to jets
inline constexpr double kCoincidenceEps = 1e-5;
// cap on the number of boundary components of the (1+...+1) tower
inline constexpr int kTowerMaxB = 12;

// ---------------------------------------------------------------------------
// W(X): the planar resolvent, normalised to W(1) = 1.

inline cplx W(const Coupling& cp, cplx X) {
    require_off_cut(X + cp.c, "W: X+c");
    if (cp.e.is_linear()) {
        if (X == cplx(0)) throw domain_error("W: X = 0 hits the 1/sqrt(X) prefactor");
        require_off_cut(X, "W: X");
        const cplx sX = std::sqrt(X);
        const cplx s = std::sqrt(X + cp.c);
        const cplx s1 = std::sqrt(1.0 + cp.c);
        if (cp.is_free()) return sX;
        return s + (2.0 * cp.lambda2 / sX) * std::log((s + sX) * (sX + 1.0) / (sX * s1 + s));
    }
    const cplx s = std::sqrt(X + cp.c);
    if (cp.is_free()) return s;
    Measure rho = cp.measure();
    cplx integral = integrate_tail(
        [&](double T) {
            const cplx st = std::sqrt(T + cp.c);
            return rho(T) / ((s + st) * st);
        },
        1e-13);
    return s + 0.5 * integral;
}

// Taylor expansion of W around X to the given order.
inline Jet<cplx> W_jet(const Coupling& cp, cplx X, int order) {
    require_off_cut(X + cp.c, "W_jet: X+c");
    auto Xj = Jet<cplx>::variable(X, order);
    const auto base = Xj + cp.c;
    if (cp.e.is_linear()) {
        if (X == cplx(0)) throw domain_error("W_jet: X = 0");
        require_off_cut(X, "W_jet: X");
        auto sX = sqrt(Xj);
        auto s = sqrt(base);
        if (cp.is_free()) return sX;
        const cplx s1 = std::sqrt(1.0 + cp.c);
        auto arg = (s + sX) * (sX + cplx(1)) / (sX * s1 + s);
        return s + (2.0 * cp.lambda2) * log(arg) / sX;
    }
    auto s = sqrt(base);
    if (cp.is_free()) return s;
    Measure rho = cp.measure();
    auto integral = integrate_tail(
        [&](double T) {
            const cplx st = std::sqrt(T + cp.c);
            return rho(T) / ((s + Jet<cplx>::constant(st, order)) * st);
        },
        1e-13);
    return s + 0.5 * integral;
}

inline cplx W_prime(const Coupling& cp, cplx X) { return W_jet(cp, X, 1)[1]; }

// ---------------------------------------------------------------------------
// 1- and 2-point functions.

// Renormalised 1-point function of the transformed argument X.
inline cplx G1_bigX(const Coupling& cp, cplx X) {
    if (cp.is_free()) return 0.0;
    return (W(cp, X) - std::sqrt(X)) / (2.0 * cp.lambda);
}

// Renormalised 1-point function of x >= 0; the normalisation G1(0) = 0 holds
// by construction.
inline cplx G1(const Coupling& cp, double x) {
    if (x < 0) throw input_error("G1: x < 0");
    if (cp.is_free()) return 0.0;
    const double v = 2.0 * cp.e.eval(x) + 1.0;
    return (W(cp, v * v) - v) / (2.0 * cp.lambda);
}

inline cplx G2(const Coupling& cp, cplx X, cplx Y) {
    if (std::abs(X - Y) < kCoincidenceEps * std::max(std::abs(X), std::abs(Y))) {
        std::array<cplx, 2> nodes{X, Y};
        return 2.0 * divided_difference(nodes, [&](cplx m, int K) { return W_jet(cp, m, K); },
                                        kCoincidenceEps);
    }
    return 2.0 * (W(cp, X) - W(cp, Y)) / (X - Y);
}

// ---------------------------------------------------------------------------
// N-point function on a single boundary:
//   G(X_1..X_N) = 2^(2N-3) lambda^(N-2) W[X_1,...,X_N]
// with W[...] the (confluent) divided difference.

inline cplx GN_single_boundary(const Coupling& cp, std::span<const cplx> Xs) {
    const int N = int(Xs.size());
    if (N < 2) throw input_error("GN_single_boundary: N >= 2 required");
    for (cplx X : Xs) require_off_cut(X + cp.c, "GN_single_boundary");
    if (cp.is_free() && N > 2) return 0.0;
    cplx pref(1);
    for (int i = 0; i < 2 * N - 3; ++i) pref *= 2.0;
    for (int i = 0; i < N - 2; ++i) pref *= cp.lambda;
    return pref *
           divided_difference(Xs, [&](cplx m, int K) { return W_jet(cp, m, K); }, kCoincidenceEps);
}

// ---------------------------------------------------------------------------
// Multi-boundary building blocks.

inline cplx G_1plus1(const Coupling& cp, cplx X, cplx Y) {
    require_off_cut(X + cp.c, "G_1plus1");
    require_off_cut(Y + cp.c, "G_1plus1");
    if (cp.is_free()) return 0.0;
    const cplx sx = std::sqrt(X + cp.c), sy = std::sqrt(Y + cp.c);
    return 4.0 * cp.lambda2 / (sx * sy * (sx + sy) * (sx + sy));
}

inline cplx G_1plus1plus1(const Coupling& cp, cplx X, cplx Y2, cplx Y3) {
    for (cplx Z : {X, Y2, Y3}) require_off_cut(Z + cp.c, "G_1plus1plus1");
    if (cp.is_free()) return 0.0;
    if (cp.rho0 == cplx(0))
        throw singular_error("G_1plus1plus1: rho0 = 0 (critical coupling)");
    auto p32 = [&](cplx Z) { return detail::cpow(Z + cp.c, 1.5); };
    cplx l5 = cp.lambda2 * cp.lambda2 * cp.lambda;
    return -32.0 * l5 / (cp.rho0 * p32(X) * p32(Y2) * p32(Y3));
}

// D(t) = rho0 + sum_{r>=1} (2r+1)!!/(r+1)! rho_r t^r, the series form of the
// t-dependent integral in the tower denominator.
inline Jet<cplx> tower_denominator_jet(const MomentTable& mt, int order) {
    if (mt.max_order() < order) throw input_error("tower_denominator_jet: moment table too short");
    Jet<cplx> D(order);
    D[0] = mt.rho[0];
    for (int r = 1; r <= order; ++r)
        D[r] = to_double(Rational(double_factorial(2 * r + 1), factorial(r + 1))) *
               mt.rho[std::size_t(r)];
    return D;
}

// Direct quadrature of the same denominator at a point t (the one-time
// validation route for the series form).
inline cplx tower_denominator_quadrature(const Coupling& cp, cplx t) {
    if (cp.is_free()) return 1.0;
    Measure rho = cp.measure();
    cplx integral = integrate_tail(
        [&](double T) {
            const cplx st = std::sqrt(T + cp.c);
            const cplx su = std::sqrt(T + cp.c - 2.0 * t);
            return rho(T) / (st * (st + su) * su);
        },
        1e-13);
    return 1.0 - integral;
}

// (1+...+1)-point function with B >= 3 boundary components:
//   (-2 lambda)^(3B-4) d^{B-3}/dt^{B-3} [ prod_b (X_b+c-2t)^(-3/2) / D(t)^(B-2) ]_{t=0}
inline cplx G_1plusTower(const Coupling& cp, std::span<const cplx> Xs,
                         const MomentTable* mt = nullptr, int max_b = kTowerMaxB) {
    const int B = int(Xs.size());
    if (B < 3) throw input_error("G_1plusTower: B >= 3 required");
    if (B > max_b) throw input_error("G_1plusTower: B exceeds the jet-order cap");
    for (cplx X : Xs) require_off_cut(X + cp.c, "G_1plusTower");
    if (cp.is_free()) return 0.0;
    if (cp.rho0 == cplx(0)) throw singular_error("G_1plusTower: rho0 = 0 (critical coupling)");

    const int order = B - 3;
    MomentTable local;
    if (!mt) {
        local = moments(cp, order);
        mt = &local;
    }
    Jet<cplx> num = Jet<cplx>::constant(1.0, order);
    for (cplx X : Xs) {
        Jet<cplx> base(order);
        base[0] = X + cp.c;
        if (order >= 1) base[1] = -2.0;
        num = num * pow(base, -1.5, "G_1plusTower");
    }
    Jet<cplx> D = tower_denominator_jet(*mt, order);
    Jet<cplx> Dp = Jet<cplx>::constant(1.0, order);
    for (int i = 0; i < B - 2; ++i) Dp = Dp * D;
    Jet<cplx> F = num / Dp;

    cplx pref(1);
    for (int i = 0; i < 3 * B - 4; ++i) pref *= -2.0 * cp.lambda;
    return pref * to_double(Rational(factorial(order))) * F[order];
}

// Alternative evaluation through the gamma ansatz with coefficients from the
// closed gamma tower; serves as the independent oracle for the tower.
inline cplx G_tower_gamma_ansatz(const Coupling& cp, std::span<const cplx> Xs,
                                 const MomentTable& mt) {
    const int B = int(Xs.size());
    if (B < 3) throw input_error("G_tower_gamma_ansatz: B >= 3 required");
    if (cp.is_free()) return 0.0;
    const int order = B - 3;
    if (mt.max_order() < order) throw input_error("G_tower_gamma_ansatz: moment table too short");

    // numeric substitution x_r = -(2r+1)!! rho_r / ((r+1) rho0); indeterminates
    // beyond the table never occur in the polynomials and are padded with 0
    std::vector<cplx> xr;
    const int arity = std::max(order, 1);
    for (int r = 1; r <= arity; ++r)
        xr.push_back(r <= mt.max_order()
                         ? -to_double(Rational(double_factorial(2 * r + 1), Int(r + 1))) *
                               mt.rho[std::size_t(r)] / cp.rho0
                         : cplx(0));

    Jet<cplx> prod = Jet<cplx>::constant(1.0, order);
    for (cplx X : Xs) {
        Jet<cplx> base(order);
        base[0] = X + cp.c;
        if (order >= 1) base[1] = -2.0;
        prod = prod * pow(base, -1.5, "G_tower_gamma_ansatz");
    }

    cplx rho0_pow(1);
    for (int i = 0; i < B - 3; ++i) rho0_pow *= cp.rho0;

    cplx sum(0);
    for (int M = 0; M <= B - 3; ++M) {
        auto [g, pw] = gamma_closed(B, M, arity);
        const cplx gammaMB = g.eval_complex(xr) / rho0_pow;
        // d^M/dt^M (...)|_0 = M! * coefficient M
        sum += gammaMB * to_double(Rational(factorial(M))) * prod[M];
    }
    cplx pref(1);
    for (int i = 0; i < 3 * B - 4; ++i) pref *= -2.0 * cp.lambda;
    return pref / cp.rho0 * sum;
}

// ---------------------------------------------------------------------------
// General multi-boundary reduction.

struct BoundarySpec {
    std::vector<std::vector<cplx>> boundaries;  // X-space arguments per boundary

    int B() const { return int(boundaries.size()); }
    int total_points() const {
        int n = 0;
        for (const auto& b : boundaries) n += int(b.size());
        return n;
    }
};

namespace detail {

// MSeries of the (1|...|1) kernel expanded around slot centers with the given
// per-slot Taylor orders.
inline MSeries multi_kernel_series(const Coupling& cp, const MomentTable& mt,
                                   std::span<const std::pair<cplx, int>> slots) {
    const int B = int(slots.size());
    std::vector<int> orders;
    for (auto& [center, k] : slots) orders.push_back(k);

    if (B == 2) {
        auto sx = (MSeries::variable(orders, 0, slots[0].first + cp.c)).pow(0.5);
        auto sy = (MSeries::variable(orders, 1, slots[1].first + cp.c)).pow(0.5);
        auto denom = sx * sy * (sx + sy) * (sx + sy);
        return denom.pow(-1.0) * (4.0 * cp.lambda2);
    }

    // B >= 3: append the derivative variable t with order B-3
    const int tvar = B;
    const int torder = B - 3;
    orders.push_back(torder);
    MSeries t = MSeries::variable(orders, tvar, 0.0);
    MSeries num = MSeries::constant(orders, 1.0);
    for (int b = 0; b < B; ++b) {
        MSeries base = MSeries::variable(orders, b, slots[std::size_t(b)].first + cp.c) -
                       t * cplx(2.0);
        num = num * base.pow(-1.5);
    }
    Jet<cplx> Djet = tower_denominator_jet(mt, torder);
    MSeries D = MSeries::constant(orders, Djet[0]);
    {
        MSeries tp = MSeries::constant(orders, 1.0);
        for (int r = 1; r <= torder; ++r) {
            tp = tp * t;
            D = D + tp * Djet[r];
        }
    }
    MSeries Dp = MSeries::constant(orders, 1.0);
    for (int i = 0; i < B - 2; ++i) Dp = Dp * D;
    MSeries F = num * Dp.pow(-1.0);

    cplx pref(1);
    for (int i = 0; i < 3 * B - 4; ++i) pref *= -2.0 * cp.lambda;
    pref *= to_double(Rational(factorial(torder)));
    return F.coeff_of(tvar, torder) * pref;
}

}  // namespace detail

inline PlanarFunctionValue G_multi_boundary(const Coupling& cp, const BoundarySpec& spec,
                                            int max_b = kTowerMaxB) {
    const int B = spec.B();
    if (B < 1) throw input_error("G_multi_boundary: empty boundary list");
    for (const auto& b : spec.boundaries) {
        if (b.empty()) throw input_error("G_multi_boundary: empty boundary");
        for (cplx X : b) require_off_cut(X + cp.c, "G_multi_boundary");
    }

    if (B == 1) {
        const auto& b = spec.boundaries[0];
        const Provenance pw =
            cp.e.is_linear() ? Provenance::w_closed_linear : Provenance::w_quadrature;
        if (b.size() == 1) return {G1_bigX(cp, b[0]), pw};
        if (b.size() == 2) return {G2(cp, b[0], b[1]), Provenance::g2_difference_quotient};
        return {GN_single_boundary(cp, b), Provenance::gn_propagator_sum};
    }

    const Provenance prov = (B == 2 && spec.total_points() == 2)   ? Provenance::g_1plus1
                            : (B == 3 && spec.total_points() == 3) ? Provenance::g_1plus1plus1
                                                                   : Provenance::multi_boundary;
    if (cp.is_free()) return {0.0, Provenance::free_theory};
    if (B >= 3 && cp.rho0 == cplx(0))
        throw singular_error("G_multi_boundary: rho0 = 0 (critical coupling)");
    if (B > max_b) throw input_error("G_multi_boundary: B exceeds the jet-order cap");

    // per-slot divided-difference weights
    std::vector<DDWeights> dd;
    for (const auto& b : spec.boundaries) dd.push_back(dd_weights(b, kCoincidenceEps));

    MomentTable mt;
    mt.coupling = cp;
    if (B >= 3) mt = moments(cp, B - 3);

    // iterate over all cluster choices (one cluster per slot)
    std::vector<std::size_t> choice(std::size_t(B), 0);
    cplx acc(0);
    for (;;) {
        std::vector<std::pair<cplx, int>> slots;
        for (int b = 0; b < B; ++b) {
            const auto& cl = dd[std::size_t(b)].clusters[choice[std::size_t(b)]];
            slots.emplace_back(cl.center, int(cl.w.size()) - 1);
        }
        MSeries K = detail::multi_kernel_series(cp, mt, slots);
        // contract kernel coefficients with the weight tensors
        std::vector<int> idx(std::size_t(B), 0);
        for (;;) {
            cplx wprod(1);
            for (int b = 0; b < B; ++b)
                wprod *= dd[std::size_t(b)].clusters[choice[std::size_t(b)]].w[std::size_t(
                    idx[std::size_t(b)])];
            if (wprod != cplx(0)) acc += wprod * K.at(idx);
            int b = 0;
            for (; b < B; ++b) {
                if (++idx[std::size_t(b)] <= slots[std::size_t(b)].second) break;
                idx[std::size_t(b)] = 0;
            }
            if (b == B) break;
        }
        int b = 0;
        for (; b < B; ++b) {
            if (++choice[std::size_t(b)] < dd[std::size_t(b)].clusters.size()) break;
            choice[std::size_t(b)] = 0;
        }
        if (b == B) break;
    }

    // lambda^(N-B) prod_b 4^(N_b - 1)
    cplx pref(1);
    for (const auto& b : spec.boundaries) {
        for (std::size_t i = 1; i < b.size(); ++i) pref *= 4.0 * cp.lambda;
    }
    return {pref * acc, prov};
}

}  // namespace phi3
