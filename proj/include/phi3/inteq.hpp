#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include "phi3/correlators.hpp"
#include "phi3/quadrature.hpp"
#include "phi3/spectral.hpp"

namespace phi3 {
namespace inteq {

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.

inline void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(std::size_t(m), 0.0);
    w.assign(std::size_t(m), 0.0);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[std::size_t(i)] = -z;
        x[std::size_t(m - 1 - i)] = z;
        w[std::size_t(i)] = w[std::size_t(m - 1 - i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

// ---------------------------------------------------------------------------
// Composite grid on [1, Xi]: geometric panels clustered at 1, Gauss nodes per
// panel, plus per-panel spectral differentiation (barycentric, log-scaled
// weights so high panel orders stay finite).

struct Grid {
    double Xi = 1e8;
    std::vector<double> nodes, weights;
    std::vector<int> panel_begin;  // panel p spans [panel_begin[p], panel_begin[p+1])
    std::vector<std::vector<double>> dmat;  // per panel, row-major m x m
    std::vector<int> panel_of;

    int size() const { return int(nodes.size()); }

    static Grid geometric(double Xi, int n, int panels = -1) {
        if (!(Xi > 1.0)) throw input_error("Grid: Xi must exceed 1");
        if (n < 8) throw input_error("Grid: too few nodes");
        Grid g;
        g.Xi = Xi;
        const int P = panels > 0
                          ? panels
                          : std::max(4, std::min(int(std::lround(std::log2(Xi))), n / 4));
        const int m = std::max(4, n / P);

        std::vector<double> xr, wr;
        gauss_legendre(m, xr, wr);

        for (int p = 0; p < P; ++p) {
            const double a = std::pow(Xi, double(p) / P);
            const double b = std::pow(Xi, double(p + 1) / P);
            g.panel_begin.push_back(int(g.nodes.size()));
            for (int i = 0; i < m; ++i) {
                g.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * xr[std::size_t(i)]);
                g.weights.push_back(0.5 * (b - a) * wr[std::size_t(i)]);
                g.panel_of.push_back(p);
            }
            // barycentric differentiation on the reference nodes, scaled by 2/(b-a)
            std::vector<double> logw(std::size_t(m), 0.0);
            std::vector<int> sgn(std::size_t(m), 1);
            for (int i = 0; i < m; ++i) {
                double acc = 0.0;
                int s = 1;
                for (int j = 0; j < m; ++j) {
                    if (j == i) continue;
                    const double d = xr[std::size_t(i)] - xr[std::size_t(j)];
                    acc -= std::log(std::abs(d));
                    if (d < 0) s = -s;
                }
                logw[std::size_t(i)] = acc;
                sgn[std::size_t(i)] = s;
            }
            std::vector<double> D(std::size_t(m) * std::size_t(m), 0.0);
            const double scale = 2.0 / (b - a);
            for (int i = 0; i < m; ++i) {
                double diag = 0.0;
                for (int j = 0; j < m; ++j) {
                    if (j == i) continue;
                    const double ratio = std::exp(logw[std::size_t(j)] - logw[std::size_t(i)]) *
                                         (sgn[std::size_t(j)] * sgn[std::size_t(i)]);
                    const double dij = ratio / (xr[std::size_t(i)] - xr[std::size_t(j)]);
                    D[std::size_t(i * m + j)] = dij * scale;
                    diag -= dij;
                }
                D[std::size_t(i * m + i)] = diag * scale;
            }
            g.dmat.push_back(std::move(D));
        }
        g.panel_begin.push_back(int(g.nodes.size()));
        return g;
    }

    // barycentric interpolation of sampled values at an off-node point
    cplx interpolate(std::span<const cplx> f, double X) const {
        if (!(X >= 1.0 && X <= Xi)) throw input_error("Grid::interpolate: X outside [1, Xi]");
        int p = 0;
        while (p + 1 < int(dmat.size()) &&
               X > nodes[std::size_t(panel_begin[std::size_t(p + 1)] - 1)])
            ++p;
        const int b = panel_begin[std::size_t(p)];
        const int m = panel_begin[std::size_t(p + 1)] - b;
        // weights ~ prod 1/(x_i - x_j); only ratios matter, compute in logs
        std::vector<double> logw(std::size_t(m), 0.0);
        std::vector<int> sgn(std::size_t(m), 1);
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            int s = 1;
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                const double d = nodes[std::size_t(b + i)] - nodes[std::size_t(b + j)];
                acc -= std::log(std::abs(d));
                if (d < 0) s = -s;
            }
            logw[std::size_t(i)] = acc;
            sgn[std::size_t(i)] = s;
        }
        const double lmax = *std::max_element(logw.begin(), logw.end());
        cplx num(0);
        double den = 0.0;
        for (int i = 0; i < m; ++i) {
            const double d = X - nodes[std::size_t(b + i)];
            if (d == 0.0) return f[std::size_t(b + i)];
            const double wi = sgn[std::size_t(i)] * std::exp(logw[std::size_t(i)] - lmax) / d;
            num += wi * f[std::size_t(b + i)];
            den += wi;
        }
        return num / den;
    }

    // spectral derivative of sampled values at node i
    cplx derivative_at(std::span<const cplx> f, int i) const {
        const int p = panel_of[std::size_t(i)];
        const int b = panel_begin[std::size_t(p)];
        const int m = panel_begin[std::size_t(p + 1)] - b;
        const auto& D = dmat[std::size_t(p)];
        const int il = i - b;
        cplx acc(0);
        for (int j = 0; j < m; ++j) acc += D[std::size_t(il * m + j)] * f[std::size_t(b + j)];
        return acc;
    }
};

// ---------------------------------------------------------------------------
// The finite-cutoff analytic solution: the resolvent ansatz with the integral
// stopped at Xi and c fixed by W(1) = 1 at the same cutoff. It solves the
// cutoff equation exactly, so its discretized residual isolates quadrature
// error.

struct CutoffModel {
    cplx lambda, lambda2;
    EigenvalueFunction e;
    double Xi = 1e8;
    cplx c, rho0;

    Measure measure() const { return Measure{lambda2, e}; }

    cplx W(cplx X) const { return W_jet(X, 0)[0]; }

    Jet<cplx> W_jet(cplx X, int order) const {
        require_off_cut(X + c, "CutoffModel::W: X+c");
        auto Xj = Jet<cplx>::variable(X, order);
        auto s = sqrt(Xj + c);
        if (lambda2 == cplx(0)) return sqrt(Xj);
        if (e.is_linear()) {
            require_off_cut(X, "CutoffModel::W: X");
            auto sX = sqrt(Xj);
            const cplx w1 = std::sqrt(1.0 + c);
            const cplx w2 = std::sqrt(Xi + c);
            const double sXi = std::sqrt(Xi);
            auto arg = ((s * w2 + c + sX * sXi) * (s + w1)) / ((s * w1 + c + sX) * (s + w2));
            return s + (2.0 * lambda2) * log(arg) / sX;
        }
        Measure rho = measure();
        auto integral = integrate_to_cutoff(
            [&](double T) {
                const cplx st = std::sqrt(T + c);
                return rho(T) / ((s + Jet<cplx>::constant(st, order)) * st);
            },
            Xi, 1e-13);
        return s + 0.5 * integral;
    }

    cplx rho_l(int l) const {
        if (lambda2 == cplx(0)) return l == 0 ? 1.0 : 0.0;
        Measure rho = measure();
        const double expo = -(1.5 + double(l));
        cplx integral = integrate_to_cutoff(
            [&](double T) { return rho(T) * detail::cpow(T + c, expo); }, Xi, 1e-13);
        return (l == 0 ? cplx(1) : cplx(0)) - 0.5 * integral;
    }

    cplx G11(cplx X, cplx Y) const {
        const cplx sx = std::sqrt(X + c), sy = std::sqrt(Y + c);
        return 4.0 * lambda2 / (sx * sy * (sx + sy) * (sx + sy));
    }

    Jet<cplx> G11_jet_in_Y(cplx X, cplx Y, int order) const {
        const cplx sx = std::sqrt(X + c);
        auto sy = sqrt(Jet<cplx>::variable(Y, order) + c);
        auto d = sy * (sx + sy) * (sx + sy) * sx;
        return (4.0 * lambda2) / d;
    }

    // G(X,Y,Y) = 8 lambda d/dY (W(X)-W(Y))/(X-Y)
    cplx G_XYY(cplx X, cplx Y) const {
        auto wy = W_jet(Y, 1);
        const cplx num = -(X - Y) * wy[1] + (W(X) - wy[0]);
        return 8.0 * lambda * num / ((X - Y) * (X - Y));
    }
};

inline CutoffModel cutoff_model(cplx lambda, double Xi,
                                const EigenvalueFunction& e = EigenvalueFunction::linear()) {
    CutoffModel m;
    m.lambda = lambda;
    m.lambda2 = lambda * lambda;
    m.e = e;
    m.Xi = Xi;
    if (m.lambda2 == cplx(0)) {
        m.c = 0.0;
        m.rho0 = 1.0;
        return m;
    }
    // Newton on the cutoff normalisation W(1) = 1, seeded by the infinite-
    // cutoff solution
    cplx c = solve_c(m.lambda2, e).c;
    for (int it = 0; it < 60; ++it) {
        m.c = c;
        const cplx f = m.W(1.0) - 1.0;
        if (std::abs(f) < 1e-13) break;
        const double h = 1e-7 * (1.0 + std::abs(c));
        m.c = c + h;
        const cplx fp = m.W(1.0) - 1.0;
        m.c = c - h;
        const cplx fm = m.W(1.0) - 1.0;
        const cplx df = (fp - fm) / (2.0 * h);
        c -= f / df;
        if (it == 59) throw convergence_error("cutoff_model: Newton on c did not converge");
    }
    m.c = c;
    if (e.is_linear()) {
        // closed antiderivative of rho(T) (T+c)^{-3/2}
        const double sXi = std::sqrt(Xi);
        m.rho0 = 1.0 - m.lambda2 * (2.0 * sXi / (c * std::sqrt(Xi + c)) -
                                    2.0 / (c * std::sqrt(1.0 + c)));
    } else {
        m.rho0 = m.rho_l(0);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Residual reports.

enum class Equation { w_nonlinear, g11_linear, g111_linear };

struct ResidualReport {
    Equation equation;
    std::vector<cplx> residual;
    double sup = 0.0;
    double l2 = 0.0;
    double tail_estimate = 0.0;
};

namespace detail_q {

inline double tail_scale(cplx lambda2, const EigenvalueFunction& e, double Xi) {
    if (lambda2 == cplx(0)) return 0.0;
    Measure rho{lambda2, e};
    // int_Xi^inf |rho(Y)|/Y dY with Y = Xi/v^2
    const double v1 = 1.0;
    auto f = [&](double v) {
        const double Y = Xi / (v * v);
        return std::abs(rho(Y)) / Y * (2.0 * Xi / (v * v * v));
    };
    return integrate(f, 0.0, v1, 1e-12);
}

}  // namespace detail_q

// Residual of the nonlinear W-equation for candidate values sampled on the
// grid (plus the value at X = 1), evaluated at every grid node. Diagonal
// kernel entries use the spectral derivative stencil.
inline ResidualReport residual_w(cplx lambda2, const EigenvalueFunction& e, const Grid& g,
                                 std::span<const cplx> Wn, cplx W1) {
    if (int(Wn.size()) != g.size()) throw input_error("residual_w: candidate size mismatch");
    Measure rho{lambda2, e};
    const int n = g.size();
    std::vector<cplx> rhov(std::size_t(n), cplx(0));
    for (int j = 0; j < n; ++j) rhov[std::size_t(j)] = rho(g.nodes[std::size_t(j)]);

    // rhs integral: int rho(Y) (W(1)-W(Y))/(1-Y) dY over the grid
    cplx B(0);
    for (int j = 0; j < n; ++j)
        B += g.weights[std::size_t(j)] * rhov[std::size_t(j)] * (W1 - Wn[std::size_t(j)]) /
             (1.0 - g.nodes[std::size_t(j)]);

    ResidualReport rep;
    rep.equation = Equation::w_nonlinear;
    rep.residual.resize(std::size_t(n));
    double l2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double X = g.nodes[std::size_t(i)];
        cplx A(0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            A += g.weights[std::size_t(j)] * rhov[std::size_t(j)] *
                 (Wn[std::size_t(i)] - Wn[std::size_t(j)]) / (X - g.nodes[std::size_t(j)]);
        }
        A += g.weights[std::size_t(i)] * rhov[std::size_t(i)] * g.derivative_at(Wn, i);
        const cplx r = Wn[std::size_t(i)] * Wn[std::size_t(i)] + A - X - B;
        rep.residual[std::size_t(i)] = r;
        rep.sup = std::max(rep.sup, std::abs(r));
        l2 += abs2(r) * g.weights[std::size_t(i)];
    }
    rep.l2 = std::sqrt(l2);
    double wspread = 0.0;
    for (int i = 0; i < n; ++i) wspread = std::max(wspread, std::abs(Wn[std::size_t(i)] - W1));
    rep.tail_estimate = wspread * detail_q::tail_scale(lambda2, e, g.Xi);
    return rep;
}

// Pointwise residual of the W-equation for an analytic candidate at an
// arbitrary X (not necessarily a node).
template <class WFun, class WJetFun>
cplx w_equation_residual_at(cplx lambda2, const EigenvalueFunction& e, const Grid& g, cplx X,
                            WFun&& Wf, WJetFun&& Wjet) {
    Measure rho{lambda2, e};
    const cplx WX = Wf(X);
    const cplx W1 = Wf(cplx(1.0));
    cplx A(0), B(0);
    for (int j = 0; j < g.size(); ++j) {
        const double T = g.nodes[std::size_t(j)];
        const cplx WT = Wf(cplx(T));
        const cplx k = (X == cplx(T)) ? Wjet(X, 1)[1] : (WX - WT) / (X - T);
        A += g.weights[std::size_t(j)] * rho(T) * k;
        B += g.weights[std::size_t(j)] * rho(T) * (W1 - WT) / (1.0 - T);
    }
    return WX * WX + A - X - B;
}

// Residual of the linear (1+1) equation for a sampled candidate G(.|Y).
inline ResidualReport residual_g11(const CutoffModel& m, const Grid& g,
                                   std::span<const cplx> Gn, cplx Y) {
    if (int(Gn.size()) != g.size()) throw input_error("residual_g11: candidate size mismatch");
    Measure rho = m.measure();
    const int n = g.size();
    ResidualReport rep;
    rep.equation = Equation::g11_linear;
    rep.residual.resize(std::size_t(n));
    double l2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double X = g.nodes[std::size_t(i)];
        cplx I(0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            I += g.weights[std::size_t(j)] * rho(g.nodes[std::size_t(j)]) *
                 (Gn[std::size_t(i)] - Gn[std::size_t(j)]) / (X - g.nodes[std::size_t(j)]);
        }
        I += g.weights[std::size_t(i)] * rho(X) * g.derivative_at(Gn, i);
        const cplx r = m.W(X) * Gn[std::size_t(i)] + 0.5 * I + m.lambda * m.G_XYY(X, Y);
        rep.residual[std::size_t(i)] = r;
        rep.sup = std::max(rep.sup, std::abs(r));
        l2 += abs2(r) * g.weights[std::size_t(i)];
    }
    rep.l2 = std::sqrt(l2);
    rep.tail_estimate = detail_q::tail_scale(m.lambda2, m.e, g.Xi);
    return rep;
}

// Pointwise residual of the (1+1) equation with the closed-form candidate.
inline cplx g11_equation_residual_at(const CutoffModel& m, const Grid& g, cplx X, cplx Y) {
    Measure rho = m.measure();
    const cplx GX = m.G11(X, Y);
    cplx I(0);
    for (int j = 0; j < g.size(); ++j) {
        const double T = g.nodes[std::size_t(j)];
        const cplx k = (X == cplx(T)) ? m.G11_jet_in_Y(Y, X, 1)[1]
                                      : (GX - m.G11(T, Y)) / (X - T);
        I += g.weights[std::size_t(j)] * rho(T) * k;
    }
    return m.W(X) * GX + 0.5 * I + m.lambda * m.G_XYY(X, Y);
}

// Pointwise residual of the (1+1+1) equation with the closed-form candidate.
inline cplx g111_equation_residual_at(const CutoffModel& m, const Grid& g, cplx X, cplx Y2,
                                      cplx Y3) {
    Measure rho = m.measure();
    auto G3 = [&](cplx Z) {
        auto p32 = [&](cplx v) { return detail::cpow(v + m.c, 1.5); };
        const cplx l5 = m.lambda2 * m.lambda2 * m.lambda;
        return -32.0 * l5 / (m.rho0 * p32(Z) * p32(Y2) * p32(Y3));
    };
    // G(X,Y,Y|Z) = 16 lambda^2 d/dY (G11(X|Z) - G11(Y|Z))/(X-Y)
    auto GXYYZ = [&](cplx Xv, cplx Yv, cplx Zv) {
        auto gj = m.G11_jet_in_Y(Zv, Yv, 1);  // jet of G11(.|Zv) in its first slot around Yv
        const cplx num = -(Xv - Yv) * gj[1] + (m.G11(Xv, Zv) - gj[0]);
        return 16.0 * m.lambda2 * num / ((Xv - Yv) * (Xv - Yv));
    };
    const cplx GX = G3(X);
    cplx I(0);
    for (int j = 0; j < g.size(); ++j) {
        const double T = g.nodes[std::size_t(j)];
        I += g.weights[std::size_t(j)] * rho(T) * (GX - G3(T)) / (X - T);
    }
    return m.W(X) * GX + 0.5 * I + m.lambda * (GXYYZ(X, Y2, Y3) + GXYYZ(X, Y3, Y2)) +
           2.0 * m.lambda * m.G11(X, Y2) * m.G11(X, Y3);
}

// ---------------------------------------------------------------------------
// Solvers.

struct WInteqSolution {
    std::vector<cplx> Wn;
    cplx W1;
    int iterations = 0;
    std::vector<double> history;
};

// Damped fixed-point iteration on W <- sqrt(X + B - A(W)), seeded with
// W = sqrt(X); diagonal difference quotients use the derivative stencil.
inline WInteqSolution solve_W_inteq(cplx lambda2, const EigenvalueFunction& e, const Grid& g,
                                    double damping = 0.5, double tol = 1e-10,
                                    int max_iter = 600) {
    Measure rho{lambda2, e};
    const int n = g.size();
    std::vector<cplx> rhov(std::size_t(n), cplx(0));
    for (int j = 0; j < n; ++j) rhov[std::size_t(j)] = rho(g.nodes[std::size_t(j)]);

    WInteqSolution sol;
    sol.Wn.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) sol.Wn[std::size_t(i)] = std::sqrt(g.nodes[std::size_t(i)]);
    sol.W1 = 1.0;

    std::vector<cplx> next(std::size_t(n), cplx(0));
    for (int it = 0; it < max_iter; ++it) {
        cplx B(0);
        for (int j = 0; j < n; ++j)
            B += g.weights[std::size_t(j)] * rhov[std::size_t(j)] *
                 (sol.W1 - sol.Wn[std::size_t(j)]) / (1.0 - g.nodes[std::size_t(j)]);
        double change = 0.0;
        for (int i = 0; i < n; ++i) {
            const double X = g.nodes[std::size_t(i)];
            cplx A(0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                A += g.weights[std::size_t(j)] * rhov[std::size_t(j)] *
                     (sol.Wn[std::size_t(i)] - sol.Wn[std::size_t(j)]) /
                     (X - g.nodes[std::size_t(j)]);
            }
            A += g.weights[std::size_t(i)] * rhov[std::size_t(i)] * g.derivative_at(sol.Wn, i);
            cplx root = std::sqrt(X + B - A);
            if (std::norm(root + sol.Wn[std::size_t(i)]) < std::norm(root - sol.Wn[std::size_t(i)]))
                root = -root;
            next[std::size_t(i)] =
                (1.0 - damping) * sol.Wn[std::size_t(i)] + damping * root;
            change = std::max(change, std::abs(next[std::size_t(i)] - sol.Wn[std::size_t(i)]));
        }
        // update W(1) from the same map
        {
            cplx A1(0);
            for (int j = 0; j < n; ++j)
                A1 += g.weights[std::size_t(j)] * rhov[std::size_t(j)] *
                      (sol.W1 - sol.Wn[std::size_t(j)]) / (1.0 - g.nodes[std::size_t(j)]);
            cplx root = std::sqrt(1.0 + B - A1);
            if (std::norm(root + sol.W1) < std::norm(root - sol.W1)) root = -root;
            const cplx w1n = (1.0 - damping) * sol.W1 + damping * root;
            change = std::max(change, std::abs(w1n - sol.W1));
            sol.W1 = w1n;
        }
        sol.Wn.swap(next);
        sol.history.push_back(change);
        sol.iterations = it + 1;
        if (change < tol) return sol;
    }
    std::ostringstream os;
    os << "solve_W_inteq: no convergence after " << max_iter << " iterations; last changes:";
    for (std::size_t k = sol.history.size() >= 5 ? sol.history.size() - 5 : 0;
         k < sol.history.size(); ++k)
        os << " " << sol.history[k];
    throw convergence_error(os.str());
}

struct G11InteqSolution {
    std::vector<cplx> Gn;
    cplx Y;
    double rcond = 1.0;
};

// Discretize the linear Fredholm equation for G(.|Y) and solve directly.
inline G11InteqSolution solve_G11_inteq(const CutoffModel& m, const Grid& g, cplx Y) {
    Measure rho = m.measure();
    const int n = g.size();
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd b(n);
    std::vector<cplx> rhov(std::size_t(n), cplx(0));
    for (int j = 0; j < n; ++j) rhov[std::size_t(j)] = rho(g.nodes[std::size_t(j)]);

    for (int i = 0; i < n; ++i) {
        const double X = g.nodes[std::size_t(i)];
        cplx diag = m.W(X);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const cplx kern = 0.5 * g.weights[std::size_t(j)] * rhov[std::size_t(j)] /
                              (X - g.nodes[std::size_t(j)]);
            diag += kern;
            A(i, j) -= kern;
        }
        // removable diagonal: derivative stencil row
        const int p = g.panel_of[std::size_t(i)];
        const int pb = g.panel_begin[std::size_t(p)];
        const int pm = g.panel_begin[std::size_t(p + 1)] - pb;
        const auto& D = g.dmat[std::size_t(p)];
        const cplx fac = 0.5 * g.weights[std::size_t(i)] * rhov[std::size_t(i)];
        for (int j = 0; j < pm; ++j) A(i, pb + j) += fac * D[std::size_t((i - pb) * pm + j)];
        A(i, i) += diag;
        b(i) = -m.lambda * m.G_XYY(X, Y);
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14))
        throw convergence_error("solve_G11_inteq: system is numerically singular, rcond = " +
                                std::to_string(rcond));
    Eigen::VectorXcd x = lu.solve(b);
    G11InteqSolution sol;
    sol.Y = Y;
    sol.rcond = rcond;
    sol.Gn.assign(x.data(), x.data() + n);
    return sol;
}

}  // namespace inteq
}  // namespace phi3
