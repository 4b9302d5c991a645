#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phi3/correlators.hpp"

namespace phi3 {

// ---------------------------------------------------------------------------
// Cauchy coefficient extraction on a circle, with the spectral-accuracy
// doubling check built in.

template <class F>
std::vector<cplx> cauchy_coefficients(F&& f, int order, double radius, int M = 64) {
    if (order < 0 || radius <= 0 || M < 2 * (order + 1))
        throw input_error("cauchy_coefficients: bad parameters");
    auto run = [&](int points) {
        std::vector<cplx> samples;
        samples.reserve(std::size_t(points));
        for (int m = 0; m < points; ++m) {
            const double th = 2.0 * M_PI * m / points;
            samples.push_back(f(std::polar(radius, th)));
        }
        std::vector<cplx> coef(std::size_t(order) + 1);
        for (int k = 0; k <= order; ++k) {
            cplx acc(0);
            for (int m = 0; m < points; ++m) {
                const double th = 2.0 * M_PI * m / points;
                acc += samples[std::size_t(m)] * std::polar(1.0, -k * th);
            }
            coef[std::size_t(k)] = acc / (double(points) * std::pow(radius, k));
        }
        return coef;
    };
    auto c1 = run(M);
    auto c2 = run(2 * M);
    for (int k = 0; k <= order; ++k) {
        const double scale = std::max(1.0, std::abs(c2[std::size_t(k)]));
        if (std::abs(c1[std::size_t(k)] - c2[std::size_t(k)]) > 1e-8 * scale)
            throw convergence_error(
                "cauchy_coefficients: doubling the sample count moved coefficient " +
                std::to_string(k) + "; the target is not resolved on this circle");
    }
    return c2;
}

struct SeriesExtract {
    std::string target;
    double radius = 0.01;
    int order = 0;
    bool odd = false;  // odd targets carry one explicit factor of lambda
    std::vector<cplx> coefficients;  // coefficient k of lambda^(2k) resp. lambda^(2k+1)
};

// Coefficients of G1(x) in odd powers of lambda: coefficient k multiplies
// lambda^(2k+1).
inline SeriesExtract extract_G1(double x, int order, double radius = 0.01,
                                const EigenvalueFunction& e = EigenvalueFunction::linear()) {
    SeriesExtract s;
    s.target = "G1";
    s.radius = radius;
    s.order = order;
    s.odd = true;
    s.coefficients = cauchy_coefficients(
        [&](cplx z) {
            Coupling cp = solve_c(z, e);
            return G1(cp, x) / cp.lambda;  // odd target: even quotient of lambda^2
        },
        order, radius);
    return s;
}

inline SeriesExtract extract_G2(cplx X, cplx Y, int order, double radius = 0.01,
                                const EigenvalueFunction& e = EigenvalueFunction::linear()) {
    SeriesExtract s;
    s.target = "G2";
    s.radius = radius;
    s.order = order;
    s.odd = false;
    s.coefficients = cauchy_coefficients(
        [&](cplx z) { return G2(solve_c(z, e), X, Y); }, order, radius);
    return s;
}

inline SeriesExtract extract_G11(cplx X, cplx Y, int order, double radius = 0.01) {
    SeriesExtract s;
    s.target = "G_1plus1";
    s.radius = radius;
    s.order = order;
    s.odd = false;
    s.coefficients = cauchy_coefficients(
        [&](cplx z) { return G_1plus1(solve_c(z), X, Y); }, order, radius);
    return s;
}

// Raw coefficients in lambda itself (both parities), for parity diagnostics.
template <class F>
std::vector<cplx> lambda_coefficients(F&& target_of_coupling, int order, double lambda_radius,
                                      int M = 64) {
    return cauchy_coefficients(
        [&](cplx lam) {
            Coupling cp = solve_c(lam * lam);
            cp.lambda = lam;  // fix the branch: the circle parametrises lambda itself
            return target_of_coupling(cp);
        },
        order, lambda_radius, M);
}

// ---------------------------------------------------------------------------
// The toy-graph values of the prelude.

enum class ToyGraph { gamma1, gamma2, gamma3 };

// gamma1: renormalised tadpole, lambda log(x+1)/(2x+1).
// gamma2: two-vertex chain on one boundary; the face integral evaluates to the
//         logarithmic divided difference.
// gamma3: two tadpoles joined across two boundaries.
inline cplx toy_graph_value(ToyGraph g, std::span<const double> xs, cplx lambda) {
    switch (g) {
        case ToyGraph::gamma1: {
            if (xs.size() != 1 || xs[0] < 0) throw input_error("gamma1 needs one x >= 0");
            return lambda * std::log(xs[0] + 1.0) / (2.0 * xs[0] + 1.0);
        }
        case ToyGraph::gamma2: {
            if (xs.size() != 2 || xs[0] < 0 || xs[1] < 0)
                throw input_error("gamma2 needs x1, x2 >= 0");
            const double x1 = xs[0], x2 = xs[1];
            const double dd =
                x1 == x2 ? 1.0 / (x1 + 1.0)
                         : (std::log(x1 + 1.0) - std::log(x2 + 1.0)) / (x1 - x2);
            const double d = x1 + x2 + 1.0;
            return lambda * lambda * dd / (d * d);
        }
        case ToyGraph::gamma3: {
            if (xs.size() != 2 || xs[0] < 0 || xs[1] < 0)
                throw input_error("gamma3 needs x1, x2 >= 0");
            const double d = xs[0] + xs[1] + 1.0;
            return lambda * lambda /
                   ((2.0 * xs[0] + 1.0) * (2.0 * xs[1] + 1.0) * d * d);
        }
    }
    throw input_error("toy_graph_value: unknown graph");
}

// ---------------------------------------------------------------------------
// Perturbative cross-checks against the printed low-order expansions.

// order-lambda^3 coefficient of the one-point function:
// (log 2)^2/(2x+1) - (log 2)^2/(2x+1)^3.
inline bool check_order3_onepoint(double x, double tol = 1e-7) {
    if (x < 0) throw input_error("check_order3_onepoint: x < 0");
    auto s = extract_G1(x, 1);
    const double L = std::log(2.0), d = 2.0 * x + 1.0;
    const double expect = L * L / d - L * L / (d * d * d);
    return std::abs(s.coefficients[1] - expect) < tol;
}

// order-lambda^2 coefficient of the two-point function:
// [dd-log - log(x1+1)/(2x1+1) - log(x2+1)/(2x2+1)] / (x1+x2+1)^2.
inline bool check_order2_twopoint(double x1, double x2, double tol = 1e-7) {
    if (x1 < 0 || x2 < 0) throw input_error("check_order2_twopoint: x < 0");
    const double X1 = (2.0 * x1 + 1.0) * (2.0 * x1 + 1.0);
    const double X2 = (2.0 * x2 + 1.0) * (2.0 * x2 + 1.0);
    auto s = extract_G2(X1, X2, 1);
    const double dd = x1 == x2 ? 1.0 / (x1 + 1.0)
                               : (std::log(x1 + 1.0) - std::log(x2 + 1.0)) / (x1 - x2);
    const double d = x1 + x2 + 1.0;
    const double expect =
        (dd - std::log(x1 + 1.0) / (2 * x1 + 1) - std::log(x2 + 1.0) / (2 * x2 + 1)) / (d * d);
    return std::abs(s.coefficients[1] - expect) < tol;
}

}  // namespace phi3
