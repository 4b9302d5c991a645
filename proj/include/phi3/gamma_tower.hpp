#pragma once

#include <utility>
#include <vector>

#include "phi3/bell.hpp"
#include "phi3/mpoly.hpp"

namespace phi3 {

// The gamma^M_B coefficient tower of the (1+...+1)-point ansatz.
//
// gamma^M_B = rho0^{-(B-3)} g^M_B where g^M_B is a polynomial in the
// substituted variables x_r = -(2r+1)!! rho_r / ((r+1) rho0). In these
// variables the descending-M back-substitution of the triangular system reads
//   g^M_B = g^{M-1}_{B-1} + sum_{j>=1} C(M+j,j) (j+1) x_j g^{M+j}_B,
// seeded by g^0_3 = 1, and the companion relation becomes
//   3(M+1) g^{M+1}_B - sum_{j>=1} C(M+1+j,j+1) (2j+3)(j+1) x_j g^{M+1+j}_B
//     = (2M+B-1) g^M_{B-1}.
struct GammaTable {
    int B = 3;
    int arity = 1;
    std::vector<MPoly> g;  // g[M] for M = 0..B-3

    int rho0_power() const { return B - 3; }
    const MPoly& poly(int M) const {
        if (M < 0 || M > B - 3) throw input_error("GammaTable: M out of range");
        return g[std::size_t(M)];
    }
};

// Closed form: g^M_B = sum_K (B-3+K)!/((B-3-M)! M!) B_{B-3-M,K}(x_1,...).
inline std::pair<MPoly, int> gamma_closed(int B, int M, int arity = -1) {
    if (B < 3) throw input_error("gamma_closed: B < 3");
    if (M < 0 || M > B - 3) throw input_error("gamma_closed: M out of range");
    const int R = arity > 0 ? arity : std::max(B - 3, 1);
    const int s = B - 3 - M;
    MPoly acc(R);
    const Rational pref(1, factorial(s) * factorial(M));
    if (s == 0) {
        acc += MPoly::constant(R, Rational(factorial(B - 3)) * pref);
    } else {
        for (int K = 1; K <= s; ++K)
            acc += Rational(factorial(B - 3 + K)) * pref * bell_symbolic(s, K, R);
    }
    return {std::move(acc), B - 3};
}

// Builds the full chain 3..B by the recursion and asserts the companion
// relation exactly at every level; an assertion failure is an internal error
// that must never fire.
inline GammaTable gamma_recursive(int B, int arity = -1) {
    if (B < 3) throw input_error("gamma_recursive: B < 3");
    const int R = arity > 0 ? arity : std::max(B - 3, 1);

    std::vector<std::vector<MPoly>> chain;  // chain[b-3][M]
    chain.push_back({MPoly::constant(R, 1)});

    for (int b = 4; b <= B; ++b) {
        const auto& prev = chain[std::size_t(b - 4)];
        std::vector<MPoly> cur(std::size_t(b - 2), MPoly(R));
        for (int M = b - 3; M >= 0; --M) {
            MPoly acc = (M >= 1) ? prev[std::size_t(M - 1)] : MPoly(R);
            for (int j = 1; j <= b - 3 - M; ++j)
                acc += Rational(binomial(M + j, j) * Int(j + 1)) * MPoly::var(R, j) *
                       cur[std::size_t(M + j)];
            cur[std::size_t(M)] = std::move(acc);
        }
        // companion relation (the l = -1 member of the hierarchy)
        for (int M = 0; M <= b - 4; ++M) {
            MPoly lhs = Rational(3 * (M + 1)) * cur[std::size_t(M + 1)];
            for (int j = 1; j <= b - 4 - M; ++j)
                lhs -= Rational(binomial(M + 1 + j, j + 1) * Int(2 * j + 3) * Int(j + 1)) *
                       MPoly::var(R, j) * cur[std::size_t(M + 1 + j)];
            MPoly rhs = Rational(2 * M + b - 1) * prev[std::size_t(M)];
            if (lhs != rhs)
                throw internal_error("gamma_recursive: companion relation failed at B=" +
                                     std::to_string(b) + ", M=" + std::to_string(M));
        }
        chain.push_back(std::move(cur));
    }

    GammaTable t;
    t.B = B;
    t.arity = R;
    t.g = std::move(chain.back());
    return t;
}

}  // namespace phi3
