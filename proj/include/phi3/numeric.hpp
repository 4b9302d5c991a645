#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace phi3 {

using cplx = std::complex<double>;

// Error taxonomy used across the library:
//   input_error       precondition violated by the caller
//   domain_error      argument on a branch cut / outside the analyticity domain
//   convergence_error iterative solver failed to converge
//   quadrature_error  adaptive quadrature could not reach the requested accuracy
//   singular_error    evaluation at a genuine singularity (rho0 = 0, zero jet divisor)
//   internal_error    a consistency assertion that must never fire did fire
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct singular_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Principal branch convention for sqrt/log: cut along (-infty, 0].
inline bool on_principal_cut(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0;
}

inline void require_off_cut(cplx z, const char* what) {
    if (on_principal_cut(z))
        throw domain_error(std::string(what) + ": argument on the principal cut (-inf,0]");
}

inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

}  // namespace phi3
