#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "phi3/numeric.hpp"

namespace phi3 {

// Exact arithmetic kernel. Rational is always stored in lowest terms with a
// positive denominator (the backend canonicalises on every operation).
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Int factorial(long n) {
    if (n < 0) throw input_error("factorial: n < 0");
    Int r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

// n!! with the empty-product conventions (-1)!! = 0!! = 1.
inline Int double_factorial(long n) {
    if (n < -1) throw input_error("double_factorial: n < -1");
    Int r = 1;
    for (long k = n; k >= 2; k -= 2) r *= k;
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (long j = 1; j <= k; ++j) {
        r *= (n - k + j);
        r /= j;
    }
    return r;
}

}  // namespace phi3
