#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace smrank {

// All counting is exact. Coefficients routinely exceed 64 bits (Macaulay
// column counts around the Mirath parameter sizes), so the integer type is
// GMP throughout.
using Int = mpz_class;

// Binomial coefficient with the extended definition
//   binom(a, k) = a(a-1)...(a-k+1) / k!   for k >= 0, any integer a,
// and 0 for k < 0.  Negative upper index gives the usual alternating values,
// e.g. binom(-1, k) = (-1)^k.
Int binom_ext(long a, long k);

// Twisted binomial [n; m] = binom(n+m, m), zero for m < 0.
Int twisted_binom(long n, long m);

// Exact integer determinant (fraction-free Bareiss with row pivoting).
// The matrix is consumed.
Int det_int(std::vector<std::vector<Int>> a);

// log2 of a positive integer, as a double. Throws on x <= 0.
double log2_int(const Int& x);

} // namespace smrank
