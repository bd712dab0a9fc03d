#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "chebknot/bivariate.hpp"
#include "chebknot/intpoly.hpp"

namespace chebknot {

// Chebyshev polynomial of the first kind T_n, monic up to the factor 2^(n-1):
// T_0 = 1, T_1 = t, T_{n+1} = 2 t T_n - T_{n-1}; T_n(cos x) = cos(n x).
IntPolynomial cheb_T(unsigned long n);

// Second-family polynomial V_n with the same recurrence and V_0 = 0, V_1 = 1;
// V_n(cos x) = sin(n x) / sin x and T_n' = n V_n.
IntPolynomial cheb_V(unsigned long n);

// Difference quotient (T_n(t) - T_n(s)) / (t - s) as an exact bivariate
// polynomial; it is symmetric in (s, t) for every n.
BivariatePoly cheb_diff_quotient(unsigned long n);

// Pi_n: Pi_0 = 1, Pi_1 = 2t - 1, Pi_{n+1} = 2 t Pi_n - Pi_{n-1}.
// Pi_n(cos x) = cos((2n+1) x / 2) / cos(x / 2), so its roots are the cosines
// cos((2k+1) pi / (2n+1)), 0 <= k <= n-1, and Pi_n = prod of M_d over the
// divisors d > 1 of 2n+1.
IntPolynomial pi_poly(unsigned long n);

// Minimal polynomial M_n of cos(pi / n) over Q, scaled to integer
// coefficients with positive leading coefficient: M_1 = t + 1, M_2 = t, and
// for n >= 3 the degree is phi(2n) / 2. The leading coefficient is 2^degree
// except at n = 2^k (k >= 1) where it is 2^(degree - 1) since M_{2^k} =
// T_{2^(k-1)}. Roots of M_n are exactly cos(k pi / n) for gcd(k, 2n) = 1.
IntPolynomial minimal_cos_poly(unsigned long n);

// Factorization of T_n (n >= 1) into minimal polynomials: with n = 2^k q
// (q odd), T_n = prod over d | q of M_{2^(k+1) d}. Factors are returned in
// increasing index order and the exact product is re-verified before return.
std::vector<IntPolynomial> factor_T(unsigned long n);

struct FactorV {
  mpz_class content;  // positive integer with content * prod(factors) = V_n
  std::vector<IntPolynomial> factors;
};

// Factorization of V_n (n >= 2): for every divisor d > 1 of n the factor M_d
// appears, and for odd d >= 3 additionally the sign-normalized M_d(-t)
// (covering the cosines cos(k pi / d) with k even). Verified by exact
// product reconstruction.
FactorV factor_V(unsigned long n);

// Euler phi, used for the degree invariant of M_n.
unsigned long euler_phi(unsigned long n);

// Divisors of n in increasing order.
std::vector<unsigned long> divisors_of(unsigned long n);

// Drop the in-memory minimal-polynomial memo (the disk cache named by the
// CHEBKNOT_CACHE environment variable is unaffected); used to exercise disk
// round trips deterministically.
void minpoly_memo_clear();

}  // namespace chebknot
