#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "chebknot/dyadic.hpp"

namespace chebknot {

// Dense univariate polynomial with arbitrary-precision integer coefficients.
// coeffs[i] is the degree-i coefficient; trailing zeros are trimmed, so the
// leading coefficient is nonzero unless the polynomial is zero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial constant(mpz_class v);
  static IntPolynomial monomial(mpz_class coeff, size_t degree);
  // x
  static IntPolynomial x() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const mpz_class& operator[](size_t i) const;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& leading() const;

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }

  IntPolynomial operator-() const;
  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator*(const mpz_class& k) const;

  IntPolynomial derivative() const;
  // P(Q(x)) by Horner over polynomials.
  IntPolynomial compose(const IntPolynomial& q) const;
  // Exact quotient; throws certification_error if the division is not exact.
  IntPolynomial divide_exact(const IntPolynomial& divisor) const;

  // content > 0 (gcd of coefficients; content of zero is 0).
  mpz_class content() const;
  IntPolynomial primitive_part() const;  // *this / content, sign preserved
  // Primitive part with positive leading coefficient.
  IntPolynomial sign_normalized() const;

  // P(-x).
  IntPolynomial negate_variable() const;
  // x^deg * P(1/x).
  IntPolynomial reverse() const;
  // P(x + 1).
  IntPolynomial taylor_shift_1() const;
  // P(2^k x), k >= 0.
  IntPolynomial scale_pow2(long k) const;
  // 2^(k*deg) * P(x / 2^k), k >= 0 (integer again).
  IntPolynomial unscale_pow2(long k) const;

  // Exact sign of P(q).
  int sign_at(const mpq_class& q) const;
  int sign_at(const Dyadic& d) const;
  // Exact value of P at a dyadic point (exact dyadic arithmetic).
  Dyadic eval_dyadic_exact(const Dyadic& x) const;
  // Certified enclosure of P(x) with outward rounding to `prec` bits per step.
  DyInterval eval_enclosure(const Dyadic& x, long prec) const;
  DyInterval eval_enclosure(const DyInterval& x, long prec) const;
  // Exact value of q^deg * P(p/q) for rational p/q (integer).
  mpz_class eval_homogeneous(const mpz_class& p, const mpz_class& q) const;

  // Number of sign variations in the coefficient sequence (zeros skipped).
  int sign_variations() const;
  // Smallest e with 2^e strictly greater than every real root's absolute
  // value (power-of-two Cauchy bound); 0 for constants.
  long root_bound_exp2() const;

  // Space-separated decimal coefficients, lowest degree first ("0" for the
  // zero polynomial).
  std::string str_coeffs() const;
  // Human form like "4t^3 - 3t".
  std::string str_pretty(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// gcd of coefficient-wise primitive parts, sign-normalized (lc > 0);
// primitive pseudo-remainder sequence. gcd(0,0) = 0.
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

// True if gcd(a, b) is certified to be constant via a single-prime modular
// image (sound: deg gcd over Q <= deg gcd mod p when lcs survive).
bool poly_gcd_is_one_mod_prime(const IntPolynomial& a, const IntPolynomial& b);

}  // namespace chebknot
