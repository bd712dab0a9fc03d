#pragma once

#include <gmpxx.h>

#include <vector>

#include "chebknot/intpoly.hpp"

namespace chebknot {

// Dense bivariate polynomial with integer coefficients: coeff(i, j) is the
// coefficient of u^i v^j, where (u, v) is (s, t) for curve-parameter pairs or
// (S, T) = (s+t, st) for the symmetric form.
class BivariatePoly {
 public:
  BivariatePoly() = default;
  static BivariatePoly zero() { return BivariatePoly(); }
  static BivariatePoly constant(const mpz_class& v);
  // u^i v^j with coefficient c.
  static BivariatePoly term(const mpz_class& c, size_t i, size_t j);
  // P(u) as a bivariate in u only / v only.
  static BivariatePoly from_u(const IntPolynomial& p);
  static BivariatePoly from_v(const IntPolynomial& p);

  bool is_zero() const;
  const mpz_class& coeff(size_t i, size_t j) const;
  void set_coeff(size_t i, size_t j, mpz_class v);
  long deg_u() const;
  long deg_v() const;

  bool operator==(const BivariatePoly& o) const;
  BivariatePoly operator-() const;
  BivariatePoly operator+(const BivariatePoly& o) const;
  BivariatePoly operator-(const BivariatePoly& o) const;
  BivariatePoly operator*(const BivariatePoly& o) const;

  // Exact value at rational points.
  mpq_class eval(const mpq_class& u, const mpq_class& v) const;
  // Swap the two variables.
  BivariatePoly swapped() const;
  bool is_symmetric() const { return *this == swapped(); }

  // Rewrite a symmetric polynomial in (s, t) as a polynomial in the
  // elementary symmetric pair (S, T) = (s+t, st); throws certification_error
  // if the input is not symmetric.
  BivariatePoly symmetric_to_ST() const;

 private:
  void trim();
  // rows_[i][j] = coeff of u^i v^j.
  std::vector<std::vector<mpz_class>> rows_;
};

}  // namespace chebknot
