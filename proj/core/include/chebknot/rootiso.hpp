#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "chebknot/dyadic.hpp"
#include "chebknot/intpoly.hpp"

namespace chebknot {

// Certified real root isolation, refinement, and exact comparison of
// algebraic numbers given by (square-free polynomial, isolating interval)
// certificates. All arithmetic is exact or outward-rounded dyadic.

struct RootInterval {
  DyInterval interval;  // point interval <=> the root is that exact dyadic
  int multiplicity = 1;
};

struct IsolationResult {
  // Ascending, pairwise disjoint; every real root of the input appears in
  // exactly one interval, annotated with its multiplicity.
  std::vector<RootInterval> roots;
};

// Square-free decomposition up to content: returns (factor, multiplicity)
// pairs with pairwise coprime primitive square-free factors, multiplicities
// ascending, product of factor^multiplicity = input up to a rational unit.
// The reconstruction is re-verified; throws input_error on the zero
// polynomial.
std::vector<std::pair<IntPolynomial, int>> squarefree_decompose(
    const IntPolynomial& p);

// Isolate all real roots of p (p != 0) into pairwise disjoint intervals of
// width <= acc (acc > 0), each containing exactly one distinct real root.
// Roots hit exactly at dyadic subdivision points come back as point
// intervals. Descartes / bisection on the square-free part.
IsolationResult isolate(const IntPolynomial& p, const Dyadic& acc);

// Shrink an interval certified to contain exactly one root of p (visible as
// a sign change, or as an exact zero at an endpoint) to width <= acc.
// Safeguarded bisection with interval-Newton acceleration, so thousands of
// correct bits cost a handful of refinement rounds. Throws
// certification_error when the certificate is absent.
DyInterval refine(const DyInterval& iv, const IntPolynomial& p,
                  const Dyadic& acc);

// Exact sign of p at a dyadic point, computed through escalating-precision
// enclosures with an exact dyadic evaluation as the final fallback.
int sign_at_point(const IntPolynomial& p, const Dyadic& x);

// Upper bound on log2 |d| for nonzero d: |d| <= 2^result, tight to one bit.
long dyadic_log2_upper(const Dyadic& d);

// Dyadic enclosure of width <= 2^-prec around an arbitrary rational (a point
// when q itself is dyadic).
DyInterval enclose_rational(const mpq_class& q, long prec);

// Real algebraic number: either an exact rational, or the unique root of a
// square-free integer polynomial inside an isolating interval. In root form
// the value is irrational by contract (rational values must use exact form);
// refinement promotes a root discovered at a dyadic point to exact form.
class AlgebraicNumber {
 public:
  static AlgebraicNumber rational(const mpq_class& q);
  // Validates the certificate: endpoints of `isolating` are not roots and
  // the signs differ. `defining` must be square-free.
  static AlgebraicNumber root_of(IntPolynomial defining, DyInterval isolating);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<mpq_class>& exact() const { return exact_; }
  const IntPolynomial& defining() const { return defining_; }
  const DyInterval& interval() const { return interval_; }

  // Shrink the enclosure to width <= acc (no-op for already-tight exact
  // values' enclosures except recomputation at the demanded precision).
  void refine_to(const Dyadic& acc);

  // Exact sign of the value.
  int sign() const;

 private:
  AlgebraicNumber() = default;
  IntPolynomial defining_;
  DyInterval interval_;
  std::optional<mpq_class> exact_;
};

// Exact total order: -1, 0, +1. Refinement loop with a gcd-based equality
// decision when the enclosures refuse to separate.
int compare_algebraic(const AlgebraicNumber& x, const AlgebraicNumber& y);

}  // namespace chebknot
