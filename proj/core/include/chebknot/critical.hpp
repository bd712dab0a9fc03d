#pragma once

#include <gmpxx.h>

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chebknot/cyclotomic.hpp"
#include "chebknot/dyadic.hpp"

namespace chebknot {

// Parameters (a, b, c) of the space curve x = T_a(t), y = T_b(t),
// z = T_c(t + phi), canonicalized so that a is odd: when the first entry is
// even the constructor swaps it with b and records the swap in `mirror`
// (the swapped curve is the mirror image of the original one). Requires
// a, b, c >= 1 and gcd(a, b) = 1, which excludes a and b both even.
struct KnotParams {
  long a = 0;
  long b = 0;
  long c = 0;
  bool mirror = false;

  static KnotParams make(long a, long b, long c);
};

// One monic factor of the critical polynomial in phi, indexed by
// 1 <= i <= (a-1)/2, 1 <= j <= b-1, 1 <= k <= floor(c/2), with angles
// alpha = i pi / a, beta = j pi / b, gamma = k pi / c:
//
//   phi^2 + 2 cos(alpha) cos(beta) phi
//         + (cos^2 alpha - cos^2 gamma) (cos^2 beta - cos^2 gamma) / sin^2 gamma
//
// except when gamma = pi/2 (2k = c), where the factor degenerates to the
// linear polynomial phi + cos(alpha) cos(beta). The critical phases of the
// curve are exactly the real roots of these factors over all (i, j, k).
// Cosine values are shared through a per-angle cache, so refinement work on
// a common angle is pooled across factors.
class QuadraticFactor {
 public:
  long a() const { return a_; }
  long b() const { return b_; }
  long c() const { return c_; }
  long i() const { return i_; }
  long j() const { return j_; }
  long k() const { return k_; }
  int degree() const { return degree_; }
  AngleFraction alpha() const { return alpha_; }
  AngleFraction beta() const { return beta_; }
  AngleFraction gamma() const { return gamma_; }

  // Certified enclosures of the coefficients; width shrinks as prec grows.
  // For degree 2 the linear coefficient is 2 cos(alpha) cos(beta) and the
  // constant term is the quotient displayed above; for degree 1 the linear
  // coefficient is the leading 1 and the constant term is
  // cos(alpha) cos(beta).
  DyInterval linear_coeff(long prec) const;
  DyInterval constant_term(long prec) const;

 private:
  QuadraticFactor() = default;

  friend QuadraticFactor build_quadratic(const KnotParams& p, long i, long j,
                                         long k);
  friend struct FactorAccess;

  long a_ = 0, b_ = 0, c_ = 0;
  long i_ = 0, j_ = 0, k_ = 0;
  int degree_ = 2;
  AngleFraction alpha_, beta_, gamma_;
  std::shared_ptr<CosValue> ca_, cb_, cg_;
};

// Exact, refinable representation of one critical value. Three forms cover
// every root the factors can produce:
//   - an exact rational (all arithmetically detected roots, in particular 0),
//   - r * cos(theta_1) * ... * cos(theta_n) with r rational and every cosine
//     irrational (exact rational cosines are folded into r at construction),
//   - the root -A + branch * sqrt(A^2 - q) of a degree-2 factor with
//     certified positive discriminant, A = cos(alpha) cos(beta).
class CriticalValue {
 public:
  bool is_rational() const;
  const mpq_class& rational() const;  // requires is_rational()

  // Current certified enclosure and refinement to width <= acc. Enclosures
  // only ever shrink and always contain the exact value; for a rational
  // value the enclosure is the exact point interval.
  const DyInterval& interval() const;
  const DyInterval& refine_to(const Dyadic& acc);

  // Exact sign of the value. May refine; terminates because the irrational
  // forms are certified nonzero at construction.
  int sign();

  // Exact image under phi -> -phi.
  CriticalValue negated() const;

 private:
  friend struct CriticalValueAccess;

  enum class Kind { rational, cos_product, quad_root };

  Kind kind_ = Kind::rational;
  mpq_class rational_ = 0;       // rational: the value; cos_product: factor r
  std::vector<std::shared_ptr<CosValue>> cosines_;  // cos_product
  // quad_root data: angles and shared cosines of the owning factor
  AngleFraction alpha_, beta_, gamma_;
  std::shared_ptr<CosValue> ca_, cb_, cg_;
  int branch_ = 0;  // -1 or +1
  long prec_ = 0;   // last refinement precision
  DyInterval enclosure_ = DyInterval::exact_int(0);
};

// Relation between two factors of one (i, j) family: either their root sets
// are disjoint, or the polynomials are identical, which happens exactly in
// three arithmetically decidable cases (gamma matching {alpha, beta} up to
// supplement; sin(beta) = 1/2 with {gamma_1, gamma_2} = {alpha/2 and its
// complement}; equal gammas).
enum class FamilyRelation {
  distinct,
  identical_case1,
  identical_case2,
  identical_case3,
};

// One merged critical value: certified isolating interval, total
// multiplicity (number of factor roots merged into it, a degenerate double
// root counting twice), and the sorted list of contributing (i, j, k).
struct CriticalRoot {
  CriticalValue value;
  DyInterval interval = DyInterval::exact_int(0);
  long multiplicity = 0;
  std::vector<std::array<long, 3>> provenance;
};

// Roots of the phase polynomial attached to one double point (i, j): indices
// into CriticalSet::roots in ascending value order, each with multiplicity
// within this family.
struct DoublePointRoots {
  long i = 0;
  long j = 0;
  std::vector<std::pair<size_t, long>> roots;
};

// The certified critical set: all distinct critical phases in ascending
// order with pairwise disjoint intervals, per-double-point root lists for
// every (i, j), and one sample phase strictly inside each complementary
// interval (roots.size() + 1 samples).
struct CriticalSet {
  KnotParams params;
  std::vector<CriticalRoot> roots;
  std::vector<DoublePointRoots> double_points;
  std::vector<mpq_class> samples;
  long zero_mult = 0;  // multiplicity of phi = 0, equals the closed formula
};

// Builds the (i, j, k) factor; throws input_error when an index is out of
// range for p.
QuadraticFactor build_quadratic(const KnotParams& p, long i, long j, long k);

// Exact sign of the discriminant of a degree-2 factor (input_error on degree
// 1). Zero exactly in the arithmetic case 2j = b and ic = ka (double root
// 0); otherwise the sign is certified by interval refinement, which
// terminates because the discriminant is then provably nonzero.
int discriminant_sign(const QuadraticFactor& q);

// Real roots of the factor in ascending order with multiplicities, refined
// to width <= acc (acc > 0). Roots at 0 are detected arithmetically
// (ic = ka, jc = kb, or (b-j)c = kb; for degree 1, 2j = b) and come out as
// exact rationals.
std::vector<std::pair<CriticalValue, long>> isolate_quadratic(
    const QuadraticFactor& q, const Dyadic& acc);

// Multiplicity of the root phi = 0 of the full critical polynomial:
// (a-1)/2 * (gcd(b,c) - 1) + floor(b/2) * (gcd(a,c) - 1). Zero iff a, b, c
// are pairwise coprime.
long zero_multiplicity(const KnotParams& p);

// Classifies two factors of the same (i, j) family of the same parameters
// (input_error otherwise). Any non-distinct result means the polynomials
// are identical, so their roots merge pairwise.
FamilyRelation same_family_relation(const QuadraticFactor& q1,
                                    const QuadraticFactor& q2);

// Sign of the resultant of two factors from different families, evaluated
// by interval arithmetic with all six cosines enclosed to width <= acc.
// Returns -1 or +1 when the sign is definite, 0 when the evaluation is the
// exact point [0, 0] (possible only with all-rational cosines), and nullopt
// when the enclosure straddles zero. input_error when both factors belong
// to the same family of the same parameters, or acc <= 0.
std::optional<int> resultant_sign_test(const QuadraticFactor& q1,
                                       const QuadraticFactor& q2,
                                       const Dyadic& acc);

// Decides exactly whether root root1 of q1 equals root root2 of q2 (indices
// into the ascending isolate_quadratic order; input_error when out of
// range). Same-family pairs are decided arithmetically; cross-family pairs
// by interval refinement with the resultant sign test, escalating to the
// formal null test only when refinement alone cannot separate the values.
bool coincide(const QuadraticFactor& q1, int root1, const QuadraticFactor& q2,
              int root2);

// Computes the full certified critical set: enumerates all factors, merges
// equal roots exactly, certifies pairwise disjoint isolating intervals of
// width <= acc (acc > 0), cross-checks the multiplicity at 0 against the
// closed formula, and fills the per-double-point lists and the samples.
// The root set is symmetric under negation; the engine computes families
// with j < b/2 and transports them by the exact symmetry, so mirrored roots
// carry exactly mirrored intervals.
CriticalSet critical_set(const KnotParams& p, const Dyadic& acc);

// Recomputes the interleaving samples of cs from its roots (also stored in
// cs.samples): for each complementary interval of the critical set, the
// unique simplest rational strictly inside it (minimal denominator, then
// minimal |numerator|, then the negative one), certified by refining the
// root enclosures until an inner and an outer rational bracket agree.
std::vector<mpq_class> sample_points(CriticalSet& cs);

// Simplest rational strictly between u and v (minimal denominator, then
// minimal |numerator|; u < v required).
mpq_class simplest_between(const mpq_class& u, const mpq_class& v);

// Versioned JSON document for a critical set. All numbers are exact: dyadic
// interval endpoints in the "num*2^exp" text form, rationals as "p/q".
std::string to_json(const CriticalSet& cs);

}  // namespace chebknot
