#pragma once

// Knot diagrams of C(a,b,c,phi) = (T_a(t), T_b(t), T_c(t+phi)) for a regular
// phase phi: double points of the plane projection, over/under and twist
// signs, Gauss and PD codes, billiard renderings, and invariants (Jones via
// the Kauffman bracket, determinant via two independent routes, two-bridge
// fraction when the original first parameter is 3 or 4).
//
// Everything combinatorial is exact: parameters of double points are
// cos(q pi) for explicit rationals q, so traversal order, strand stacking,
// and local crossing geometry reduce to comparisons of folded rational
// angles. No floating point enters any decision.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "chebknot/critical.hpp"
#include "chebknot/cyclotomic.hpp"
#include "chebknot/dyadic.hpp"

namespace chebknot {

// One double point of the projection (T_a(t), T_b(t)): the two parameter
// values are t = cos(qplus pi) and s = cos(qminus pi) with
// qplus = j/b + i/a and qminus = j/b - i/a folded into [0, 1]. Across a
// parameter set all 2 N folded angles are distinct.
struct DoublePointGeom {
  long i = 0;
  long j = 0;
  AngleFraction qplus;   // folded angle of parameter t
  AngleFraction qminus;  // folded angle of parameter s
};

// All (a-1)(b-1)/2 double points in row-major (i, j) order.
std::vector<DoublePointGeom> double_points(const KnotParams& p);

// Q_c evaluated at a double point with S = s + t and T = s t via the
// order-4 recurrence in c. Exact rational inputs give the exact value; the
// interval form is a one-shot enclosure (the caller refines its inputs).
mpq_class qc_eval(const mpq_class& s_plus_t, const mpq_class& st,
                  const mpq_class& phi, long c);
DyInterval qc_eval(const DyInterval& s_plus_t, const DyInterval& st,
                   const DyInterval& phi, long c);

// Signs at one double point: qc is the certified sign of Q_c(s, t, phi) and
// twist is the oriented crossing sign, computed from the exact tangent
// frame (positive when the under direction is the over direction rotated a
// quarter turn counterclockwise) and negated when the parameters carry the
// mirror flag. The unoriented handedness is cross-checked against the sign
// of Q_c P_{b-a}, which is +1 exactly for a right twist (over strand on
// the ascending diagonal).
struct CrossingSign {
  int qc = 0;
  int twist = 0;
};

// Signs for every double point in row-major order. With cs given, the sign
// of Q_c is (-1)^n where n counts the critical values of the (i, j) family
// strictly above phi with multiplicity (the leading coefficient of Q_c in
// phi is positive, so the sign is + above all roots). Without cs the
// recurrence is evaluated in interval arithmetic with increasing precision;
// a nonzero rational phi is never a critical value, so refinement
// terminates. Throws input_error when phi is critical.
std::vector<CrossingSign> crossing_signs(const KnotParams& p,
                                         const mpq_class& phi,
                                         const CriticalSet* cs = nullptr);

// One crossing of the diagram. Visits index the traversal of the curve by
// increasing parameter; the strand with the larger T_c(u + phi) is over.
// Geometry fields are in the canonical (a odd) frame and drive the bracket
// sweep; twist is the true sign with the mirror flag applied.
struct Crossing {
  long label = 0;   // 1-based, in first-visit order
  long i = 0;
  long j = 0;
  size_t first_visit = 0;
  size_t second_visit = 0;
  bool t_is_first = false;  // parameter t = cos(qplus pi) is the earlier visit
  bool over_first = false;  // the earlier visit is the over strand
  int qc = 0;
  int twist = 0;
  int over_slope = 0;   // slope sign of the over strand in the projection
  long column = 0;      // interior vertical grid line carrying the crossing
  long stack_pos = 0;   // lower of the two strand positions on its column
};

struct GaussEntry {
  long label = 0;
  bool over = false;
  int sign = 0;
  bool operator==(const GaussEntry& o) const {
    return label == o.label && over == o.over && sign == o.sign;
  }
};

struct KnotDiagram {
  KnotParams params;
  mpq_class phi = 0;
  std::vector<Crossing> crossings;            // by first-visit parameter
  std::vector<GaussEntry> gauss;              // 2 N entries, traversal order
  std::vector<std::array<long, 4>> pd;        // X tuples over edges 1..2N
};

// Builds the diagram of C(a,b,c,phi). When cs is given its per-double-point
// root lists decide every sign exactly; otherwise the recurrence route is
// used. Throws input_error when phi is critical. The local geometry of
// every crossing is cross-checked against the sign rule (certification
// error on mismatch).
KnotDiagram build_diagram(const KnotParams& p, const mpq_class& phi,
                          const CriticalSet* cs = nullptr);

// Laurent polynomial with integer coefficients, used for brackets and Jones
// polynomials. Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly term(const mpz_class& coeff, long exp);
  static LaurentPoly one() { return term(1, 0); }

  bool is_zero() const { return c_.empty(); }
  const std::map<long, mpz_class>& terms() const { return c_; }
  const mpz_class& coeff(long exp) const;
  long min_exp() const;  // requires nonzero
  long max_exp() const;

  void add_term(const mpz_class& coeff, long exp);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }

  // x -> x^-1.
  LaurentPoly invert_variable() const;
  // Value at x = -1 (exponent parity decides each sign).
  mpz_class eval_minus_one() const;
  // Human-readable form like "t^-2 - t^-1 + 1 - t + t^2"; "0" when zero.
  std::string str(const std::string& var) const;

 private:
  std::map<long, mpz_class> c_;
};

// Jones polynomial in t of the diagram's knot: Kauffman bracket by a
// Temperley-Lieb sweep across the billiard columns (state space bounded by
// the a+1 strand stack, never 2^crossings), normalized by the writhe.
// input_error when the crossing count exceeds max_crossings.
LaurentPoly jones(const KnotDiagram& d, long max_crossings = 30);

// |determinant| by the Goeritz matrix of a checkerboard coloring, built
// from the exact planar embedding. Independent of the bracket.
mpz_class goeritz_determinant(const KnotDiagram& d);

// |Jones(-1)|, cross-checked against goeritz_determinant; throws
// certification_error when the two routes disagree.
mpz_class determinant(const KnotDiagram& d, long max_crossings = 30);

// Schubert fraction alpha/beta with alpha > 0, 0 < |beta| < alpha,
// gcd = 1. Two fractions give the same knot type iff alpha matches and the
// betas agree or are inverse mod alpha; the mirror negates beta.
struct TwoBridgeFraction {
  mpz_class alpha = 1;
  mpz_class beta = 0;
  TwoBridgeFraction mirrored() const;
  bool same_type(const TwoBridgeFraction& o) const;
};

// Two-bridge fraction of the diagram, defined when the original first
// parameter is 3 or 4 (the billiard diagram is then a 4-plat in Conway
// normal form): continued-fraction evaluation of the signed twist regions
// read along the grid lines. The numerator always equals the determinant;
// a mismatch throws certification_error. input_error otherwise.
TwoBridgeFraction two_bridge_fraction(const KnotDiagram& d);

// Deterministic renderings of the billiard diagram; under-strands are
// interrupted at every crossing.
std::string render_ascii(const KnotDiagram& d);
std::string render_svg(const KnotDiagram& d);

// JSON form: params, phi, gauss code, pd code, per-crossing data.
std::string to_json(const KnotDiagram& d);

}  // namespace chebknot
