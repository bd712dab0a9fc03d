#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "chebknot/dyadic.hpp"
#include "chebknot/intpoly.hpp"
#include "chebknot/rootiso.hpp"

namespace chebknot {

// Reduced fraction q with cos(q pi) well defined, normalized into [0, 1]
// by periodicity and parity: q -> q mod 2, then q -> 2 - q if q > 1.
struct AngleFraction {
  long num = 0;
  long den = 1;

  // Normalizes n/m (m >= 1) into the canonical form above and reduces.
  static AngleFraction of(long n, long m);

  bool operator==(const AngleFraction& o) const {
    return num == o.num && den == o.den;
  }
  bool operator!=(const AngleFraction& o) const { return !(*this == o); }
};

// Certified enclosure of pi with width <= 2^-prec.
DyInterval pi_enclosure(long prec);

// Certified enclosure of cos(n pi / m) (m >= 1) with width <= 2^-prec,
// computed from the pi enclosure and an interval Taylor series; fully
// independent of the minimal-polynomial machinery.
DyInterval cos_pi_frac_enclosure(long n, long m, long prec);

// cos(q pi) as an exact algebraic number: an exact rational when the
// reduced denominator is 1, 2, or 3, otherwise a certified root of the
// value's minimal polynomial selected by root rank.
class CosValue {
 public:
  const AngleFraction& angle() const { return angle_; }
  const AlgebraicNumber& value() const { return value_; }

  friend CosValue cos_value(long n, long m);
  friend DyInterval enclose(CosValue& c, const Dyadic& acc);

 private:
  AngleFraction angle_;
  AlgebraicNumber value_ = AlgebraicNumber::rational(mpq_class(0));
};

CosValue cos_value(long n, long m);

// Interval of width <= acc containing the value; repeated calls with
// smaller acc return nested intervals (the enclosure only ever shrinks).
DyInterval enclose(CosValue& c, const Dyadic& acc);

// Certified isolating intervals for all roots of minimal_cos_poly(m),
// m >= 4, listed in descending value order, which matches the angles
// k pi / m for k odd, coprime to m, ascending. Cached per m.
const std::vector<DyInterval>& cos_root_table(long m);

// Remainder of p modulo minimal_cos_poly(m), exact in dyadic rationals
// (the leading coefficient of M_m is a power of two). Coefficients are
// lowest-degree first with trailing zeros trimmed; empty means zero.
std::vector<Dyadic> reduce_mod_M(const IntPolynomial& p, long m);

// Integer polynomial in named cosine slots C_1..C_k, each slot bound to
// an AngleFraction. Terms are kept in a canonical exponent-vector map.
class TrigPolyExpr {
 public:
  explicit TrigPolyExpr(std::vector<AngleFraction> slots);
  static TrigPolyExpr constant(std::vector<AngleFraction> slots,
                               mpz_class v);
  static TrigPolyExpr var(std::vector<AngleFraction> slots, size_t i);

  size_t slot_count() const { return slots_.size(); }
  const std::vector<AngleFraction>& slots() const { return slots_; }
  const std::map<std::vector<unsigned>, mpz_class>& terms() const {
    return terms_;
  }
  bool is_zero_polynomial() const { return terms_.empty(); }

  // coeff * prod_i C_i^exps[i]; exps must have one entry per slot.
  void add_term(const mpz_class& coeff, std::vector<unsigned> exps);

  // Operands must be bound to the identical slot vector.
  TrigPolyExpr operator+(const TrigPolyExpr& o) const;
  TrigPolyExpr operator-(const TrigPolyExpr& o) const;
  TrigPolyExpr operator*(const TrigPolyExpr& o) const;

 private:
  std::vector<AngleFraction> slots_;
  std::map<std::vector<unsigned>, mpz_class> terms_;
};

// True iff the real number e evaluates to exactly zero: substitute
// C_i = T_{e_i}(t) with e_i = num_i * (m / den_i), m the lcm of the slot
// denominators, and decide divisibility by M_m. A single-prime modular
// pre-filter rejects most nonzero inputs cheaply; a zero verdict is
// always confirmed by the exact dyadic reduction.
bool formal_null_test(const TrigPolyExpr& e);

// Certified enclosure of the real value of e, width shrinking with prec.
DyInterval eval_enclosure(const TrigPolyExpr& e, long prec);

}  // namespace chebknot
