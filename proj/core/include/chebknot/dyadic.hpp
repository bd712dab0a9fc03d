#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "chebknot/errors.hpp"

namespace chebknot {

// Dyadic rational num * 2^exp. Canonical form: num odd or zero (zero has
// exp = 0). Closed under +, -, *, and midpoints; exact by construction.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long v) : num_(v), exp_(0) { normalize(); }  // NOLINT(runtime/explicit)
  Dyadic(mpz_class num, long exp) : num_(std::move(num)), exp_(exp) { normalize(); }

  static Dyadic from_mpq(const mpq_class& q);  // throws input_error unless den is a power of two
  static std::optional<Dyadic> try_from_mpq(const mpq_class& q);

  const mpz_class& num() const { return num_; }
  long exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  mpq_class to_mpq() const;
  // Canonical text form "num*2^exp" ("0" for zero); parse accepts the same
  // plus plain integers.
  std::string str() const;
  static Dyadic parse(const std::string& text);

  // Number of significant bits of num (0 for zero).
  size_t bits() const { return num_ == 0 ? 0 : mpz_sizeinbase(num_.get_mpz_t(), 2); }

  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic mul_pow2(long k) const { return is_zero() ? *this : Dyadic(num_, exp_ + k); }

  bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const { return cmp(*this, o) < 0; }
  bool operator<=(const Dyadic& o) const { return cmp(*this, o) <= 0; }
  bool operator>(const Dyadic& o) const { return cmp(*this, o) > 0; }
  bool operator>=(const Dyadic& o) const { return cmp(*this, o) >= 0; }
  static int cmp(const Dyadic& a, const Dyadic& b);
  // Compare against a rational without materializing a Dyadic.
  static int cmp_mpq(const Dyadic& a, const mpq_class& q);

  // Largest dyadic with at most `prec` significant bits that is <= *this
  // (round_down) or >= *this (round_up). prec >= 1.
  Dyadic round_down(long prec) const;
  Dyadic round_up(long prec) const;

  static Dyadic midpoint(const Dyadic& a, const Dyadic& b);
  // 2^k as a value.
  static Dyadic pow2(long k) { return Dyadic(mpz_class(1), k); }

 private:
  void normalize();
  mpz_class num_;
  long exp_;
};

// Lower/upper dyadic bounds on sqrt(d), d >= 0, accurate to about `prec`
// significant bits. sqrt_down(d) <= sqrt(d) <= sqrt_up(d).
Dyadic dyadic_sqrt_down(const Dyadic& d, long prec);
Dyadic dyadic_sqrt_up(const Dyadic& d, long prec);

// Lower/upper dyadic bounds on a/b (b != 0), accurate to about `prec` bits.
Dyadic dyadic_div_down(const Dyadic& a, const Dyadic& b, long prec);
Dyadic dyadic_div_up(const Dyadic& a, const Dyadic& b, long prec);

// Closed interval [lo, hi] with dyadic endpoints. The basic object of all
// certified numeric work: every operation returns an interval guaranteed to
// contain the exact image, with optional outward rounding to a working
// precision so that bit growth stays linear along recurrences.
class DyInterval {
 public:
  DyInterval() = default;
  DyInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw certification_error("DyInterval: lo > hi");
  }
  static DyInterval exact(const Dyadic& v) { return DyInterval(v, v); }
  static DyInterval exact_int(long v) { return exact(Dyadic(v)); }

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  bool is_point() const { return lo_ == hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const mpq_class& q) const {
    return Dyadic::cmp_mpq(lo_, q) <= 0 && Dyadic::cmp_mpq(hi_, q) >= 0;
  }

  // Definite sign: -1 (hi < 0), +1 (lo > 0), 0 only for the point [0,0];
  // nullopt when the interval straddles zero with positive width.
  std::optional<int> definite_sign() const;

  bool disjoint_from(const DyInterval& o) const { return hi_ < o.lo_ || o.hi_ < lo_; }
  bool overlaps(const DyInterval& o) const { return !disjoint_from(o); }
  // Intersection of two intervals known to contain a common value.
  static DyInterval meet(const DyInterval& a, const DyInterval& b);

  DyInterval operator-() const { return DyInterval(-hi_, -lo_); }
  DyInterval operator+(const DyInterval& o) const { return DyInterval(lo_ + o.lo_, hi_ + o.hi_); }
  DyInterval operator-(const DyInterval& o) const { return DyInterval(lo_ - o.hi_, hi_ - o.lo_); }
  DyInterval operator*(const DyInterval& o) const;
  DyInterval square() const;  // tighter than (*this) * (*this) around zero
  DyInterval mul_pow2(long k) const { return DyInterval(lo_.mul_pow2(k), hi_.mul_pow2(k)); }

  // Quotient; requires the divisor interval to exclude zero.
  static DyInterval div(const DyInterval& a, const DyInterval& b, long prec);
  // Square root; requires lo >= 0 after clamping negative dust produced by
  // outward rounding when the caller certifies the exact value is >= 0.
  static DyInterval sqrt_nonneg(const DyInterval& a, long prec, bool clamp_negative_lo);

  // Outward rounding to at most `prec` significant endpoint bits.
  DyInterval round_out(long prec) const {
    return DyInterval(lo_.round_down(prec), hi_.round_up(prec));
  }

  std::string str() const { return lo_.str() + "/" + hi_.str(); }

 private:
  Dyadic lo_, hi_;
};

}  // namespace chebknot
