#include "chebknot/dyadic.hpp"

#include <algorithm>

namespace chebknot {

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  // Strip trailing zero bits so that num is odd; value is preserved.
  mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), tz);
    exp_ += static_cast<long>(tz);
  }
}

Dyadic Dyadic::from_mpq(const mpq_class& q) {
  auto d = try_from_mpq(q);
  if (!d) throw input_error("not a dyadic rational: " + q.get_str());
  return *d;
}

std::optional<Dyadic> Dyadic::try_from_mpq(const mpq_class& q) {
  mpz_class den = q.get_den();
  if (den == 1) return Dyadic(q.get_num(), 0);
  // den > 1: dyadic iff den == 2^k.
  mp_bitcnt_t tz = mpz_scan1(den.get_mpz_t(), 0);
  mpz_class odd;
  mpz_fdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), tz);
  if (odd != 1) return std::nullopt;
  return Dyadic(q.get_num(), -static_cast<long>(tz));
}

mpq_class Dyadic::to_mpq() const {
  mpq_class q(num_);
  if (exp_ >= 0) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(exp_));
    q *= mpq_class(scale);
  } else {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(-exp_));
    q /= mpq_class(scale);
  }
  return q;
}

std::string Dyadic::str() const {
  if (num_ == 0) return "0";
  return num_.get_str() + "*2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(const std::string& text) {
  auto pos = text.find("*2^");
  if (pos == std::string::npos) return Dyadic(mpz_class(text), 0);
  mpz_class num(text.substr(0, pos));
  long exp = std::stol(text.substr(pos + 3));
  return Dyadic(num, exp);
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  long e = std::min(exp_, o.exp_);
  mpz_class a = num_, b = o.num_;
  if (exp_ > e) mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_ - e));
  if (o.exp_ > e) mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(o.exp_ - e));
  return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
  if (is_zero() || o.is_zero()) return Dyadic();
  return Dyadic(num_ * o.num_, exp_ + o.exp_);
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  Dyadic d = a - b;
  return d.sign();
}

int Dyadic::cmp_mpq(const Dyadic& a, const mpq_class& q) {
  // Compare a.num * 2^exp with q.num / q.den via cross multiplication.
  mpz_class lhs = a.num_ * q.get_den();
  mpz_class rhs = q.get_num();
  if (a.exp_ >= 0) {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exp_));
  } else {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-a.exp_));
  }
  return ::cmp(lhs, rhs);
}

Dyadic Dyadic::round_down(long prec) const {
  if (prec < 1) throw certification_error("round_down: prec < 1");
  long nbits = static_cast<long>(bits());
  if (nbits <= prec) return *this;
  long shift = nbits - prec;
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  return Dyadic(q, exp_ + shift);
}

Dyadic Dyadic::round_up(long prec) const {
  if (prec < 1) throw certification_error("round_up: prec < 1");
  long nbits = static_cast<long>(bits());
  if (nbits <= prec) return *this;
  long shift = nbits - prec;
  mpz_class q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  return Dyadic(q, exp_ + shift);
}

Dyadic Dyadic::midpoint(const Dyadic& a, const Dyadic& b) { return (a + b).mul_pow2(-1); }

namespace {

// Scale d = num*2^exp to v = num*2^m with exp-m even and v holding at least
// 2*prec+4 bits, so floor(sqrt(v))*2^{(exp-m)/2} has ~prec+2 correct bits.
void sqrt_scale(const Dyadic& d, long prec, mpz_class& v, long& half_exp) {
  long nbits = static_cast<long>(d.bits());
  long want = 2 * prec + 4;
  long m = want > nbits ? want - nbits : 0;
  if ((d.exp() - m) % 2 != 0) ++m;
  v = d.num();
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(m));
  half_exp = (d.exp() - m) / 2;
}

}  // namespace

Dyadic dyadic_sqrt_down(const Dyadic& d, long prec) {
  if (d.sign() < 0) throw certification_error("sqrt of negative dyadic");
  if (d.is_zero()) return Dyadic();
  mpz_class v;
  long half_exp;
  sqrt_scale(d, prec, v, half_exp);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());  // floor sqrt: r^2 <= v
  return Dyadic(r, half_exp);
}

Dyadic dyadic_sqrt_up(const Dyadic& d, long prec) {
  if (d.sign() < 0) throw certification_error("sqrt of negative dyadic");
  if (d.is_zero()) return Dyadic();
  mpz_class v;
  long half_exp;
  sqrt_scale(d, prec, v, half_exp);
  mpz_class r, rem;
  mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
  if (rem != 0) r += 1;  // ceil
  return Dyadic(r, half_exp);
}

namespace {

// a/b scaled so that the integer quotient carries ~prec+2 bits.
void div_scale(const Dyadic& a, const Dyadic& b, long prec, mpz_class& sa, long& exp_out) {
  long abits = static_cast<long>(a.bits());
  long bbits = static_cast<long>(b.bits());
  long shift = bbits - abits + prec + 2;
  if (shift < 0) shift = 0;
  sa = a.num();
  mpz_mul_2exp(sa.get_mpz_t(), sa.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  exp_out = a.exp() - b.exp() - shift;
}

}  // namespace

Dyadic dyadic_div_down(const Dyadic& a, const Dyadic& b, long prec) {
  if (b.is_zero()) throw certification_error("dyadic division by zero");
  if (a.is_zero()) return Dyadic();
  mpz_class sa;
  long e;
  div_scale(a, b, prec, sa, e);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), sa.get_mpz_t(), b.num().get_mpz_t());
  return Dyadic(q, e);
}

Dyadic dyadic_div_up(const Dyadic& a, const Dyadic& b, long prec) {
  if (b.is_zero()) throw certification_error("dyadic division by zero");
  if (a.is_zero()) return Dyadic();
  mpz_class sa;
  long e;
  div_scale(a, b, prec, sa, e);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), sa.get_mpz_t(), b.num().get_mpz_t());
  return Dyadic(q, e);
}

std::optional<int> DyInterval::definite_sign() const {
  if (hi_.sign() < 0) return -1;
  if (lo_.sign() > 0) return 1;
  if (lo_.is_zero() && hi_.is_zero()) return 0;
  return std::nullopt;
}

DyInterval DyInterval::meet(const DyInterval& a, const DyInterval& b) {
  const Dyadic& lo = std::max(a.lo_, b.lo_);
  const Dyadic& hi = std::min(a.hi_, b.hi_);
  if (lo > hi) throw certification_error("meet of disjoint intervals");
  return DyInterval(lo, hi);
}

DyInterval DyInterval::operator*(const DyInterval& o) const {
  Dyadic p1 = lo_ * o.lo_, p2 = lo_ * o.hi_, p3 = hi_ * o.lo_, p4 = hi_ * o.hi_;
  Dyadic lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Dyadic hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return DyInterval(lo, hi);
}

DyInterval DyInterval::square() const {
  if (lo_.sign() >= 0) return DyInterval(lo_ * lo_, hi_ * hi_);
  if (hi_.sign() <= 0) return DyInterval(hi_ * hi_, lo_ * lo_);
  return DyInterval(Dyadic(), std::max(lo_ * lo_, hi_ * hi_));
}

DyInterval DyInterval::div(const DyInterval& a, const DyInterval& b, long prec) {
  int bs = b.lo_.sign() > 0 ? 1 : (b.hi_.sign() < 0 ? -1 : 0);
  if (bs == 0) throw certification_error("interval division by interval containing zero");
  Dyadic c1 = dyadic_div_down(a.lo_, b.lo_, prec), c2 = dyadic_div_down(a.lo_, b.hi_, prec);
  Dyadic c3 = dyadic_div_down(a.hi_, b.lo_, prec), c4 = dyadic_div_down(a.hi_, b.hi_, prec);
  Dyadic d1 = dyadic_div_up(a.lo_, b.lo_, prec), d2 = dyadic_div_up(a.lo_, b.hi_, prec);
  Dyadic d3 = dyadic_div_up(a.hi_, b.lo_, prec), d4 = dyadic_div_up(a.hi_, b.hi_, prec);
  Dyadic lo = std::min(std::min(c1, c2), std::min(c3, c4));
  Dyadic hi = std::max(std::max(d1, d2), std::max(d3, d4));
  return DyInterval(lo, hi);
}

DyInterval DyInterval::sqrt_nonneg(const DyInterval& a, long prec, bool clamp_negative_lo) {
  Dyadic lo = a.lo_;
  if (lo.sign() < 0) {
    if (!clamp_negative_lo) throw certification_error("sqrt_nonneg: negative lower bound");
    lo = Dyadic();
  }
  if (a.hi_.sign() < 0) throw certification_error("sqrt_nonneg: negative interval");
  return DyInterval(dyadic_sqrt_down(lo, prec), dyadic_sqrt_up(a.hi_, prec));
}

}  // namespace chebknot
