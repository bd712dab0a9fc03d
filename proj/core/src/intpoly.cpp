#include "chebknot/intpoly.hpp"

#include <algorithm>

namespace chebknot {

namespace {
const mpz_class kZero = 0;
}

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::constant(mpz_class v) {
  std::vector<mpz_class> c;
  c.push_back(std::move(v));
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::monomial(mpz_class coeff, size_t degree) {
  std::vector<mpz_class> c(degree + 1, mpz_class(0));
  c[degree] = std::move(coeff);
  return IntPolynomial(std::move(c));
}

const mpz_class& IntPolynomial::operator[](size_t i) const {
  return i < c_.size() ? c_[i] : kZero;
}

const mpz_class& IntPolynomial::leading() const {
  if (c_.empty()) return kZero;
  return c_.back();
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<mpz_class> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return IntPolynomial();
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      mpz_addmul(r[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const mpz_class& k) const {
  if (k == 0) return IntPolynomial();
  std::vector<mpz_class> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::derivative() const {
  if (c_.size() <= 1) return IntPolynomial();
  std::vector<mpz_class> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& q) const {
  IntPolynomial acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * q + constant(c_[i]);
  }
  return acc;
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
  if (divisor.is_zero()) throw certification_error("divide_exact by zero polynomial");
  if (is_zero()) return IntPolynomial();
  long dd = divisor.degree();
  long dn = degree();
  if (dn < dd) throw certification_error("divide_exact: degree underflow");
  std::vector<mpz_class> rem = c_;
  std::vector<mpz_class> quot(dn - dd + 1, mpz_class(0));
  const mpz_class& lc = divisor.leading();
  for (long k = dn - dd; k >= 0; --k) {
    mpz_class& lead = rem[k + dd];
    if (lead == 0) continue;
    if (!mpz_divisible_p(lead.get_mpz_t(), lc.get_mpz_t()))
      throw certification_error("divide_exact: inexact leading division");
    mpz_class q = lead / lc;
    for (long i = 0; i <= dd; ++i) {
      mpz_submul(rem[k + i].get_mpz_t(), q.get_mpz_t(), divisor.c_[i].get_mpz_t());
    }
    quot[k] = std::move(q);
  }
  for (const auto& r : rem) {
    if (r != 0) throw certification_error("divide_exact: nonzero remainder");
  }
  return IntPolynomial(std::move(quot));
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& v : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return IntPolynomial();
  mpz_class g = content();
  std::vector<mpz_class> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::sign_normalized() const {
  IntPolynomial p = primitive_part();
  if (!p.is_zero() && p.leading() < 0) return -p;
  return p;
}

IntPolynomial IntPolynomial::negate_variable() const {
  std::vector<mpz_class> r = c_;
  for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::reverse() const {
  std::vector<mpz_class> r(c_.rbegin(), c_.rend());
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::taylor_shift_1() const {
  std::vector<mpz_class> r = c_;
  long d = degree();
  for (long i = 0; i < d; ++i) {
    for (long j = d - 1; j >= i; --j) {
      r[j] += r[j + 1];
    }
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::scale_pow2(long k) const {
  if (k < 0) throw certification_error("scale_pow2: negative k");
  std::vector<mpz_class> r = c_;
  for (size_t i = 1; i < r.size(); ++i) {
    mpz_mul_2exp(r[i].get_mpz_t(), r[i].get_mpz_t(), static_cast<mp_bitcnt_t>(k * i));
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::unscale_pow2(long k) const {
  if (k < 0) throw certification_error("unscale_pow2: negative k");
  std::vector<mpz_class> r = c_;
  size_t d = r.empty() ? 0 : r.size() - 1;
  for (size_t i = 0; i < r.size(); ++i) {
    mpz_mul_2exp(r[i].get_mpz_t(), r[i].get_mpz_t(), static_cast<mp_bitcnt_t>(k * (d - i)));
  }
  return IntPolynomial(std::move(r));
}

int IntPolynomial::sign_at(const mpq_class& q) const {
  mpz_class v = eval_homogeneous(q.get_num(), q.get_den());
  return sgn(v);
}

int IntPolynomial::sign_at(const Dyadic& d) const {
  return eval_dyadic_exact(d).sign();
}

Dyadic IntPolynomial::eval_dyadic_exact(const Dyadic& x) const {
  Dyadic acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * x + Dyadic(c_[i], 0);
  }
  return acc;
}

DyInterval IntPolynomial::eval_enclosure(const Dyadic& x, long prec) const {
  return eval_enclosure(DyInterval::exact(x), prec);
}

DyInterval IntPolynomial::eval_enclosure(const DyInterval& x, long prec) const {
  DyInterval acc = DyInterval::exact_int(0);
  for (size_t i = c_.size(); i-- > 0;) {
    acc = (acc * x + DyInterval::exact(Dyadic(c_[i], 0))).round_out(prec);
  }
  return acc;
}

mpz_class IntPolynomial::eval_homogeneous(const mpz_class& p, const mpz_class& q) const {
  if (is_zero()) return 0;
  mpz_class acc = c_.back();
  mpz_class qpow = 1;
  for (size_t i = c_.size() - 1; i-- > 0;) {
    qpow *= q;
    acc *= p;
    mpz_addmul(acc.get_mpz_t(), c_[i].get_mpz_t(), qpow.get_mpz_t());
  }
  return acc;
}

int IntPolynomial::sign_variations() const {
  int var = 0;
  int last = 0;
  for (const auto& v : c_) {
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

long IntPolynomial::root_bound_exp2() const {
  long d = degree();
  if (d <= 0) return 0;
  long lc_bits = static_cast<long>(mpz_sizeinbase(c_.back().get_mpz_t(), 2));
  long e = 1;
  for (long i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    long bits = static_cast<long>(mpz_sizeinbase(c_[i].get_mpz_t(), 2));
    e = std::max(e, bits - lc_bits + 2);
  }
  return e;
}

std::string IntPolynomial::str_coeffs() const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ' ';
    out += c_[i].get_str();
  }
  return out;
}

std::string IntPolynomial::str_pretty(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = c_.size(); i-- > 0;) {
    const mpz_class& v = c_[i];
    if (v == 0) continue;
    mpz_class a = abs(v);
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += v < 0 ? " - " : " + ";
    }
    bool unit = (a == 1);
    if (i == 0) {
      out += a.get_str();
    } else {
      if (!unit) out += a.get_str();
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

// One pseudo-remainder step sequence: returns prem(a, b), deg a >= deg b >= 0.
IntPolynomial pseudo_remainder(IntPolynomial a, const IntPolynomial& b) {
  const mpz_class& lc = b.leading();
  while (!a.is_zero() && a.degree() >= b.degree()) {
    long delta = a.degree() - b.degree();
    IntPolynomial t = IntPolynomial::monomial(a.leading(), static_cast<size_t>(delta)) * b;
    a = a * lc - t;
  }
  return a;
}

}  // namespace

IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial u = a.sign_normalized();
  IntPolynomial v = b.sign_normalized();
  if (u.is_zero()) return v;
  if (v.is_zero()) return u;
  if (u.degree() < v.degree()) std::swap(u, v);
  // Primitive pseudo-remainder sequence; cheap modular shortcut first.
  if (poly_gcd_is_one_mod_prime(u, v)) return IntPolynomial::constant(1);
  while (!v.is_zero()) {
    IntPolynomial r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.sign_normalized();
  }
  return u.sign_normalized();
}

namespace {

constexpr unsigned long kPrime = 2305843009213693951UL;  // 2^61 - 1

inline unsigned long mulmod_p(unsigned long a, unsigned long b) {
  return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

inline unsigned long powmod_p(unsigned long a, unsigned long e) {
  unsigned long r = 1;
  while (e) {
    if (e & 1) r = mulmod_p(r, a);
    a = mulmod_p(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<unsigned long> to_fp(const IntPolynomial& p) {
  std::vector<unsigned long> r(p.coeffs().size());
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] = mpz_fdiv_ui(p.coeffs()[i].get_mpz_t(), kPrime);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

}  // namespace

bool poly_gcd_is_one_mod_prime(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return false;
  std::vector<unsigned long> u = to_fp(a), v = to_fp(b);
  // Leading coefficients must survive reduction for degrees to be faithful.
  if (u.size() != a.coeffs().size() || v.size() != b.coeffs().size()) return false;
  while (!v.empty()) {
    // u mod v in F_p.
    unsigned long inv = powmod_p(v.back(), kPrime - 2);
    while (u.size() >= v.size()) {
      unsigned long q = mulmod_p(u.back(), inv);
      size_t off = u.size() - v.size();
      for (size_t i = 0; i < v.size(); ++i) {
        unsigned long sub = mulmod_p(q, v[i]);
        unsigned long& dst = u[off + i];
        dst = dst >= sub ? dst - sub : dst + kPrime - sub;
      }
      while (!u.empty() && u.back() == 0) u.pop_back();
      if (u.empty()) break;
    }
    std::swap(u, v);
  }
  return u.size() == 1;  // nonzero constant
}

}  // namespace chebknot
