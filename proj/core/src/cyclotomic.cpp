#include "chebknot/cyclotomic.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "chebknot/chebyshev.hpp"
#include "chebknot/errors.hpp"

namespace chebknot {

namespace {

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw input_error("angle arithmetic overflows");
  return r;
}

}  // namespace

AngleFraction AngleFraction::of(long n, long m) {
  if (m < 1) throw input_error("AngleFraction: denominator must be positive");
  long two_m = checked_mul(2, m);
  long r = n % two_m;
  if (r < 0) r += two_m;
  if (r > m) r = two_m - r;
  long g = std::gcd(r, m);
  return AngleFraction{r / g, m / g};
}

namespace {

// Exact rational brackets [lo, hi] around arctan(1/x) from the alternating
// Taylor series: consecutive partial sums straddle the limit.
void arctan_inv_brackets(long x, long prec, mpq_class& lo, mpq_class& hi) {
  mpq_class sum(0);
  mpq_class prev(0);
  mpz_class xpow(x);  // x^(2j+1)
  mpz_class x2 = mpz_class(x) * x;
  long j = 0;
  while (true) {
    mpz_class d = (2 * j + 1) * xpow;
    mpq_class term = mpq_class(1) / mpq_class(d);
    prev = sum;
    if (j % 2 == 0) sum += term; else sum -= term;
    // Terms decrease strictly, so the limit lies between consecutive
    // partial sums.
    if (j >= 1 &&
        mpz_sizeinbase(d.get_mpz_t(), 2) > static_cast<size_t>(prec + 8))
      break;
    xpow *= x2;
    ++j;
  }
  lo = std::min(sum, prev);
  hi = std::max(sum, prev);
}

struct PiCache {
  std::mutex mu;
  long prec = 0;
  mpq_class lo, hi;
};

PiCache& pi_cache() {
  static PiCache c;
  return c;
}

}  // namespace

DyInterval pi_enclosure(long prec) {
  if (prec < 1) prec = 1;
  PiCache& c = pi_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  if (c.prec < prec + 4) {
    long p = prec + 16;
    // Machin: pi = 16 arctan(1/5) - 4 arctan(1/239).
    mpq_class a5lo, a5hi, a239lo, a239hi;
    arctan_inv_brackets(5, p + 6, a5lo, a5hi);
    arctan_inv_brackets(239, p + 6, a239lo, a239hi);
    c.lo = 16 * a5lo - 4 * a239hi;
    c.hi = 16 * a5hi - 4 * a239lo;
    c.prec = p;
  }
  Dyadic lo = enclose_rational(c.lo, prec + 4).lo();
  Dyadic hi = enclose_rational(c.hi, prec + 4).hi();
  return DyInterval(lo, hi);
}

namespace {

// One Taylor evaluation pass of cos over the interval Y at working
// precision prec; the result is a certified enclosure of cos(y) for every
// y in Y, including the truncation tail.
DyInterval cos_taylor(const DyInterval& Y, long prec) {
  DyInterval acc = DyInterval::exact_int(1);
  DyInterval term = DyInterval::exact_int(1);
  DyInterval y2 = Y.square().round_out(prec);
  long j = 0;
  while (true) {
    ++j;
    term = (term * y2).round_out(prec);
    term = DyInterval::div(term, DyInterval::exact_int((2 * j - 1) * (2 * j)),
                           prec);
    if (j % 2 == 1) acc = acc - term; else acc = acc + term;
    acc = acc.round_out(prec);
    // term is a nonnegative interval: y^2 is clamped at zero by square()
    // and the divisors are positive, so its magnitude is its upper end.
    Dyadic mag = term.hi();
    // Stop once the term is small and the ratio to the next term is <= 1/2,
    // making the omitted tail at most twice the next term's bound.
    if (static_cast<long>(2 * j + 1) * static_cast<long>(2 * j + 2) >= 24 &&
        Dyadic::cmp(mag, Dyadic::pow2(-(prec + 4))) <= 0) {
      DyInterval tail(-mag.mul_pow2(1), mag.mul_pow2(1));
      return (acc + tail).round_out(prec);
    }
    if (j > 200) throw certification_error("cos_taylor: no convergence");
  }
}

}  // namespace

DyInterval cos_pi_frac_enclosure(long n, long m, long prec) {
  if (prec < 1) prec = 1;
  AngleFraction q = AngleFraction::of(n, m);
  if (q.den == 1)
    return DyInterval::exact_int(q.num == 0 ? 1 : -1);
  if (q.den == 2) return DyInterval::exact_int(0);
  for (long p2 = prec + 16;; p2 *= 2) {
    DyInterval pi = pi_enclosure(p2);
    // y = pi * num / den, rounded outward at p2 bits.
    mpq_class ylo = pi.lo().to_mpq() * q.num / q.den;
    mpq_class yhi = pi.hi().to_mpq() * q.num / q.den;
    DyInterval y(enclose_rational(ylo, p2).lo(),
                 enclose_rational(yhi, p2).hi());
    DyInterval r = cos_taylor(y, p2);
    if (Dyadic::cmp(r.width(), Dyadic::pow2(-prec)) <= 0) return r;
  }
}

namespace {

// Odd k in [1, m-1] coprime to m, ascending: the angles k pi / m whose
// cosines are exactly the roots of M_m (descending).
std::vector<long> coprime_odd_residues(long m) {
  std::vector<long> ks;
  for (long k = 1; k < m; k += 2)
    if (std::gcd(k, m) == 1) ks.push_back(k);
  return ks;
}

struct TableCache {
  std::mutex mu;
  std::unordered_map<long, std::vector<DyInterval>> tables;
};

TableCache& table_cache() {
  static TableCache c;
  return c;
}

}  // namespace

const std::vector<DyInterval>& cos_root_table(long m) {
  if (m < 4) throw input_error("cos_root_table: m must be at least 4");
  TableCache& c = table_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto it = c.tables.find(m);
  if (it != c.tables.end()) return it->second;

  const IntPolynomial& M = minimal_cos_poly(m);
  std::vector<long> ks = coprime_odd_residues(m);
  if (static_cast<long>(ks.size()) != M.degree())
    throw certification_error("cos_root_table: root count mismatch");

  for (long prec = 32;; prec *= 2) {
    std::vector<DyInterval> seeds;
    seeds.reserve(ks.size());
    for (long k : ks) seeds.push_back(cos_pi_frac_enclosure(k, m, prec));
    // Seeds are in descending value order (cos decreases on [0, pi]).
    bool ok = true;
    for (size_t i = 0; ok && i + 1 < seeds.size(); ++i)
      if (!(seeds[i].lo() > seeds[i + 1].hi())) ok = false;
    for (size_t i = 0; ok && i < seeds.size(); ++i) {
      int sl = sign_at_point(M, seeds[i].lo());
      int sr = sign_at_point(M, seeds[i].hi());
      if (sl == 0 || sr == 0 || sl == sr) ok = false;
    }
    if (!ok) continue;
    // Each seed contains cos(k pi / m) by construction and at least one
    // root by the sign change; the seeds are pairwise disjoint and there
    // are exactly deg(M_m) of them, so each contains exactly its own root.
    return c.tables.emplace(m, std::move(seeds)).first->second;
  }
}

CosValue cos_value(long n, long m) {
  if (m < 1) throw input_error("cos_value: denominator must be positive");
  CosValue v;
  v.angle_ = AngleFraction::of(n, m);
  long nn = v.angle_.num, mm = v.angle_.den;
  if (mm == 1) {
    v.value_ = AlgebraicNumber::rational(mpq_class(nn == 0 ? 1 : -1));
    return v;
  }
  if (mm == 2) {
    v.value_ = AlgebraicNumber::rational(mpq_class(0));
    return v;
  }
  if (mm == 3) {
    mpq_class half(1, 2);
    v.value_ = AlgebraicNumber::rational(nn == 1 ? half : -half);
    return v;
  }
  const std::vector<DyInterval>& table = cos_root_table(mm);
  std::vector<long> ks = coprime_odd_residues(mm);
  if (nn % 2 == 1) {
    auto pos = std::lower_bound(ks.begin(), ks.end(), nn);
    if (pos == ks.end() || *pos != nn)
      throw certification_error("cos_value: angle missing from root table");
    v.value_ = AlgebraicNumber::root_of(minimal_cos_poly(mm),
                                        table[pos - ks.begin()]);
    return v;
  }
  // Even numerator (denominator odd): cos(n pi/m) = -cos((m-n) pi/m) with
  // m - n odd, so the value is the negated table root and its minimal
  // polynomial is M_m(-t), sign-normalized.
  long k = mm - nn;
  auto pos = std::lower_bound(ks.begin(), ks.end(), k);
  if (pos == ks.end() || *pos != k)
    throw certification_error("cos_value: angle missing from root table");
  IntPolynomial neg =
      minimal_cos_poly(mm).negate_variable().sign_normalized();
  v.value_ = AlgebraicNumber::root_of(neg, -table[pos - ks.begin()]);
  return v;
}

DyInterval enclose(CosValue& c, const Dyadic& acc) {
  if (acc.sign() <= 0)
    throw input_error("enclose: accuracy must be positive");
  c.value_.refine_to(acc);
  return c.value_.interval();
}

namespace {

// lg of a power-of-two leading coefficient; the minimal polynomials all
// have one by construction.
long power_of_two_exponent(const mpz_class& v) {
  if (v <= 0) throw certification_error("reduce_mod_M: leading sign");
  long e = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)) - 1;
  if (mpz_class(mpz_class(1) << static_cast<unsigned long>(e)) != v)
    throw certification_error("reduce_mod_M: leading coefficient not 2^k");
  return e;
}

std::vector<Dyadic> reduce_dyadic_mod(std::vector<Dyadic> r,
                                      const IntPolynomial& M) {
  long dm = M.degree();
  long e = power_of_two_exponent(M.leading());
  while (static_cast<long>(r.size()) > dm) {
    Dyadic q = r.back().mul_pow2(-e);
    size_t off = r.size() - 1 - dm;
    for (long i = 0; i < dm; ++i)
      r[off + i] = r[off + i] - q * Dyadic(M[i], 0);
    r.pop_back();
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  }
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return r;
}

}  // namespace

std::vector<Dyadic> reduce_mod_M(const IntPolynomial& p, long m) {
  if (m < 1) throw input_error("reduce_mod_M: m must be positive");
  const IntPolynomial& M = minimal_cos_poly(m);
  std::vector<Dyadic> r;
  r.reserve(p.degree() + 1);
  for (const mpz_class& c : p.coeffs()) r.emplace_back(c, 0);
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return reduce_dyadic_mod(std::move(r), M);
}

TrigPolyExpr::TrigPolyExpr(std::vector<AngleFraction> slots)
    : slots_(std::move(slots)) {}

TrigPolyExpr TrigPolyExpr::constant(std::vector<AngleFraction> slots,
                                    mpz_class v) {
  TrigPolyExpr e(std::move(slots));
  e.add_term(v, std::vector<unsigned>(e.slots_.size(), 0));
  return e;
}

TrigPolyExpr TrigPolyExpr::var(std::vector<AngleFraction> slots, size_t i) {
  TrigPolyExpr e(std::move(slots));
  if (i >= e.slots_.size()) throw input_error("TrigPolyExpr: slot index");
  std::vector<unsigned> exps(e.slots_.size(), 0);
  exps[i] = 1;
  e.add_term(1, std::move(exps));
  return e;
}

void TrigPolyExpr::add_term(const mpz_class& coeff,
                            std::vector<unsigned> exps) {
  if (exps.size() != slots_.size())
    throw input_error("TrigPolyExpr: exponent arity mismatch");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(std::move(exps), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

TrigPolyExpr TrigPolyExpr::operator+(const TrigPolyExpr& o) const {
  if (slots_ != o.slots_) throw input_error("TrigPolyExpr: slot mismatch");
  TrigPolyExpr r = *this;
  for (const auto& [exps, c] : o.terms_) r.add_term(c, exps);
  return r;
}

TrigPolyExpr TrigPolyExpr::operator-(const TrigPolyExpr& o) const {
  if (slots_ != o.slots_) throw input_error("TrigPolyExpr: slot mismatch");
  TrigPolyExpr r = *this;
  for (const auto& [exps, c] : o.terms_) r.add_term(-c, exps);
  return r;
}

TrigPolyExpr TrigPolyExpr::operator*(const TrigPolyExpr& o) const {
  if (slots_ != o.slots_) throw input_error("TrigPolyExpr: slot mismatch");
  TrigPolyExpr r(slots_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<unsigned> e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(c1 * c2, std::move(e));
    }
  }
  return r;
}

namespace {

// T-basis accumulator modulo M_m: indices are folded with T_(2m+n) = T_n,
// T_(2m-n) = T_n (exact identities) and T_(m-n) = -T_n (valid modulo M_m,
// since cos((m-n)k pi/m) = -cos(nk pi/m) for every odd k).
void fold_index(long m, long& n, int& sign) {
  long two_m = 2 * m;
  n %= two_m;
  if (n < 0) n += two_m;
  if (n > m) n = two_m - n;
  if (2 * n > m) {
    n = m - n;
    sign = -sign;
  }
}

// Substitute C_i = T_(e_i) into the expression and linearize products with
// T_a T_b = (T_(a+b) + T_(|a-b|)) / 2, folding indices along the way. The
// result maps T-indices (<= m/2) to dyadic coefficients.
std::map<long, Dyadic> linearize(const TrigPolyExpr& e, long m,
                                 const std::vector<long>& sub) {
  std::map<long, Dyadic> total;
  for (const auto& [exps, coeff] : e.terms()) {
    std::map<long, Dyadic> cur;
    cur[0] = Dyadic(coeff, 0);
    for (size_t i = 0; i < exps.size(); ++i) {
      for (unsigned rep = 0; rep < exps[i]; ++rep) {
        std::map<long, Dyadic> next;
        for (const auto& [n, c] : cur) {
          Dyadic half = c.mul_pow2(-1);
          long idx1 = n + sub[i];
          long idx2 = std::labs(n - sub[i]);
          for (long idx : {idx1, idx2}) {
            int sign = 1;
            fold_index(m, idx, sign);
            Dyadic add = sign > 0 ? half : -half;
            auto [it, inserted] = next.emplace(idx, add);
            if (!inserted) {
              it->second = it->second + add;
              if (it->second.is_zero()) next.erase(it);
            }
          }
        }
        cur = std::move(next);
      }
    }
    for (const auto& [n, c] : cur) {
      auto [it, inserted] = total.emplace(n, c);
      if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) total.erase(it);
      }
    }
  }
  return total;
}

// Single-prime filter: the same substitution and reduction carried out in
// F_p, p = 2^61 - 1. A nonzero result proves the expression nonzero; zero
// must be confirmed exactly by the caller.
constexpr unsigned long long kPrime = (1ull << 61) - 1;

unsigned long long mulmod(unsigned long long a, unsigned long long b) {
  unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  unsigned long long lo = static_cast<unsigned long long>(t & kPrime);
  unsigned long long hi = static_cast<unsigned long long>(t >> 61);
  unsigned long long s = lo + hi;
  if (s >= kPrime) s -= kPrime;
  return s;
}

unsigned long long powmod(unsigned long long b, unsigned long long e) {
  unsigned long long r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

unsigned long long mod_p(const mpz_class& v) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(kPrime));
  if (r < 0) r += mpz_class(static_cast<unsigned long>(kPrime));
  return r.get_ui();
}

unsigned long long dyadic_mod_p(const Dyadic& d) {
  unsigned long long n = mod_p(d.num());
  long e = d.exp();
  unsigned long long two = 2;
  if (e >= 0) return mulmod(n, powmod(two, static_cast<unsigned long long>(e)));
  unsigned long long inv2 = powmod(two, kPrime - 2);
  return mulmod(n, powmod(inv2, static_cast<unsigned long long>(-e)));
}

// Evaluates whether the linearized T-sum reduces to zero mod (M_m, p).
bool prefilter_zero_mod_p(const std::map<long, Dyadic>& sum,
                          const IntPolynomial& M) {
  if (sum.empty()) return true;
  long nmax = sum.rbegin()->first;
  std::vector<unsigned long long> acc(nmax + 1, 0);
  // Rolling Chebyshev recurrence mod p with accumulation at needed indices.
  std::vector<unsigned long long> prev{1};   // T_0
  std::vector<unsigned long long> curp{0, 1};  // T_1
  auto add_in = [&acc](const std::vector<unsigned long long>& t,
                       unsigned long long c) {
    for (size_t i = 0; i < t.size(); ++i) {
      unsigned long long s = acc[i] + mulmod(t[i], c);
      if (s >= kPrime) s -= kPrime;
      acc[i] = s;
    }
  };
  auto it = sum.begin();
  for (long n = 0; n <= nmax; ++n) {
    const std::vector<unsigned long long>& tn = (n == 0) ? prev : curp;
    if (it != sum.end() && it->first == n) {
      add_in(tn, dyadic_mod_p(it->second));
      ++it;
    }
    if (n >= 1 && n < nmax) {
      // next = 2 x curp - prev
      std::vector<unsigned long long> next(n + 2, 0);
      for (size_t i = 0; i < curp.size(); ++i) {
        unsigned long long v = mulmod(curp[i], 2);
        unsigned long long s = next[i + 1] + v;
        if (s >= kPrime) s -= kPrime;
        next[i + 1] = s;
      }
      for (size_t i = 0; i < prev.size(); ++i) {
        unsigned long long s = next[i] + kPrime - prev[i];
        if (s >= kPrime) s -= kPrime;
        next[i] = s;
      }
      prev = std::move(curp);
      curp = std::move(next);
    }
  }
  // Reduce acc modulo M mod p.
  long dm = M.degree();
  std::vector<unsigned long long> Mp(dm + 1);
  for (long i = 0; i <= dm; ++i) Mp[i] = mod_p(M[i]);
  unsigned long long lcinv = powmod(Mp[dm], kPrime - 2);
  while (static_cast<long>(acc.size()) > dm) {
    unsigned long long q = mulmod(acc.back(), lcinv);
    size_t off = acc.size() - 1 - dm;
    if (q != 0) {
      for (long i = 0; i < dm; ++i) {
        unsigned long long s = acc[off + i] + kPrime - mulmod(q, Mp[i]);
        if (s >= kPrime) s -= kPrime;
        acc[off + i] = s;
      }
    }
    acc.pop_back();
  }
  for (unsigned long long v : acc)
    if (v != 0) return false;
  return true;
}

}  // namespace

bool formal_null_test(const TrigPolyExpr& e) {
  if (e.is_zero_polynomial()) return true;
  mpz_class m_z(1);
  for (const AngleFraction& a : e.slots())
    m_z = lcm(m_z, mpz_class(a.den));
  if (!m_z.fits_slong_p())
    throw input_error("formal_null_test: slot lcm too large");
  long m = m_z.get_si();
  std::vector<long> sub;
  sub.reserve(e.slot_count());
  for (const AngleFraction& a : e.slots())
    sub.push_back(checked_mul(a.num, m / a.den));
  std::map<long, Dyadic> sum = linearize(e, m, sub);
  if (sum.empty()) return true;
  const IntPolynomial& M = minimal_cos_poly(m);
  if (!prefilter_zero_mod_p(sum, M)) return false;
  // Exact confirmation: accumulate sum into a dyadic coefficient vector
  // with a rolling T recurrence, then reduce modulo M_m.
  long nmax = sum.rbegin()->first;
  std::vector<Dyadic> acc(nmax + 1);
  IntPolynomial prev = cheb_T(0);
  IntPolynomial curp = cheb_T(1);
  auto it = sum.begin();
  for (long n = 0; n <= nmax; ++n) {
    const IntPolynomial& tn = (n == 0) ? prev : curp;
    if (it != sum.end() && it->first == n) {
      for (long i = 0; i <= tn.degree(); ++i)
        acc[i] = acc[i] + it->second * Dyadic(tn[i], 0);
      ++it;
    }
    if (n >= 1 && n < nmax) {
      IntPolynomial next = IntPolynomial::monomial(2, 1) * curp - prev;
      prev = std::move(curp);
      curp = std::move(next);
    }
  }
  while (!acc.empty() && acc.back().is_zero()) acc.pop_back();
  std::vector<Dyadic> rem = reduce_dyadic_mod(std::move(acc), M);
  return rem.empty();
}

DyInterval eval_enclosure(const TrigPolyExpr& e, long prec) {
  if (prec < 1) prec = 1;
  std::vector<DyInterval> slots;
  slots.reserve(e.slot_count());
  Dyadic acc_target = Dyadic::pow2(-(prec + 16));
  for (const AngleFraction& a : e.slots()) {
    CosValue c = cos_value(a.num, a.den);
    slots.push_back(enclose(c, acc_target));
  }
  DyInterval total = DyInterval::exact_int(0);
  for (const auto& [exps, coeff] : e.terms()) {
    DyInterval term = DyInterval::exact(Dyadic(coeff, 0));
    for (size_t i = 0; i < exps.size(); ++i)
      for (unsigned rep = 0; rep < exps[i]; ++rep)
        term = (term * slots[i]).round_out(prec + 16);
    total = (total + term).round_out(prec + 16);
  }
  return total;
}

}  // namespace chebknot
