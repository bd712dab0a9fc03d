#include "chebknot/critical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "chebknot/errors.hpp"
#include "chebknot/rootiso.hpp"

namespace chebknot {

namespace {

// Starting refinement precision for all certified loops; the formal null
// test fires only once intervals of this-times-2^6 width fail to separate.
constexpr long kStartPrec = 64;
constexpr long kFormalPrec = 4096;

// Pooled cosine values keyed by normalized angle, so every factor sharing
// an angle also shares the refinement work on it.
std::shared_ptr<CosValue> shared_cos(long n, long m) {
  static std::map<std::pair<long, long>, std::shared_ptr<CosValue>> cache;
  AngleFraction f = AngleFraction::of(n, m);
  auto key = std::make_pair(f.num, f.den);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<CosValue>(cos_value(f.num, f.den));
  cache.emplace(key, p);
  return p;
}

DyInterval cos_at(const std::shared_ptr<CosValue>& c, long prec) {
  return enclose(*c, Dyadic::pow2(-prec));
}

// Exact sign of a cosine value; terminates because an inexact cosine is
// irrational, hence nonzero.
int cos_sign(CosValue& c) {
  const auto& ex = c.value().exact();
  if (ex) return sgn(*ex);
  for (long prec = 16;; prec *= 2) {
    auto s = enclose(c, Dyadic::pow2(-prec)).definite_sign();
    if (s && *s != 0) return *s;
  }
}

bool exact_zero_cos(const std::shared_ptr<CosValue>& c) {
  const auto& ex = c->value().exact();
  return ex && sgn(*ex) == 0;
}

mpz_class floor_mpq(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

void validate_params(const KnotParams& p, const char* what) {
  if (p.a < 1 || p.b < 1 || p.c < 1 || p.a % 2 == 0 ||
      std::gcd(p.a, p.b) != 1)
    throw input_error(std::string(what) +
                      ": parameters require a odd, a, b, c >= 1, gcd(a, b) = 1");
}

}  // namespace

// Internal access to QuadraticFactor's shared cosines.
struct FactorAccess {
  static const std::shared_ptr<CosValue>& ca(const QuadraticFactor& q) {
    return q.ca_;
  }
  static const std::shared_ptr<CosValue>& cb(const QuadraticFactor& q) {
    return q.cb_;
  }
  static const std::shared_ptr<CosValue>& cg(const QuadraticFactor& q) {
    return q.cg_;
  }
};

// Internal constructors and field access for CriticalValue. The builders
// establish the representation invariants: a cos_product has a nonzero
// rational coefficient and at least one inexact cosine (so the value is
// certainly irrational), and a quad_root is built only when the factor's
// discriminant is positive and its constant term is nonzero, which the
// construction loop certifies by refining until the discriminant interval
// clears zero.
struct CriticalValueAccess {
  using Kind = CriticalValue::Kind;

  static Kind kind(const CriticalValue& v) { return v.kind_; }
  static const mpq_class& coeff(const CriticalValue& v) { return v.rational_; }
  static const std::vector<std::shared_ptr<CosValue>>& cosines(
      const CriticalValue& v) {
    return v.cosines_;
  }
  static int branch(const CriticalValue& v) { return v.branch_; }
  static const std::shared_ptr<CosValue>& ca(const CriticalValue& v) {
    return v.ca_;
  }
  static const std::shared_ptr<CosValue>& cb(const CriticalValue& v) {
    return v.cb_;
  }
  static const std::shared_ptr<CosValue>& cg(const CriticalValue& v) {
    return v.cg_;
  }
  static AngleFraction alpha(const CriticalValue& v) { return v.alpha_; }
  static AngleFraction beta(const CriticalValue& v) { return v.beta_; }
  static AngleFraction gamma(const CriticalValue& v) { return v.gamma_; }

  static DyInterval rational_interval(const mpq_class& q, long prec) {
    auto d = Dyadic::try_from_mpq(q);
    if (d) return DyInterval::exact(*d);
    return enclose_rational(q, prec);
  }

  static CriticalValue make_rational(const mpq_class& q) {
    CriticalValue v;
    v.kind_ = Kind::rational;
    v.rational_ = q;
    v.prec_ = kStartPrec;
    v.enclosure_ = rational_interval(q, kStartPrec);
    return v;
  }

  // r * prod(cosines); exact cosines are folded into r first, so the stored
  // form is rational or a certified-irrational product.
  static CriticalValue make_cos_product(
      const mpq_class& r, std::vector<std::shared_ptr<CosValue>> cs) {
    mpq_class coeff = r;
    std::vector<std::shared_ptr<CosValue>> irr;
    for (auto& c : cs) {
      const auto& ex = c->value().exact();
      if (ex)
        coeff *= *ex;
      else
        irr.push_back(std::move(c));
    }
    if (sgn(coeff) == 0 || irr.empty()) return make_rational(coeff);
    CriticalValue v;
    v.kind_ = Kind::cos_product;
    v.rational_ = coeff;
    v.cosines_ = std::move(irr);
    v.prec_ = kStartPrec;
    v.enclosure_ = product_interval(v, kStartPrec);
    return v;
  }

  static DyInterval product_interval(const CriticalValue& v, long prec) {
    DyInterval t = rational_interval(v.rational_, prec);
    for (const auto& c : v.cosines_) t = t * cos_at(c, prec);
    return t.round_out(prec + 32);
  }

  // -A + branch*sqrt(A^2 - q) once the discriminant interval clears zero;
  // nullopt while the working precision is still too coarse.
  static std::optional<DyInterval> quad_root_interval(const CriticalValue& v,
                                                      long prec) {
    DyInterval ca = cos_at(v.ca_, prec);
    DyInterval cb = cos_at(v.cb_, prec);
    DyInterval cg2 = cos_at(v.cg_, prec).square();
    DyInterval s = DyInterval::exact_int(1) - cg2;
    if (s.lo().sign() <= 0) return std::nullopt;
    DyInterval n = (ca.square() - cg2) * (cb.square() - cg2);
    DyInterval q = DyInterval::div(n, s, prec + 16);
    DyInterval a = ca * cb;
    DyInterval d = a.square() - q;
    if (d.lo().sign() <= 0) return std::nullopt;
    DyInterval rt = DyInterval::sqrt_nonneg(d, prec + 16, false);
    DyInterval root = (v.branch_ > 0) ? (-a) + rt : (-a) - rt;
    return root.round_out(prec + 32);
  }

  static CriticalValue make_quad_root(const QuadraticFactor& f, int branch) {
    CriticalValue v;
    v.kind_ = Kind::quad_root;
    v.alpha_ = f.alpha();
    v.beta_ = f.beta();
    v.gamma_ = f.gamma();
    v.ca_ = FactorAccess::ca(f);
    v.cb_ = FactorAccess::cb(f);
    v.cg_ = FactorAccess::cg(f);
    v.branch_ = branch;
    for (long prec = kStartPrec;; prec *= 2) {
      auto iv = quad_root_interval(v, prec);
      if (iv) {
        v.prec_ = prec;
        v.enclosure_ = *iv;
        return v;
      }
    }
  }

  static void recompute(CriticalValue& v, long prec) {
    switch (v.kind_) {
      case Kind::rational: {
        if (!Dyadic::try_from_mpq(v.rational_))
          v.enclosure_ =
              DyInterval::meet(v.enclosure_, enclose_rational(v.rational_, prec));
        return;
      }
      case Kind::cos_product: {
        v.enclosure_ = DyInterval::meet(v.enclosure_, product_interval(v, prec));
        return;
      }
      case Kind::quad_root: {
        auto iv = quad_root_interval(v, prec);
        if (iv) v.enclosure_ = DyInterval::meet(v.enclosure_, *iv);
        return;
      }
    }
  }
};

namespace {
using VA = CriticalValueAccess;
}  // namespace

bool CriticalValue::is_rational() const { return kind_ == Kind::rational; }

const mpq_class& CriticalValue::rational() const {
  if (kind_ != Kind::rational)
    throw input_error("CriticalValue: value is not rational");
  return rational_;
}

const DyInterval& CriticalValue::interval() const { return enclosure_; }

const DyInterval& CriticalValue::refine_to(const Dyadic& acc) {
  if (acc.sign() <= 0)
    throw input_error("CriticalValue: accuracy must be positive");
  while (enclosure_.width() > acc) {
    prec_ = prec_ >= kStartPrec ? prec_ * 2 : kStartPrec;
    VA::recompute(*this, prec_);
  }
  return enclosure_;
}

int CriticalValue::sign() {
  if (kind_ == Kind::rational) return sgn(rational_);
  if (kind_ == Kind::cos_product) {
    int s = sgn(rational_);
    for (const auto& c : cosines_) s *= cos_sign(*c);
    return s;
  }
  // A quad_root is a root of a factor with nonzero constant term, so it is
  // itself nonzero and refinement decides the sign.
  for (long prec = kStartPrec;; prec *= 2) {
    auto s = refine_to(Dyadic::pow2(-prec)).definite_sign();
    if (s && *s != 0) return *s;
  }
}

CriticalValue CriticalValue::negated() const {
  CriticalValue r = *this;
  r.enclosure_ = -enclosure_;
  if (kind_ != Kind::quad_root) {
    r.rational_ = -rational_;
    return r;
  }
  // -(-A + s sqrt(D)) is the -s root of the factor with beta replaced by its
  // supplement; the constant term only involves cos^2(beta), so it is the
  // same, and the negated enclosure stays valid for further refinement.
  r.beta_ = AngleFraction::of(beta_.den - beta_.num, beta_.den);
  r.cb_ = shared_cos(r.beta_.num, r.beta_.den);
  r.branch_ = -branch_;
  return r;
}

namespace {

// A cleared-denominator integer polynomial in cosine slots together with the
// pooled cosine values bound to those slots. Every exact comparison in the
// engine reduces to the sign of such an expression.
struct BoundExpr {
  TrigPolyExpr expr;
  std::vector<std::shared_ptr<CosValue>> cos;
};

struct SlotSet {
  std::vector<AngleFraction> slots;
  std::vector<std::shared_ptr<CosValue>> cos;

  size_t add(const std::shared_ptr<CosValue>& c) {
    slots.push_back(c->angle());
    cos.push_back(c);
    return cos.size() - 1;
  }
};

DyInterval ipow_interval(const DyInterval& v, unsigned e) {
  if (e == 0) return DyInterval::exact_int(1);
  if (e == 1) return v;
  if (e % 2 == 0) return ipow_interval(v, e / 2).square();
  return v * ipow_interval(v, e - 1);
}

// Exact interval evaluation over the given slot enclosures: no intermediate
// rounding, so an all-exact input yields the exact point [0,0] when the
// value is zero.
DyInterval eval_slots(const TrigPolyExpr& e,
                      const std::vector<DyInterval>& vals) {
  DyInterval total = DyInterval::exact_int(0);
  for (const auto& [exps, coeff] : e.terms()) {
    DyInterval t = DyInterval::exact(Dyadic(coeff, 0));
    for (size_t s = 0; s < exps.size(); ++s)
      if (exps[s] != 0) t = t * ipow_interval(vals[s], exps[s]);
    total = total + t;
  }
  return total;
}

DyInterval eval_bound(const BoundExpr& be, long prec) {
  std::vector<DyInterval> vals;
  vals.reserve(be.cos.size());
  const Dyadic acc = Dyadic::pow2(-prec);
  for (const auto& c : be.cos) vals.push_back(enclose(*c, acc));
  return eval_slots(be.expr, vals);
}

// Sign of an expression that is provably nonzero; the formal check at the
// escalation cap guards the proof obligation instead of looping forever.
int certified_sign(const BoundExpr& be, const char* what) {
  bool formal_checked = false;
  for (long prec = 32;; prec *= 2) {
    auto s = eval_bound(be, prec).definite_sign();
    if (s && *s != 0) return *s;
    if (s && *s == 0)
      throw certification_error(std::string(what) +
                                ": expression is exactly zero");
    if (!formal_checked && prec >= kFormalPrec) {
      if (formal_null_test(be.expr))
        throw certification_error(std::string(what) +
                                  ": expression is formally zero");
      formal_checked = true;
    }
  }
}

// One quadratic factor as slot data: P(phi) = phi^2 + 2 eps Ca Cb phi + N/s.
// eps = -1 encodes the mirrored (negated-root) view of the factor.
struct QuadSpec {
  std::shared_ptr<CosValue> ca, cb, cg;
  int eps = 1;
};

struct QuadExprs {
  TrigPolyExpr A, s, N;  // A includes eps; s = sin^2 gamma; N = q * s
};

QuadExprs quad_exprs(const std::vector<AngleFraction>& slots, size_t base,
                     int eps) {
  TrigPolyExpr ca = TrigPolyExpr::var(slots, base);
  TrigPolyExpr cb = TrigPolyExpr::var(slots, base + 1);
  TrigPolyExpr cg = TrigPolyExpr::var(slots, base + 2);
  TrigPolyExpr one = TrigPolyExpr::constant(slots, mpz_class(1));
  return QuadExprs{TrigPolyExpr::constant(slots, mpz_class(eps)) * ca * cb,
                   one - cg * cg,
                   (ca * ca - cg * cg) * (cb * cb - cg * cg)};
}

// View of a critical value with an optional exact negation, the form in
// which mirrored roots enter comparisons.
struct View {
  CriticalValue* v = nullptr;
  bool neg = false;
};

VA::Kind view_kind(const View& w) { return VA::kind(*w.v); }

mpq_class view_rational(const View& w) {
  mpq_class q = w.v->rational();
  if (w.neg) q = -q;
  return q;
}

mpq_class view_coeff(const View& w) {
  mpq_class q = VA::coeff(*w.v);
  if (w.neg) q = -q;
  return q;
}

int view_branch(const View& w) {
  return w.neg ? -VA::branch(*w.v) : VA::branch(*w.v);
}

int view_eps(const View& w) { return w.neg ? -1 : 1; }

DyInterval view_interval(const View& w) {
  return w.neg ? -w.v->interval() : w.v->interval();
}

void view_refine(const View& w, const Dyadic& acc) { w.v->refine_to(acc); }

QuadSpec quad_spec(const View& w) {
  return QuadSpec{VA::ca(*w.v), VA::cb(*w.v), VA::cg(*w.v), view_eps(w)};
}

QuadSpec quad_spec(const QuadraticFactor& f) {
  return QuadSpec{FactorAccess::ca(f), FactorAccess::cb(f), FactorAccess::cg(f),
                  1};
}

// value(w) - r for a cos_product view w, cleared by both denominators.
BoundExpr be_prod_minus_rat(const View& w, const mpq_class& r) {
  SlotSet ss;
  for (const auto& c : VA::cosines(*w.v)) ss.add(c);
  mpq_class cf = view_coeff(w);
  TrigPolyExpr e =
      TrigPolyExpr::constant(ss.slots, mpz_class(cf.get_num() * r.get_den()));
  for (size_t s = 0; s < ss.cos.size(); ++s)
    e = e * TrigPolyExpr::var(ss.slots, s);
  e = e - TrigPolyExpr::constant(ss.slots,
                                 mpz_class(r.get_num() * cf.get_den()));
  return BoundExpr{e, ss.cos};
}

// value(x) - value(y) for two cos_product views, cleared.
BoundExpr be_prod_diff(const View& x, const View& y) {
  SlotSet ss;
  std::vector<size_t> ix, iy;
  for (const auto& c : VA::cosines(*x.v)) ix.push_back(ss.add(c));
  for (const auto& c : VA::cosines(*y.v)) iy.push_back(ss.add(c));
  mpq_class cx = view_coeff(x), cy = view_coeff(y);
  TrigPolyExpr ex =
      TrigPolyExpr::constant(ss.slots, mpz_class(cx.get_num() * cy.get_den()));
  for (size_t s : ix) ex = ex * TrigPolyExpr::var(ss.slots, s);
  TrigPolyExpr ey =
      TrigPolyExpr::constant(ss.slots, mpz_class(cy.get_num() * cx.get_den()));
  for (size_t s : iy) ey = ey * TrigPolyExpr::var(ss.slots, s);
  return BoundExpr{ex - ey, ss.cos};
}

// d^2 s P(x) for x = (n/d) * prod: zero iff x is a root of the quadratic.
BoundExpr be_quad_at(const QuadSpec& q, const mpq_class& coeff,
                     const std::vector<std::shared_ptr<CosValue>>& prod) {
  SlotSet ss;
  std::vector<size_t> ip;
  for (const auto& c : prod) ip.push_back(ss.add(c));
  size_t base = ss.add(q.ca);
  ss.add(q.cb);
  ss.add(q.cg);
  QuadExprs g = quad_exprs(ss.slots, base, q.eps);
  TrigPolyExpr prode = TrigPolyExpr::constant(ss.slots, mpz_class(1));
  for (size_t s : ip) prode = prode * TrigPolyExpr::var(ss.slots, s);
  const mpz_class n = coeff.get_num(), d = coeff.get_den();
  TrigPolyExpr e =
      TrigPolyExpr::constant(ss.slots, mpz_class(n * n)) * prode * prode * g.s +
      TrigPolyExpr::constant(ss.slots, mpz_class(2 * n * d)) * prode * g.A *
          g.s +
      TrigPolyExpr::constant(ss.slots, mpz_class(d * d)) * g.N;
  return BoundExpr{e, ss.cos};
}

struct QuadPair {
  SlotSet ss;
  size_t b1 = 0, b2 = 0;
};

QuadPair quad_pair_slots(const QuadSpec& q1, const QuadSpec& q2) {
  QuadPair qp;
  qp.b1 = qp.ss.add(q1.ca);
  qp.ss.add(q1.cb);
  qp.ss.add(q1.cg);
  qp.b2 = qp.ss.add(q2.ca);
  qp.ss.add(q2.cb);
  qp.ss.add(q2.cg);
  return qp;
}

// s1^2 s2^2 Res(P1, P2):
//   (N1 s2 - N2 s1)^2 - 4 (A1 - A2) s1 s2 (N1 A2 s2 - N2 A1 s1).
// Zero iff the two quadratics share a root.
BoundExpr be_resultant(const QuadSpec& q1, const QuadSpec& q2) {
  QuadPair qp = quad_pair_slots(q1, q2);
  QuadExprs g1 = quad_exprs(qp.ss.slots, qp.b1, q1.eps);
  QuadExprs g2 = quad_exprs(qp.ss.slots, qp.b2, q2.eps);
  TrigPolyExpr qd = g1.N * g2.s - g2.N * g1.s;
  TrigPolyExpr pd = g1.A - g2.A;
  TrigPolyExpr four = TrigPolyExpr::constant(qp.ss.slots, mpz_class(4));
  TrigPolyExpr e =
      qd * qd - four * pd * g1.s * g2.s * (g1.N * g2.A * g2.s - g2.N * g1.A * g1.s);
  return BoundExpr{e, qp.ss.cos};
}

BoundExpr be_quad_p_diff(const QuadSpec& q1, const QuadSpec& q2) {
  QuadPair qp = quad_pair_slots(q1, q2);
  QuadExprs g1 = quad_exprs(qp.ss.slots, qp.b1, q1.eps);
  QuadExprs g2 = quad_exprs(qp.ss.slots, qp.b2, q2.eps);
  return BoundExpr{g1.A - g2.A, qp.ss.cos};
}

BoundExpr be_quad_q_diff(const QuadSpec& q1, const QuadSpec& q2) {
  QuadPair qp = quad_pair_slots(q1, q2);
  QuadExprs g1 = quad_exprs(qp.ss.slots, qp.b1, q1.eps);
  QuadExprs g2 = quad_exprs(qp.ss.slots, qp.b2, q2.eps);
  return BoundExpr{g1.N * g2.s - g2.N * g1.s, qp.ss.cos};
}

// Branch identification on a certified shared root: with
//   s1 s2 P2(-A1 + sigma sqrt(D1)) = U + sigma s1 sqrt(D1) W,
//   U = 2 s1 s2 A1^2 - s2 N1 + s1 N2 - 2 A1 A2 s1 s2,  W = 2 s2 (A2 - A1),
// the shared root sits on branch sigma = -sign(U) sign(W) of P1. U and W
// are provably nonzero when exactly one root is shared. W is built without
// the positive factor 2.
int shared_root_branch(const QuadSpec& q1, const QuadSpec& q2) {
  QuadPair qp = quad_pair_slots(q1, q2);
  QuadExprs g1 = quad_exprs(qp.ss.slots, qp.b1, q1.eps);
  QuadExprs g2 = quad_exprs(qp.ss.slots, qp.b2, q2.eps);
  TrigPolyExpr two = TrigPolyExpr::constant(qp.ss.slots, mpz_class(2));
  TrigPolyExpr U = two * g1.s * g2.s * g1.A * g1.A - g2.s * g1.N +
                   g1.s * g2.N - two * g1.A * g2.A * g1.s * g2.s;
  TrigPolyExpr W = g2.s * (g2.A - g1.A);
  BoundExpr ub{U, qp.ss.cos}, wb{W, qp.ss.cos};
  return -certified_sign(ub, "branch identification U") *
         certified_sign(wb, "branch identification W");
}

// Sign of (n/d) prod + eps Ca Cb, cleared by d: locates a known root of a
// quadratic relative to its vertex, which identifies its branch.
int plus_A_sign(const mpq_class& coeff,
                const std::vector<std::shared_ptr<CosValue>>& prod,
                const QuadSpec& q) {
  SlotSet ss;
  std::vector<size_t> ip;
  for (const auto& c : prod) ip.push_back(ss.add(c));
  size_t ia = ss.add(q.ca);
  size_t ib = ss.add(q.cb);
  TrigPolyExpr e = TrigPolyExpr::constant(ss.slots, mpz_class(coeff.get_num()));
  for (size_t s : ip) e = e * TrigPolyExpr::var(ss.slots, s);
  e = e + TrigPolyExpr::constant(ss.slots, mpz_class(q.eps * coeff.get_den())) *
              TrigPolyExpr::var(ss.slots, ia) * TrigPolyExpr::var(ss.slots, ib);
  BoundExpr be{e, ss.cos};
  return certified_sign(be, "branch identification");
}

// Core escalation loop shared by all exact comparisons: the expression is
// zero iff the two values can be equal. Refine both values and the
// expression together; disjoint enclosures or a definite expression sign
// decide distinctness, the exact point [0,0] or a formal zero at the cap
// dispatches to on_zero, and a formal nonzero lets refinement finish the
// separation.
template <class FZero>
bool separate_or(const BoundExpr& be, const View& x, const View& y,
                 FZero on_zero) {
  bool formal_nonzero = false;
  for (long prec = kStartPrec;; prec *= 2) {
    const Dyadic acc = Dyadic::pow2(-prec);
    view_refine(x, acc);
    view_refine(y, acc);
    if (view_interval(x).disjoint_from(view_interval(y))) return false;
    auto s = eval_bound(be, prec).definite_sign();
    if (s && *s != 0) return false;
    if (s && *s == 0) return on_zero();
    if (!formal_nonzero && prec >= kFormalPrec) {
      if (formal_null_test(be.expr)) return on_zero();
      formal_nonzero = true;
    }
  }
}

bool same_angle_triple(const View& x, const View& y) {
  return VA::alpha(*x.v) == VA::alpha(*y.v) && VA::beta(*x.v) == VA::beta(*y.v) &&
         VA::gamma(*x.v) == VA::gamma(*y.v);
}

std::vector<std::pair<long, long>> sorted_angles(const View& w) {
  std::vector<std::pair<long, long>> a;
  for (const auto& c : VA::cosines(*w.v))
    a.emplace_back(c->angle().num, c->angle().den);
  std::sort(a.begin(), a.end());
  return a;
}

// Exact equality of two (possibly negated) critical values.
bool views_equal(const View& x, const View& y) {
  using Kind = VA::Kind;
  Kind kx = view_kind(x), ky = view_kind(y);

  if (kx == Kind::rational && ky == Kind::rational)
    return view_rational(x) == view_rational(y);

  if (kx == Kind::rational || ky == Kind::rational) {
    const View& r = (kx == Kind::rational) ? x : y;
    const View& w = (kx == Kind::rational) ? y : x;
    mpq_class rv = view_rational(r);
    if (view_kind(w) == Kind::cos_product)
      return separate_or(be_prod_minus_rat(w, rv), x, y, [] { return true; });
    QuadSpec qs = quad_spec(w);
    return separate_or(be_quad_at(qs, rv, {}), x, y, [&] {
      // rv is a root of w's factor; it is w iff it lies on w's branch.
      return plus_A_sign(rv, {}, qs) == view_branch(w);
    });
  }

  if (kx == Kind::cos_product && ky == Kind::cos_product) {
    if (sorted_angles(x) == sorted_angles(y))
      return view_coeff(x) == view_coeff(y);
    return separate_or(be_prod_diff(x, y), x, y, [] { return true; });
  }

  if (kx != ky) {
    const View& pw = (kx == Kind::cos_product) ? x : y;
    const View& qw = (kx == Kind::cos_product) ? y : x;
    QuadSpec qs = quad_spec(qw);
    mpq_class cf = view_coeff(pw);
    const auto& prod = VA::cosines(*pw.v);
    return separate_or(be_quad_at(qs, cf, prod), x, y, [&] {
      return plus_A_sign(cf, prod, qs) == view_branch(qw);
    });
  }

  // quad_root vs quad_root.
  QuadSpec q1 = quad_spec(x), q2 = quad_spec(y);
  if (same_angle_triple(x, y)) {
    bool a_zero = exact_zero_cos(q1.ca) || exact_zero_cos(q1.cb);
    if (q1.eps == q2.eps || a_zero)
      return view_branch(x) == view_branch(y);
  }
  return separate_or(be_resultant(q1, q2), x, y, [&] {
    // The factors share a root. Identical polynomials pair roots branch to
    // branch; otherwise exactly one root is shared and both sides must sit
    // on the identified branch.
    if (formal_null_test(be_quad_p_diff(q1, q2).expr) &&
        formal_null_test(be_quad_q_diff(q1, q2).expr))
      return view_branch(x) == view_branch(y);
    return view_branch(x) == shared_root_branch(q1, q2) &&
           view_branch(y) == shared_root_branch(q2, q1);
  });
}

// Exact test value(v) == q, escalating through the formal machinery only
// when enclosures cannot separate them.
bool value_equals_rational(CriticalValue& v, const mpq_class& q) {
  if (v.is_rational()) return v.rational() == q;
  CriticalValue rv = VA::make_rational(q);
  View a{&rv, false}, b{&v, false};
  return views_equal(a, b);
}

}  // namespace

KnotParams KnotParams::make(long a, long b, long c) {
  if (a < 1 || b < 1 || c < 1)
    throw input_error("KnotParams: a, b, c must be >= 1");
  if (std::gcd(a, b) != 1)
    throw input_error("KnotParams: a and b must be coprime");
  KnotParams p;
  if (a % 2 == 0) {
    p.a = b;
    p.b = a;
    p.mirror = true;
  } else {
    p.a = a;
    p.b = b;
    p.mirror = false;
  }
  p.c = c;
  return p;
}

QuadraticFactor build_quadratic(const KnotParams& p, long i, long j, long k) {
  validate_params(p, "build_quadratic");
  if (i < 1 || i > (p.a - 1) / 2)
    throw input_error("build_quadratic: i out of range");
  if (j < 1 || j > p.b - 1) throw input_error("build_quadratic: j out of range");
  if (k < 1 || k > p.c / 2) throw input_error("build_quadratic: k out of range");
  QuadraticFactor q;
  q.a_ = p.a;
  q.b_ = p.b;
  q.c_ = p.c;
  q.i_ = i;
  q.j_ = j;
  q.k_ = k;
  q.degree_ = (2 * k == p.c) ? 1 : 2;
  q.alpha_ = AngleFraction::of(i, p.a);
  q.beta_ = AngleFraction::of(j, p.b);
  q.gamma_ = AngleFraction::of(k, p.c);
  q.ca_ = shared_cos(i, p.a);
  q.cb_ = shared_cos(j, p.b);
  q.cg_ = shared_cos(k, p.c);
  return q;
}

DyInterval QuadraticFactor::linear_coeff(long prec) const {
  if (prec < 1) throw input_error("QuadraticFactor: prec must be >= 1");
  if (degree_ == 1) return DyInterval::exact_int(1);
  const Dyadic tol = Dyadic::pow2(-prec);
  for (long p = prec + 8;; p *= 2) {
    DyInterval r = (cos_at(ca_, p) * cos_at(cb_, p)).mul_pow2(1);
    if (r.width() <= tol) return r;
  }
}

DyInterval QuadraticFactor::constant_term(long prec) const {
  if (prec < 1) throw input_error("QuadraticFactor: prec must be >= 1");
  const Dyadic tol = Dyadic::pow2(-prec);
  if (degree_ == 1) {
    for (long p = prec + 8;; p *= 2) {
      DyInterval r = cos_at(ca_, p) * cos_at(cb_, p);
      if (r.width() <= tol) return r;
    }
  }
  for (long p = prec + 16;; p *= 2) {
    DyInterval cg2 = cos_at(cg_, p).square();
    DyInterval s = DyInterval::exact_int(1) - cg2;
    if (s.lo().sign() <= 0) continue;
    DyInterval n = (cos_at(ca_, p).square() - cg2) * (cos_at(cb_, p).square() - cg2);
    DyInterval r = DyInterval::div(n, s, p);
    if (r.width() <= tol) return r;
  }
}

int discriminant_sign(const QuadraticFactor& q) {
  if (q.degree() != 2)
    throw input_error("discriminant_sign: factor has degree 1");
  // disc * s^2 / 4 = cos^2(gamma) (sin^2 gamma - sin^2 alpha sin^2 beta),
  // and cos(gamma) != 0 in degree 2, so the sign is that of the second
  // factor; it vanishes exactly when sin(beta) = 1 and sin(gamma) =
  // sin(alpha), an arithmetic condition on the indices.
  if (2 * q.j() == q.b() && q.i() * q.c() == q.k() * q.a()) return 0;
  const auto& ca = FactorAccess::ca(q);
  const auto& cb = FactorAccess::cb(q);
  const auto& cg = FactorAccess::cg(q);
  for (long prec = 32;; prec *= 2) {
    DyInterval sa = DyInterval::exact_int(1) - cos_at(ca, prec).square();
    DyInterval sb = DyInterval::exact_int(1) - cos_at(cb, prec).square();
    DyInterval sg = DyInterval::exact_int(1) - cos_at(cg, prec).square();
    auto s = (sg - sa * sb).definite_sign();
    if (s && *s != 0) return *s;
  }
}

std::vector<std::pair<CriticalValue, long>> isolate_quadratic(
    const QuadraticFactor& q, const Dyadic& acc) {
  if (acc.sign() <= 0)
    throw input_error("isolate_quadratic: accuracy must be positive");
  std::vector<std::pair<CriticalValue, long>> out;
  if (q.degree() == 1) {
    // Root -cos(alpha) cos(beta); exactly 0 iff beta = pi/2.
    if (2 * q.j() == q.b())
      out.emplace_back(VA::make_rational(mpq_class(0)), 1);
    else
      out.emplace_back(
          VA::make_cos_product(mpq_class(-1),
                               {FactorAccess::ca(q), FactorAccess::cb(q)}),
          1);
  } else {
    int disc = discriminant_sign(q);
    if (disc == 0) {
      out.emplace_back(VA::make_rational(mpq_class(0)), 2);
    } else if (disc > 0) {
      // The constant term vanishes exactly when gamma matches alpha, beta,
      // or beta's supplement; then the roots are 0 and -2 cos(alpha)cos(beta).
      bool zero_root = q.i() * q.c() == q.k() * q.a() ||
                       q.j() * q.c() == q.k() * q.b() ||
                       (q.b() - q.j()) * q.c() == q.k() * q.b();
      if (zero_root) {
        CriticalValue zero = VA::make_rational(mpq_class(0));
        CriticalValue other = VA::make_cos_product(
            mpq_class(-2), {FactorAccess::ca(q), FactorAccess::cb(q)});
        if (other.sign() < 0) {
          out.emplace_back(std::move(other), 1);
          out.emplace_back(std::move(zero), 1);
        } else {
          out.emplace_back(std::move(zero), 1);
          out.emplace_back(std::move(other), 1);
        }
      } else {
        out.emplace_back(VA::make_quad_root(q, -1), 1);
        out.emplace_back(VA::make_quad_root(q, +1), 1);
      }
    }
  }
  for (auto& [v, m] : out) v.refine_to(acc);
  return out;
}

long zero_multiplicity(const KnotParams& p) {
  validate_params(p, "zero_multiplicity");
  return (p.a - 1) / 2 * (std::gcd(p.b, p.c) - 1) +
         p.b / 2 * (std::gcd(p.a, p.c) - 1);
}

FamilyRelation same_family_relation(const QuadraticFactor& q1,
                                    const QuadraticFactor& q2) {
  if (q1.a() != q2.a() || q1.b() != q2.b() || q1.c() != q2.c() ||
      q1.i() != q2.i() || q1.j() != q2.j())
    throw input_error("same_family_relation: factors must share (a, b, c, i, j)");
  if (q1.k() == q2.k()) return FamilyRelation::identical_case3;
  if (q1.degree() != q2.degree()) return FamilyRelation::distinct;
  const long a = q1.a(), b = q1.b(), c = q1.c(), i = q1.i(), j = q1.j();
  const long k1 = q1.k(), k2 = q2.k();
  // Case 1: one gamma equals alpha and the other equals beta or its
  // supplement.
  auto ga = [&](long k) { return i * c == k * a; };
  auto gb = [&](long k) { return j * c == k * b || (b - j) * c == k * b; };
  if ((ga(k1) && gb(k2)) || (ga(k2) && gb(k1)))
    return FamilyRelation::identical_case1;
  // Case 2: sin(beta) = 1/2 and {gamma_1, gamma_2} = {alpha/2, (pi-alpha)/2}.
  if (6 * j == b || 6 * j == 5 * b) {
    auto h1 = [&](long k) { return 2 * k * a == i * c; };
    auto h2 = [&](long k) { return 2 * k * a == (a - i) * c; };
    if ((h1(k1) && h2(k2)) || (h1(k2) && h2(k1)))
      return FamilyRelation::identical_case2;
  }
  return FamilyRelation::distinct;
}

std::optional<int> resultant_sign_test(const QuadraticFactor& q1,
                                       const QuadraticFactor& q2,
                                       const Dyadic& acc) {
  if (acc.sign() <= 0)
    throw input_error("resultant_sign_test: accuracy must be positive");
  if (q1.a() == q2.a() && q1.b() == q2.b() && q1.c() == q2.c() &&
      q1.i() == q2.i() && q1.j() == q2.j())
    throw input_error("resultant_sign_test: factors belong to the same family");
  // Build the resultant up to positive factors, degree-aware: for two lines
  // it is the root difference, for line/quadratic it is s P2 at the line's
  // root, for two quadratics the cleared form s1^2 s2^2 Res.
  BoundExpr be = [&] {
    if (q1.degree() == 1 && q2.degree() == 1) {
      // (-Ca1 Cb1) - (-Ca2 Cb2), as a product difference.
      SlotSet ss;
      size_t a1 = ss.add(FactorAccess::ca(q1));
      size_t b1 = ss.add(FactorAccess::cb(q1));
      size_t a2 = ss.add(FactorAccess::ca(q2));
      size_t b2 = ss.add(FactorAccess::cb(q2));
      TrigPolyExpr e = TrigPolyExpr::var(ss.slots, a2) *
                           TrigPolyExpr::var(ss.slots, b2) -
                       TrigPolyExpr::var(ss.slots, a1) *
                           TrigPolyExpr::var(ss.slots, b1);
      return BoundExpr{e, ss.cos};
    }
    if (q1.degree() == 1 || q2.degree() == 1) {
      const QuadraticFactor& lin = q1.degree() == 1 ? q1 : q2;
      const QuadraticFactor& quad = q1.degree() == 1 ? q2 : q1;
      return be_quad_at(quad_spec(quad), mpq_class(-1),
                        {FactorAccess::ca(lin), FactorAccess::cb(lin)});
    }
    return be_resultant(quad_spec(q1), quad_spec(q2));
  }();
  const long rprec = std::max<long>(1, -dyadic_log2_upper(acc));
  std::vector<DyInterval> vals;
  vals.reserve(be.cos.size());
  for (const auto& c : be.cos)
    vals.push_back(enclose(*c, acc).round_out(rprec));
  return eval_slots(be.expr, vals).definite_sign();
}

bool coincide(const QuadraticFactor& q1, int root1, const QuadraticFactor& q2,
              int root2) {
  const Dyadic acc = Dyadic::pow2(-kStartPrec);
  auto r1 = isolate_quadratic(q1, acc);
  auto r2 = isolate_quadratic(q2, acc);
  if (root1 < 0 || static_cast<size_t>(root1) >= r1.size())
    throw input_error("coincide: root1 out of range");
  if (root2 < 0 || static_cast<size_t>(root2) >= r2.size())
    throw input_error("coincide: root2 out of range");
  // Exact rationals compare directly; this also covers the one way two
  // non-identical factors of the same family can share a root, the double
  // zero of a quadratic next to the zero of the family's linear factor.
  if (r1[root1].first.is_rational() && r2[root2].first.is_rational())
    return r1[root1].first.rational() == r2[root2].first.rational();
  if (q1.a() == q2.a() && q1.b() == q2.b() && q1.c() == q2.c() &&
      q1.i() == q2.i() && q1.j() == q2.j()) {
    if (q1.k() == q2.k()) return root1 == root2;
    // Same family, same angles alpha and beta: a shared irrational root
    // forces equal discriminants, hence equal constant terms, hence
    // identical polynomials, which pair their roots in order. Everything
    // else is disjoint.
    return same_family_relation(q1, q2) != FamilyRelation::distinct &&
           root1 == root2;
  }
  View x{&r1[root1].first, false}, y{&r2[root2].first, false};
  return views_equal(x, y);
}

namespace {

// One factor-root record during critical-set assembly. Mirrored roots share
// the base value through `neg`, so refinement work and exact symmetry are
// both inherited.
struct Rec {
  std::shared_ptr<CriticalValue> base;
  bool neg = false;
  long mult = 0;
  std::vector<std::array<long, 3>> prov;
  long fi = 0, fj = 0;
};

View rec_view(const Rec& r) {
  return View{r.base.get(), r.neg};
}

// Identity classes of the degree-2 factors of one (i, j) family: k indices
// whose polynomials are identical, detected arithmetically from the three
// identification cases. Returns class representative -> members.
std::map<long, std::vector<long>> family_classes(const KnotParams& p, long i,
                                                 long j) {
  const long kmax = p.c / 2;
  std::vector<long> rep(kmax + 1);
  for (long k = 0; k <= kmax; ++k) rep[k] = k;
  auto find = [&](long k) {
    while (rep[k] != k) k = rep[k] = rep[rep[k]];
    return k;
  };
  auto unite = [&](long x, long y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x > y) std::swap(x, y);
    rep[y] = x;
  };
  auto quad_k = [&](long num, long den) -> long {
    if (num <= 0 || num % den != 0) return 0;
    long k = num / den;
    return (k >= 1 && k <= kmax && 2 * k != p.c) ? k : 0;
  };
  // Case 1: gamma = alpha together with gamma = beta (or its supplement).
  long ka = quad_k(i * p.c, p.a);
  long kb = quad_k(std::min(j, p.b - j) * p.c, p.b);
  if (ka && kb) unite(ka, kb);
  // Case 2: sin(beta) = 1/2 with gamma in {alpha/2, (pi - alpha)/2}.
  if (6 * j == p.b || 6 * j == 5 * p.b) {
    long kh = quad_k(i * p.c, 2 * p.a);
    long kc = quad_k((p.a - i) * p.c, 2 * p.a);
    if (kh && kc) unite(kh, kc);
  }
  std::map<long, std::vector<long>> cls;
  for (long k = 1; k <= kmax; ++k)
    if (2 * k != p.c) cls[find(k)].push_back(k);
  // The linear factor (2k = c), when present, is always its own class.
  if (p.c % 2 == 0) cls[p.c / 2].push_back(p.c / 2);
  return cls;
}

}  // namespace

CriticalSet critical_set(const KnotParams& p, const Dyadic& acc) {
  if (acc.sign() <= 0)
    throw input_error("critical_set: accuracy must be positive");
  validate_params(p, "critical_set");

  const Dyadic start_acc = Dyadic::pow2(-kStartPrec);
  std::vector<Rec> recs;

  // Enumerate base families j <= b/2; families with j > b/2 are the exact
  // mirrors and share the base critical values through neg views.
  for (long i = 1; i <= (p.a - 1) / 2; ++i) {
    for (long j = 1; 2 * j <= p.b; ++j) {
      const bool self_mirror = (2 * j == p.b);
      for (const auto& [krep, members] : family_classes(p, i, j)) {
        QuadraticFactor q = build_quadratic(p, i, j, krep);
        auto roots = isolate_quadratic(q, start_acc);
        const long share = static_cast<long>(members.size());
        auto prov_for = [&](long jj) {
          std::vector<std::array<long, 3>> prov;
          prov.reserve(members.size());
          for (long km : members) prov.push_back({i, jj, km});
          return prov;
        };
        if (self_mirror && roots.size() == 2 && !roots[0].first.is_rational() &&
            !roots[1].first.is_rational()) {
          // beta = pi/2 makes the factor even in phi: represent the negative
          // root as the exact negation of the positive one.
          Rec pos;
          pos.base = std::make_shared<CriticalValue>(std::move(roots[1].first));
          pos.neg = false;
          pos.mult = roots[1].second * share;
          pos.prov = prov_for(j);
          pos.fi = i;
          pos.fj = j;
          Rec negr = pos;
          negr.neg = true;
          negr.mult = roots[0].second * share;
          recs.push_back(std::move(pos));
          recs.push_back(std::move(negr));
          continue;
        }
        for (auto& [val, mult] : roots) {
          Rec r;
          r.base = std::make_shared<CriticalValue>(std::move(val));
          r.neg = false;
          r.mult = mult * share;
          r.prov = prov_for(j);
          r.fi = i;
          r.fj = j;
          if (!self_mirror) {
            Rec mirror = r;
            mirror.neg = true;
            mirror.prov = prov_for(p.b - j);
            mirror.fj = p.b - j;
            recs.push_back(std::move(mirror));
          }
          recs.push_back(std::move(r));
        }
      }
    }
  }

  // Union-find over records; representative = smallest index.
  std::vector<size_t> parent(recs.size());
  for (size_t r = 0; r < parent.size(); ++r) parent[r] = r;
  auto find = [&](size_t r) {
    while (parent[r] != r) r = parent[r] = parent[parent[r]];
    return r;
  };
  auto unite = [&](size_t x, size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x > y) std::swap(x, y);
    parent[y] = x;
  };

  // Exact rational roots merge by value immediately.
  {
    std::map<mpq_class, size_t> first_seen;
    for (size_t r = 0; r < recs.size(); ++r) {
      if (!recs[r].base->is_rational()) continue;
      mpq_class v = view_rational(rec_view(recs[r]));
      auto it = first_seen.find(v);
      if (it == first_seen.end())
        first_seen.emplace(std::move(v), r);
      else
        unite(it->second, r);
    }
  }

  // Merge-and-separate sweep: groups whose enclosures overlap are decided
  // exactly; pairs certified distinct are refined apart.
  std::set<std::pair<size_t, size_t>> known_distinct;
  for (;;) {
    std::map<size_t, std::vector<size_t>> groups;
    for (size_t r = 0; r < recs.size(); ++r) groups[find(r)].push_back(r);

    struct GroupIv {
      DyInterval iv = DyInterval::exact_int(0);
      size_t rep = 0;
    };
    std::vector<GroupIv> gis;
    gis.reserve(groups.size());
    for (const auto& [rep, members] : groups) {
      DyInterval m = view_interval(rec_view(recs[members[0]]));
      for (size_t t = 1; t < members.size(); ++t)
        m = DyInterval::meet(m, view_interval(rec_view(recs[members[t]])));
      gis.push_back(GroupIv{m, rep});
    }
    std::sort(gis.begin(), gis.end(), [](const GroupIv& x, const GroupIv& y) {
      if (x.iv.lo() != y.iv.lo()) return x.iv.lo() < y.iv.lo();
      if (x.iv.hi() != y.iv.hi()) return x.iv.hi() < y.iv.hi();
      return x.rep < y.rep;
    });

    bool merged = false;
    std::set<size_t> overlapping;
    for (size_t u = 0; u < gis.size() && !merged; ++u) {
      for (size_t w = u + 1; w < gis.size(); ++w) {
        if (gis[w].iv.lo() > gis[u].iv.hi()) break;
        overlapping.insert(u);
        overlapping.insert(w);
        auto key = std::minmax(gis[u].rep, gis[w].rep);
        if (known_distinct.count({key.first, key.second})) continue;
        const auto& mu = groups[gis[u].rep];
        const auto& mw = groups[gis[w].rep];
        // Distinct classes of one family never share a root, and two roots
        // of one factor are distinct, so a shared family decides it.
        bool shared_family = false;
        {
          std::set<std::pair<long, long>> fams;
          for (size_t t : mu) fams.emplace(recs[t].fi, recs[t].fj);
          for (size_t t : mw)
            if (fams.count({recs[t].fi, recs[t].fj})) {
              shared_family = true;
              break;
            }
        }
        bool both_rational =
            recs[mu[0]].base->is_rational() && recs[mw[0]].base->is_rational();
        if (shared_family || both_rational) {
          known_distinct.insert({key.first, key.second});
          continue;
        }
        if (views_equal(rec_view(recs[mu[0]]), rec_view(recs[mw[0]]))) {
          unite(gis[u].rep, gis[w].rep);
          known_distinct.clear();
          merged = true;
          break;
        }
        known_distinct.insert({key.first, key.second});
      }
    }
    if (merged) continue;
    if (overlapping.empty()) break;
    // All overlaps are certified distinct: refine them apart.
    for (size_t u : overlapping) {
      Dyadic w = gis[u].iv.width();
      if (w.sign() == 0) continue;
      recs[groups[gis[u].rep][0]].base->refine_to(w.mul_pow2(-1));
    }
  }

  // Final widths: refining one member per group suffices, the group interval
  // is the meet over members.
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t r = 0; r < recs.size(); ++r) groups[find(r)].push_back(r);
  for (const auto& [rep, members] : groups)
    recs[members[0]].base->refine_to(acc);

  struct Assembled {
    DyInterval iv = DyInterval::exact_int(0);
    size_t rep = 0;
  };
  std::vector<Assembled> order;
  order.reserve(groups.size());
  for (const auto& [rep, members] : groups) {
    DyInterval m = view_interval(rec_view(recs[members[0]]));
    for (size_t t = 1; t < members.size(); ++t)
      m = DyInterval::meet(m, view_interval(rec_view(recs[members[t]])));
    order.push_back(Assembled{m, rep});
  }
  std::sort(order.begin(), order.end(),
            [](const Assembled& x, const Assembled& y) {
              return x.iv.lo() < y.iv.lo();
            });
  for (size_t t = 0; t + 1 < order.size(); ++t)
    if (!order[t].iv.disjoint_from(order[t + 1].iv))
      throw certification_error("critical_set: isolating intervals overlap");

  CriticalSet cs;
  cs.params = p;
  cs.roots.reserve(order.size());
  std::vector<size_t> rep_to_index(recs.size(), 0);
  for (size_t idx = 0; idx < order.size(); ++idx) {
    const auto& members = groups[order[idx].rep];
    CriticalRoot cr;
    cr.interval = order[idx].iv;
    // Prefer an exact rational member as the stored value.
    size_t pick = members[0];
    for (size_t t : members)
      if (recs[t].base->is_rational()) {
        pick = t;
        break;
      }
    cr.value = recs[pick].neg ? recs[pick].base->negated() : *recs[pick].base;
    for (size_t t : members) {
      cr.multiplicity += recs[t].mult;
      cr.provenance.insert(cr.provenance.end(), recs[t].prov.begin(),
                           recs[t].prov.end());
    }
    std::sort(cr.provenance.begin(), cr.provenance.end());
    cr.provenance.erase(
        std::unique(cr.provenance.begin(), cr.provenance.end()),
        cr.provenance.end());
    rep_to_index[order[idx].rep] = idx;
    cs.roots.push_back(std::move(cr));
  }

  // Certification cross-checks: multiplicity at zero against the closed
  // formula, the total count bound, and exact symmetry under negation.
  long observed_zero = 0;
  long total = 0;
  for (const auto& r : cs.roots) {
    total += r.multiplicity;
    if (r.value.is_rational() && sgn(r.value.rational()) == 0)
      observed_zero = r.multiplicity;
  }
  cs.zero_mult = zero_multiplicity(p);
  if (observed_zero != cs.zero_mult)
    throw certification_error(
        "critical_set: multiplicity at zero does not match the closed formula");
  if (total > (p.a - 1) * (p.b - 1) * (p.c - 1) / 2)
    throw certification_error(
        "critical_set: total multiplicity exceeds the degree bound");
  const size_t n = cs.roots.size();
  for (size_t idx = 0; idx < n; ++idx) {
    const auto& lhs = cs.roots[idx];
    const auto& rhs = cs.roots[n - 1 - idx];
    if (lhs.interval.lo() != -rhs.interval.hi() ||
        lhs.interval.hi() != -rhs.interval.lo() ||
        lhs.multiplicity != rhs.multiplicity)
      throw certification_error(
          "critical_set: root set is not symmetric under negation");
  }

  // Per-double-point root lists, row-major over (i, j).
  cs.double_points.reserve(static_cast<size_t>((p.a - 1) / 2) * (p.b - 1));
  for (long i = 1; i <= (p.a - 1) / 2; ++i)
    for (long j = 1; j <= p.b - 1; ++j) {
      DoublePointRoots dp;
      dp.i = i;
      dp.j = j;
      cs.double_points.push_back(std::move(dp));
    }
  auto dp_index = [&](long i, long j) {
    return static_cast<size_t>((i - 1) * (p.b - 1) + (j - 1));
  };
  for (size_t idx = 0; idx < order.size(); ++idx) {
    std::map<size_t, long> per_dp;
    for (size_t t : groups[order[idx].rep])
      per_dp[dp_index(recs[t].fi, recs[t].fj)] += recs[t].mult;
    for (const auto& [d, m] : per_dp)
      cs.double_points[d].roots.emplace_back(idx, m);
  }

  sample_points(cs);
  return cs;
}

namespace {

// Keeps the stored interval of an assembled root in sync with its value's
// enclosure while refining.
const DyInterval& root_iv(CriticalRoot& r, const Dyadic& acc) {
  const DyInterval& vi = r.value.refine_to(acc);
  r.interval = DyInterval::meet(r.interval, vi);
  return r.interval;
}

// Largest integer strictly below the root value: the simplest rational in
// the unbounded interval to its left. Hidden exact integers are unmasked by
// the formal equality test once plain refinement stalls.
mpq_class sample_below(CriticalRoot& r) {
  if (r.value.is_rational()) {
    const mpq_class& v = r.value.rational();
    if (sgn(v) > 0) return mpq_class(0);
    mpz_class f = floor_mpq(v);
    if (v == mpq_class(f)) return mpq_class(f - 1);
    return mpq_class(f);
  }
  long rounds = 0;
  for (long prec = kStartPrec;; prec *= 2, ++rounds) {
    const DyInterval& iv = root_iv(r, Dyadic::pow2(-prec));
    if (iv.lo().sign() > 0) return mpq_class(0);
    mpz_class fl = floor_mpq(iv.lo().to_mpq());
    mpz_class fh = floor_mpq(iv.hi().to_mpq());
    if (fl == fh) {
      if (Dyadic::cmp_mpq(iv.lo(), mpq_class(fl)) > 0) return mpq_class(fl);
      if (rounds >= 3 && value_equals_rational(r.value, mpq_class(fl)))
        return mpq_class(fl - 1);
    } else if (rounds >= 3) {
      if (value_equals_rational(r.value, mpq_class(fh)))
        return mpq_class(fh - 1);
    }
  }
}

mpq_class sample_above(CriticalRoot& r) {
  // Mirror of sample_below; the negated root keeps a valid enclosure, so
  // the mirrored search is exact and the samples come out symmetric.
  CriticalRoot m;
  m.value = r.value.negated();
  m.interval = -r.interval;
  mpq_class s = sample_below(m);
  return mpq_class(-s);
}

// Simplest rational strictly between two adjacent roots, certified by the
// agreement of the inner bracket (between the enclosures) and the outer
// bracket (spanning them). A disagreement that refinement cannot retire is
// caused by a root value equal to the outer candidate; the formal equality
// test then pins that endpoint exactly.
mpq_class sample_gap(CriticalRoot& left, CriticalRoot& right) {
  std::optional<mpq_class> uex, vex;
  if (left.value.is_rational()) uex = left.value.rational();
  if (right.value.is_rational()) vex = right.value.rational();
  long rounds = 0;
  for (long prec = kStartPrec;; prec *= 2, ++rounds) {
    const Dyadic acc = Dyadic::pow2(-prec);
    DyInterval li = root_iv(left, acc);
    DyInterval ri = root_iv(right, acc);
    mpq_class u_in = uex ? *uex : li.hi().to_mpq();
    mpq_class v_in = vex ? *vex : ri.lo().to_mpq();
    mpq_class u_out = uex ? *uex : li.lo().to_mpq();
    mpq_class v_out = vex ? *vex : ri.hi().to_mpq();
    mpq_class s_in = simplest_between(u_in, v_in);
    mpq_class s_out = simplest_between(u_out, v_out);
    if (s_in == s_out) return s_in;
    if (rounds >= 3) {
      if (!uex && value_equals_rational(left.value, s_out)) {
        uex = s_out;
        continue;
      }
      if (!vex && value_equals_rational(right.value, s_out)) {
        vex = s_out;
        continue;
      }
    }
  }
}

}  // namespace

std::vector<mpq_class> sample_points(CriticalSet& cs) {
  std::vector<mpq_class> out;
  if (cs.roots.empty()) {
    out.emplace_back(0);
    cs.samples = out;
    return out;
  }
  out.reserve(cs.roots.size() + 1);
  out.push_back(sample_below(cs.roots.front()));
  for (size_t g = 0; g + 1 < cs.roots.size(); ++g)
    out.push_back(sample_gap(cs.roots[g], cs.roots[g + 1]));
  out.push_back(sample_above(cs.roots.back()));
  cs.samples = out;
  return out;
}

mpq_class simplest_between(const mpq_class& u, const mpq_class& v) {
  if (!(u < v)) throw input_error("simplest_between: requires u < v");
  if (sgn(u) < 0 && sgn(v) > 0) return mpq_class(0);
  bool negate = false;
  mpq_class lo = u, hi = v;
  if (sgn(v) <= 0) {
    negate = true;
    lo = -v;
    hi = -u;
  }
  // Continued-fraction walk on [lo, hi) with 0 <= lo < hi: the answer is the
  // Stern-Brocot-first rational of the open interval, which minimizes the
  // denominator and then the numerator. The transform tracks
  // answer = (P y + Q) / (R y + S) across shift-and-invert steps.
  mpz_class P = 1, Q = 0, R = 0, S = 1;
  mpq_class y;
  for (;;) {
    mpz_class fu = floor_mpq(lo);
    mpq_class cand(fu + 1);
    if (cand < hi) {
      y = cand;
      break;
    }
    if (lo == mpq_class(fu)) {
      // Left endpoint is an integer: the interval is (fu, hi) with
      // hi <= fu + 1, so the answer adds the simplest unit fraction.
      mpq_class w = hi - fu;
      mpz_class den = floor_mpq(1 / w) + 1;
      y = mpq_class(fu) + mpq_class(1) / mpq_class(den);
      break;
    }
    mpq_class nlo = 1 / (hi - fu);
    mpq_class nhi = 1 / (lo - fu);
    mpz_class np = P * fu + Q;
    Q = P;
    P = np;
    mpz_class nr = R * fu + S;
    S = R;
    R = nr;
    lo = nlo;
    hi = nhi;
  }
  mpq_class num(P * y.get_num() + Q * y.get_den());
  mpq_class den(R * y.get_num() + S * y.get_den());
  mpq_class res = num / den;
  res.canonicalize();
  return negate ? mpq_class(-res) : res;
}

std::string to_json(const CriticalSet& cs) {
  std::ostringstream o;
  o << "{\"format\":\"chebknot-critical-set\",\"version\":1";
  o << ",\"params\":{\"a\":" << cs.params.a << ",\"b\":" << cs.params.b
    << ",\"c\":" << cs.params.c
    << ",\"mirror\":" << (cs.params.mirror ? "true" : "false") << "}";
  long total = 0;
  for (const auto& r : cs.roots) total += r.multiplicity;
  o << ",\"distinct_count\":" << cs.roots.size();
  o << ",\"count_with_multiplicity\":" << total;
  o << ",\"zero_multiplicity\":" << cs.zero_mult;
  o << ",\"roots\":[";
  for (size_t idx = 0; idx < cs.roots.size(); ++idx) {
    const auto& r = cs.roots[idx];
    if (idx) o << ",";
    o << "{\"lo\":\"" << r.interval.lo().str() << "\",\"hi\":\""
      << r.interval.hi().str() << "\"";
    if (r.value.is_rational())
      o << ",\"exact\":\"" << r.value.rational().get_str() << "\"";
    o << ",\"multiplicity\":" << r.multiplicity << ",\"provenance\":[";
    for (size_t t = 0; t < r.provenance.size(); ++t) {
      if (t) o << ",";
      o << "[" << r.provenance[t][0] << "," << r.provenance[t][1] << ","
        << r.provenance[t][2] << "]";
    }
    o << "]}";
  }
  o << "],\"double_points\":[";
  for (size_t d = 0; d < cs.double_points.size(); ++d) {
    const auto& dp = cs.double_points[d];
    if (d) o << ",";
    o << "{\"i\":" << dp.i << ",\"j\":" << dp.j << ",\"roots\":[";
    for (size_t t = 0; t < dp.roots.size(); ++t) {
      if (t) o << ",";
      o << "[" << dp.roots[t].first << "," << dp.roots[t].second << "]";
    }
    o << "]}";
  }
  o << "],\"samples\":[";
  for (size_t t = 0; t < cs.samples.size(); ++t) {
    if (t) o << ",";
    o << "\"" << cs.samples[t].get_str() << "\"";
  }
  o << "]}";
  return o.str();
}

}  // namespace chebknot
