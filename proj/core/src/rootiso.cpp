#include "chebknot/rootiso.hpp"

#include <algorithm>

#include "chebknot/errors.hpp"

namespace chebknot {

long dyadic_log2_upper(const Dyadic& d) {
  if (d.is_zero()) throw certification_error("dyadic_log2_upper: zero");
  return d.exp() + static_cast<long>(d.bits());
}

int sign_at_point(const IntPolynomial& p, const Dyadic& x) {
  if (p.is_zero()) return 0;
  if (p.degree() == 0) return sgn(p[0]);
  long coeff_bits = 0;
  for (const mpz_class& c : p.coeffs()) {
    if (c != 0)
      coeff_bits = std::max(
          coeff_bits, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
  }
  // Past this precision an exact Horner evaluation is no more expensive than
  // the enclosure, so stop escalating and decide exactly.
  long exact_cost =
      p.degree() * (static_cast<long>(x.bits()) + 4) + coeff_bits + 64;
  for (long prec = 96;; prec *= 2) {
    auto s = p.eval_enclosure(x, prec).definite_sign();
    if (s) return *s;
    if (prec >= exact_cost) return p.eval_dyadic_exact(x).sign();
  }
}

DyInterval enclose_rational(const mpq_class& q, long prec) {
  auto d = Dyadic::try_from_mpq(q);
  if (d) return DyInterval::exact(*d);
  if (prec < 1) prec = 1;
  mpz_class scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(),
               static_cast<mp_bitcnt_t>(prec));
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  return DyInterval(Dyadic(f, -prec), Dyadic(f + 1, -prec));
}

std::vector<std::pair<IntPolynomial, int>> squarefree_decompose(
    const IntPolynomial& p) {
  if (p.is_zero()) throw input_error("squarefree_decompose: zero polynomial");
  std::vector<std::pair<IntPolynomial, int>> out;
  IntPolynomial f = p.primitive_part().sign_normalized();
  if (f.degree() < 1) return out;
  // cur_i = prod f_j^(j-i+1) over j >= i; s_i = cur_i / gcd(cur_i, cur_i')
  // is the product of the factors of multiplicity >= i, and the factor of
  // exact multiplicity i is s_i / s_(i+1). All divisions are exact over Z
  // because every operand is primitive.
  std::vector<IntPolynomial> s;
  IntPolynomial cur = f;
  while (cur.degree() >= 1) {
    IntPolynomial g = poly_gcd(cur, cur.derivative());
    s.push_back(cur.divide_exact(g));
    cur = g;
  }
  for (size_t i = 0; i < s.size(); ++i) {
    IntPolynomial fac = (i + 1 < s.size()) ? s[i].divide_exact(s[i + 1]) : s[i];
    fac = fac.primitive_part().sign_normalized();
    if (fac.degree() >= 1) out.emplace_back(fac, static_cast<int>(i) + 1);
  }
  IntPolynomial recon = IntPolynomial::constant(1);
  for (const auto& [fac, mult] : out)
    for (int k = 0; k < mult; ++k) recon = recon * fac;
  if (recon.primitive_part().sign_normalized() != f)
    throw certification_error("squarefree_decompose: reconstruction mismatch");
  return out;
}

namespace {

struct Collector {
  std::vector<DyInterval> isolating;  // open intervals, one simple root each
  std::vector<Dyadic> exact_points;   // roots hit exactly at dyadic points
};

// Descartes bound for the open interval (0,1): variations of
// (x+1)^deg * g(1/(x+1)). For square-free g with no roots at the interval
// endpoints the recursion below always reaches counts 0 or 1.
int descartes_01(const IntPolynomial& g) {
  return g.reverse().taylor_shift_1().sign_variations();
}

// Map a binary-subdivision point c / 2^k of (0,1) back to the root variable
// t = 2^(b+1) x - 2^b.
Dyadic node_point(const mpz_class& c, long k, long b) {
  return Dyadic(c, b + 1 - k) - Dyadic::pow2(b);
}

// Emit the var == 1 node spanning (c/2^k, (c+1)/2^k) as an isolating
// interval for f. The node polynomial g never vanishes at the span's
// endpoints, but f itself can: roots of f divided out of g at earlier
// midpoints sit exactly on subdivision points. Such endpoints are moved
// strictly inside the span (bisecting against g, whose unique root marks
// the side to keep) so that the emitted interval carries a valid endpoint
// sign-change certificate for f.
void emit_isolating(const IntPolynomial& f, const IntPolynomial& g,
                    const mpz_class& c, long k, long b, Collector& out) {
  Dyadic l(0), r(1);
  const Dyadic t_scale = Dyadic::pow2(b + 1 - k);
  const Dyadic t_base = node_point(c, k, b);
  auto t_of = [&](const Dyadic& x) { return t_base + x * t_scale; };
  while (f.sign_at(t_of(l)) == 0) {
    Dyadic m = Dyadic::midpoint(l, r);
    int sm = g.sign_at(m);
    if (sm == 0) {
      out.exact_points.push_back(t_of(m));
      return;
    }
    if (sm != g.sign_at(l)) r = m; else l = m;
  }
  while (f.sign_at(t_of(r)) == 0) {
    Dyadic m = Dyadic::midpoint(l, r);
    int sm = g.sign_at(m);
    if (sm == 0) {
      out.exact_points.push_back(t_of(m));
      return;
    }
    if (sm != g.sign_at(r)) l = m; else r = m;
  }
  out.isolating.emplace_back(t_of(l), t_of(r));
}

void vca_recurse(const IntPolynomial& f, const IntPolynomial& g,
                 const mpz_class& c, long k, long b, Collector& out) {
  int v = descartes_01(g);
  if (v == 0) return;
  if (v == 1) {
    emit_isolating(f, g, c, k, b, out);
    return;
  }
  IntPolynomial left = g.unscale_pow2(1);       // g on the left half
  IntPolynomial right = left.taylor_shift_1();  // g on the right half
  mpz_class c2 = c * 2;
  if (right[0] == 0) {
    // Root exactly at the midpoint: record it and divide it out of both
    // children so that no node polynomial ever vanishes at an endpoint.
    out.exact_points.push_back(node_point(c2 + 1, k + 1, b));
    right = right.divide_exact(IntPolynomial::x());
    left = left.divide_exact(IntPolynomial({-1, 1}));
  }
  vca_recurse(f, left, c2, k + 1, b, out);
  vca_recurse(f, right, c2 + 1, k + 1, b, out);
}

// Isolate all real roots of a square-free f (deg >= 1) into `out`.
void isolate_squarefree(const IntPolynomial& f, Collector& out) {
  long b = f.root_bound_exp2();
  mpz_class low = -(mpz_class(1) << static_cast<unsigned long>(b));
  mpz_class scale = mpz_class(1) << static_cast<unsigned long>(b + 1);
  if (f.eval_homogeneous(low, mpz_class(1)) == 0 ||
      f.eval_homogeneous(-low, mpz_class(1)) == 0)
    throw certification_error("isolate: root bound is not strict");
  IntPolynomial g = f.compose(IntPolynomial({low, scale}));
  vca_recurse(f, g, mpz_class(0), 0, b, out);
}

}  // namespace

DyInterval refine(const DyInterval& iv, const IntPolynomial& p,
                  const Dyadic& acc) {
  if (p.is_zero()) throw input_error("refine: zero polynomial");
  if (acc.sign() <= 0) throw input_error("refine: accuracy must be positive");
  Dyadic lo = iv.lo(), hi = iv.hi();
  int sl = sign_at_point(p, lo);
  if (sl == 0) return DyInterval::exact(lo);
  int sr = sign_at_point(p, hi);
  if (sr == 0) return DyInterval::exact(hi);
  if (sl == sr)
    throw certification_error("refine: no sign-change certificate");
  IntPolynomial dp = p.derivative();
  while (hi - lo > acc) {
    // Bisection step: guaranteed halving.
    Dyadic m = Dyadic::midpoint(lo, hi);
    int sm = sign_at_point(p, m);
    if (sm == 0) return DyInterval::exact(m);
    if (sm == sl) lo = m; else hi = m;
    Dyadic w = hi - lo;
    if (w <= acc) break;
    // Interval-Newton step: m2 - p(m2) / p'([lo,hi]), intersected with the
    // bracket. Doubles the number of correct bits once p' is sign-definite.
    long have = std::max<long>(1, -dyadic_log2_upper(w));
    long prec = std::max<long>(96, 2 * have + 64);
    Dyadic m2 = Dyadic::midpoint(lo, hi);
    DyInterval pm = p.eval_enclosure(m2, prec);
    DyInterval dpx = dp.eval_enclosure(DyInterval(lo, hi), prec);
    if (!dpx.definite_sign()) continue;
    DyInterval quot = DyInterval::div(pm, dpx, prec);
    Dyadic nlo = m2 - quot.hi();
    Dyadic nhi = m2 - quot.lo();
    if (nlo < lo) nlo = lo;
    if (nhi > hi) nhi = hi;
    if (nlo > nhi)
      throw certification_error("refine: Newton step lost the root");
    if ((nhi - nlo).mul_pow2(2) > w) continue;  // too little gain
    int s1 = (nlo == lo) ? sl : sign_at_point(p, nlo);
    if (s1 == 0) return DyInterval::exact(nlo);
    int s2 = (nhi == hi) ? sr : sign_at_point(p, nhi);
    if (s2 == 0) return DyInterval::exact(nhi);
    if (s1 != sl || s2 != sr)
      throw certification_error("refine: Newton sign certificate failed");
    lo = nlo;
    hi = nhi;
  }
  return DyInterval(lo, hi);
}

IsolationResult isolate(const IntPolynomial& p, const Dyadic& acc) {
  if (p.is_zero()) throw input_error("isolate: zero polynomial");
  if (acc.sign() <= 0) throw input_error("isolate: accuracy must be positive");
  struct Entry {
    DyInterval iv;
    int mult;
    size_t factor;
  };
  auto decomp = squarefree_decompose(p);
  std::vector<Entry> entries;
  for (size_t fi = 0; fi < decomp.size(); ++fi) {
    const auto& [f, mult] = decomp[fi];
    Collector col;
    isolate_squarefree(f, col);
    for (const Dyadic& pt : col.exact_points)
      entries.push_back({DyInterval::exact(pt), mult, fi});
    for (const DyInterval& iv : col.isolating)
      entries.push_back({refine(iv, f, acc), mult, fi});
  }
  // Separate overlapping intervals across factors (coprime factors cannot
  // share a root, so halving must eventually split every overlap).
  auto by_lo = [](const Entry& a, const Entry& b) {
    if (a.iv.lo() != b.iv.lo()) return a.iv.lo() < b.iv.lo();
    return a.iv.hi() < b.iv.hi();
  };
  bool contested = true;
  while (contested) {
    contested = false;
    std::sort(entries.begin(), entries.end(), by_lo);
    for (size_t i = 0; i + 1 < entries.size(); ++i) {
      Entry& a = entries[i];
      Entry& b = entries[i + 1];
      if (a.iv.disjoint_from(b.iv)) continue;
      if (a.iv.is_point() && b.iv.is_point())
        throw certification_error("isolate: coprime factors share a root");
      contested = true;
      for (Entry* e : {&a, &b}) {
        if (e->iv.is_point()) continue;
        e->iv = refine(e->iv, decomp[e->factor].first,
                       e->iv.width().mul_pow2(-1));
      }
    }
  }
  IsolationResult result;
  for (Entry& e : entries) result.roots.push_back({e.iv, e.mult});
  return result;
}

AlgebraicNumber AlgebraicNumber::rational(const mpq_class& q) {
  AlgebraicNumber a;
  a.exact_ = q;
  a.interval_ = enclose_rational(q, 64);
  return a;
}

AlgebraicNumber AlgebraicNumber::root_of(IntPolynomial defining,
                                         DyInterval isolating) {
  int sl = sign_at_point(defining, isolating.lo());
  int sr = sign_at_point(defining, isolating.hi());
  if (sl == 0 || sr == 0 || sl == sr)
    throw certification_error("root_of: endpoints must exhibit a sign change");
  AlgebraicNumber a;
  a.defining_ = std::move(defining);
  a.interval_ = std::move(isolating);
  return a;
}

void AlgebraicNumber::refine_to(const Dyadic& acc) {
  if (acc.sign() <= 0)
    throw input_error("refine_to: accuracy must be positive");
  if (Dyadic::cmp(interval_.width(), acc) <= 0) return;
  if (exact_) {
    long prec = std::max<long>(8, -dyadic_log2_upper(acc) + 2);
    interval_ = enclose_rational(*exact_, prec);
    return;
  }
  interval_ = refine(interval_, defining_, acc);
  if (interval_.is_point()) exact_ = interval_.lo().to_mpq();
}

int AlgebraicNumber::sign() const {
  if (exact_) return sgn(*exact_);
  if (auto s = interval_.definite_sign()) return *s;
  AlgebraicNumber tmp = *this;
  while (true) {
    tmp.refine_to(tmp.interval_.width().mul_pow2(-8));
    if (tmp.exact_) return sgn(*tmp.exact_);
    if (auto s = tmp.interval_.definite_sign()) return *s;
  }
}

namespace {

int cmp_to_sign(int c) { return c > 0 ? 1 : (c < 0 ? -1 : 0); }

// Shrink a value's enclosure by `bits` binary digits (no-op on points).
void shrink(AlgebraicNumber& v, long bits) {
  if (v.interval().is_point()) return;
  v.refine_to(v.interval().width().mul_pow2(-bits));
}

// Whether the (irrational) value of v is a root of g, where g divides
// v.defining(). v's interval isolates v among the roots of its defining
// polynomial, hence contains at most one root of g, and that root, if
// present, is v itself; a definite endpoint sign change decides membership.
bool is_root_of(AlgebraicNumber& v, const IntPolynomial& g) {
  while (true) {
    if (v.is_exact()) return g.sign_at(*v.exact()) == 0;
    int s1 = sign_at_point(g, v.interval().lo());
    int s2 = sign_at_point(g, v.interval().hi());
    if (s1 != 0 && s2 != 0) return s1 != s2;
    shrink(v, 4);  // an endpoint hit a root of g; move the endpoints
  }
}

int compare_exact(const mpq_class& a, const mpq_class& b) {
  return cmp_to_sign(::cmp(a, b));
}

// Exact vs root-form. The root form usually holds an irrational value, but
// a rational root of the defining polynomial is tolerated: the isolating
// interval contains exactly one root, so q equals the value iff q is a
// defining-polynomial root inside the interval. Unequal values separate
// under refinement.
int compare_rational_root(const mpq_class& q, AlgebraicNumber root,
                          int flip) {
  if (!root.is_exact() && root.interval().contains(q) &&
      root.defining().sign_at(q) == 0)
    return 0;
  while (true) {
    if (root.is_exact()) return flip * compare_exact(q, *root.exact());
    if (Dyadic::cmp_mpq(root.interval().lo(), q) > 0) return flip * -1;
    if (Dyadic::cmp_mpq(root.interval().hi(), q) < 0) return flip * 1;
    shrink(root, 8);
  }
}

}  // namespace

int compare_algebraic(const AlgebraicNumber& x, const AlgebraicNumber& y) {
  AlgebraicNumber a = x, b = y;
  auto order_if_disjoint = [&]() -> std::optional<int> {
    if (!a.interval().disjoint_from(b.interval())) return std::nullopt;
    return a.interval().hi() < b.interval().lo() ? -1 : 1;
  };
  // Cheap separation rounds settle almost every comparison.
  for (int round = 0; round < 6; ++round) {
    if (a.is_exact() && b.is_exact())
      return compare_exact(*a.exact(), *b.exact());
    if (auto o = order_if_disjoint()) return *o;
    shrink(a, 8);
    shrink(b, 8);
  }
  if (auto o = order_if_disjoint()) return *o;
  if (a.is_exact() && b.is_exact())
    return compare_exact(*a.exact(), *b.exact());
  if (a.is_exact()) return compare_rational_root(*a.exact(), b, 1);
  if (b.is_exact()) return compare_rational_root(*b.exact(), a, -1);
  // Two root forms that refuse to separate: decide equality exactly through
  // the gcd of the defining polynomials.
  IntPolynomial g = poly_gcd(a.defining(), b.defining());
  if (g.degree() >= 1 && is_root_of(a, g) && is_root_of(b, g)) {
    // Both are roots of g; equal iff they sit in the same isolating
    // interval of g.
    IsolationResult gr = isolate(g, Dyadic(1, -8));
    auto locate = [&gr](AlgebraicNumber& v) -> size_t {
      while (true) {
        for (size_t i = 0; i < gr.roots.size(); ++i) {
          const DyInterval& J = gr.roots[i].interval;
          if (J.lo() <= v.interval().lo() && v.interval().hi() <= J.hi())
            return i;
        }
        shrink(v, 4);
      }
    };
    size_t ia = locate(a), ib = locate(b);
    if (ia == ib) return 0;
    return ia < ib ? -1 : 1;
  }
  // Distinct values: separation terminates.
  while (true) {
    if (auto o = order_if_disjoint()) return *o;
    shrink(a, 8);
    shrink(b, 8);
    if (a.is_exact() && b.is_exact())
      return compare_exact(*a.exact(), *b.exact());
    if (a.is_exact()) return compare_rational_root(*a.exact(), b, 1);
    if (b.is_exact()) return compare_rational_root(*b.exact(), a, -1);
  }
}

}  // namespace chebknot
