#include "chebknot/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "chebknot/errors.hpp"

namespace chebknot {

namespace {

long checked_mul(long a, long b) {
  long r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw input_error("diagram: parameters too large");
  return r;
}

long checked_add(long a, long b) {
  long r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw input_error("diagram: parameters too large");
  return r;
}

// Compare two folded angles as rationals. Folded angles are in [0, 1] and
// y = cos(angle pi) is strictly decreasing there, so angle order reverses
// value order.
int angle_cmp(const AngleFraction& x, const AngleFraction& y) {
  __int128 l = static_cast<__int128>(x.num) * y.den;
  __int128 r = static_cast<__int128>(y.num) * x.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

// k folded into [0, m] by reflection modulo 2m; equals m * fold(k / m).
long fold_lattice(long k, long m) {
  long two_m = checked_mul(2, m);
  long r = k % two_m;
  if (r < 0) r += two_m;
  return r > m ? two_m - r : r;
}

// Branch index of a passage with folded angle q: the parameter is
// cos(q pi), q strictly inside (0, 1), and the x-monotone branch through it
// is floor(a q).
long branch_of(const AngleFraction& q, long a) {
  return checked_mul(a, q.num) / q.den;
}

// Direction of the traversal (t increasing) through the passage at folded
// angle q, up to positive scale: (sign T_a'(t), sign T_b'(t)) =
// ((-1)^floor(aq), (-1)^floor(bq)). Both floors are exact because aq and bq
// are never integers at a passage (gcd(a, b) = 1 keeps the angles off the
// grid lines of their own family).
std::array<int, 2> passage_dir(const KnotParams& p, const AngleFraction& q) {
  long ma = checked_mul(p.a, q.num) / q.den;
  long mb = checked_mul(p.b, q.num) / q.den;
  return {ma % 2 == 0 ? 1 : -1, mb % 2 == 0 ? 1 : -1};
}

// Counterclockwise slot of a diagonal direction: (1,1) -> 0, (-1,1) -> 1,
// (-1,-1) -> 2, (1,-1) -> 3.
int dir_idx(const std::array<int, 2>& d) {
  if (d[0] > 0) return d[1] > 0 ? 0 : 3;
  return d[1] > 0 ? 1 : 2;
}

DyInterval rational_enclosure(const mpq_class& q, long prec) {
  if (auto d = Dyadic::try_from_mpq(q)) return DyInterval::exact(*d);
  mpz_class scaled = q.get_num() << prec;
  mpz_class lo, hi;
  mpz_fdiv_q(lo.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  return DyInterval(Dyadic(lo, -prec), Dyadic(hi, -prec));
}

// Exact sign of P_{b-a}(s, t) at the double point. With t = cos(alpha +
// beta), s = cos(alpha - beta) one has P_n(s, t) = sin(n alpha) sin(n beta)
// / (sin alpha sin beta); for n = b - a the factors reduce by
// sin((b-a) alpha) = (-1)^i sin(ib pi / a) and sin((b-a) beta) =
// -(-1)^j sin(ja pi / b), so the sign is
// (-1)^(i + j + 1 + floor(ib/a) + floor(ja/b)). The slope of the over
// strand equals this sign times the sign of Q_c, which cross-checks the
// frame computation below through an unrelated identity.
int pba_sign(const KnotParams& p, long i, long j) {
  long e = i + j + 1 + checked_mul(i, p.b) / p.a + checked_mul(j, p.a) / p.b;
  return e % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<DoublePointGeom> double_points(const KnotParams& p) {
  std::vector<DoublePointGeom> out;
  long ab = checked_mul(p.a, p.b);
  for (long i = 1; 2 * i <= p.a - 1; ++i) {
    for (long j = 1; j <= p.b - 1; ++j) {
      DoublePointGeom d;
      d.i = i;
      d.j = j;
      long ja = checked_mul(j, p.a);
      long ib = checked_mul(i, p.b);
      d.qplus = AngleFraction::of(checked_add(ja, ib), ab);
      d.qminus = AngleFraction::of(ja - ib, ab);
      out.push_back(d);
    }
  }
  return out;
}

mpq_class qc_eval(const mpq_class& s_plus_t, const mpq_class& st,
                  const mpq_class& phi, long c) {
  if (c < 0) throw input_error("qc_eval: c must be nonnegative");
  const mpq_class& S = s_plus_t;
  const mpq_class& T = st;
  mpq_class q0 = 0;
  mpq_class q1 = 1;
  mpq_class q2 = 2 * S + 4 * phi;
  mpq_class q3 = 4 * S * S - 4 * T + 12 * phi * S + 12 * phi * phi - 3;
  if (c == 0) return q0;
  if (c == 1) return q1;
  if (c == 2) return q2;
  if (c == 3) return q3;
  mpq_class lin = 2 * (S + 2 * phi);
  mpq_class mid = -2 * (2 * phi * phi + 2 * T + 2 * phi * S + 1);
  for (long n = 4; n <= c; ++n) {
    mpq_class q4 = lin * (q3 + q1) + mid * q2 - q0;
    q0 = q1;
    q1 = q2;
    q2 = q3;
    q3 = q4;
  }
  return q3;
}

DyInterval qc_eval(const DyInterval& s_plus_t, const DyInterval& st,
                   const DyInterval& phi, long c) {
  if (c < 0) throw input_error("qc_eval: c must be nonnegative");
  const DyInterval& S = s_plus_t;
  const DyInterval& T = st;
  DyInterval one = DyInterval::exact_int(1);
  DyInterval q0 = DyInterval::exact_int(0);
  DyInterval q1 = one;
  DyInterval q2 = S.mul_pow2(1) + phi.mul_pow2(2);
  DyInterval q3 = S.square().mul_pow2(2) - T.mul_pow2(2) +
                  (phi * S) * DyInterval::exact_int(12) +
                  phi.square() * DyInterval::exact_int(12) -
                  DyInterval::exact_int(3);
  if (c == 0) return q0;
  if (c == 1) return q1;
  if (c == 2) return q2;
  if (c == 3) return q3;
  DyInterval lin = (S + phi.mul_pow2(1)).mul_pow2(1);
  DyInterval mid =
      -(phi.square().mul_pow2(1) + T.mul_pow2(1) + (phi * S).mul_pow2(1) + one)
           .mul_pow2(1);
  for (long n = 4; n <= c; ++n) {
    DyInterval q4 = lin * (q3 + q1) + mid * q2 - q0;
    q0 = q1;
    q1 = q2;
    q2 = q3;
    q3 = q4;
  }
  return q3;
}

namespace {

// Sign of Q_c at one double point from the critical set: the leading
// coefficient of Q_c in phi is 2^(c-1) c > 0, every real root is a critical
// value of the (i, j) family, and crossing a root of multiplicity mu flips
// the sign mu times, so sign Q_c(phi) = (-1)^(number of family roots
// strictly above phi, counted with multiplicity).
int qc_sign_from_roots(const CriticalSet& cs, const DoublePointRoots& row,
                       const mpq_class& phi) {
  long above = 0;
  for (const auto& entry : row.roots) {
    const CriticalRoot& root = cs.roots[entry.first];
    if (root.value.is_rational()) {
      if (root.value.rational() == phi)
        throw input_error("phi is a critical phase of these parameters");
      if (root.value.rational() > phi) above += entry.second;
      continue;
    }
    if (Dyadic::cmp_mpq(root.interval.lo(), phi) > 0) {
      above += entry.second;
      continue;
    }
    if (Dyadic::cmp_mpq(root.interval.hi(), phi) < 0) continue;
    // phi lies inside the current enclosure: refine a copy until the value
    // separates from phi; it always does, the value being irrational.
    CriticalValue value = root.value;
    Dyadic acc = root.interval.width();
    if (acc.is_zero()) acc = Dyadic::pow2(-64);
    for (;;) {
      acc = acc.mul_pow2(-8);
      const DyInterval& iv = value.refine_to(acc);
      if (Dyadic::cmp_mpq(iv.lo(), phi) > 0) {
        above += entry.second;
        break;
      }
      if (Dyadic::cmp_mpq(iv.hi(), phi) < 0) break;
    }
  }
  return above % 2 == 0 ? 1 : -1;
}

// Sign of Q_c by direct interval evaluation of the recurrence with both
// cosines and phi enclosed ever more tightly. Terminates for every regular
// phi; the precision cap turns a (theoretically impossible) failure into an
// honest error instead of a silent loop.
int qc_sign_numeric(const KnotParams& p, const DoublePointGeom& dp,
                    const mpq_class& phi) {
  long prec = 4 * p.c + 64;
  for (int iter = 0; iter < 24; ++iter) {
    DyInterval t = cos_pi_frac_enclosure(dp.qplus.num, dp.qplus.den, prec);
    DyInterval s = cos_pi_frac_enclosure(dp.qminus.num, dp.qminus.den, prec);
    DyInterval value =
        qc_eval(s + t, s * t, rational_enclosure(phi, prec), p.c);
    if (auto sg = value.definite_sign()) {
      if (*sg == 0)
        throw input_error("phi is a critical phase of these parameters");
      return *sg;
    }
    prec *= 2;
  }
  throw certification_error(
      "crossing_signs: interval refinement failed to certify the sign of Q_c");
}

}  // namespace

std::vector<CrossingSign> crossing_signs(const KnotParams& p,
                                         const mpq_class& phi,
                                         const CriticalSet* cs) {
  if (phi == 0 && zero_multiplicity(p) > 0)
    throw input_error("phi = 0 is a critical phase of these parameters");
  auto dps = double_points(p);
  std::vector<CrossingSign> out(dps.size());
  std::map<std::pair<long, long>, const DoublePointRoots*> rows;
  if (cs) {
    if (cs->params.a != p.a || cs->params.b != p.b || cs->params.c != p.c)
      throw input_error(
          "crossing_signs: critical set belongs to different parameters");
    for (const auto& row : cs->double_points) rows[{row.i, row.j}] = &row;
  }
  for (size_t x = 0; x < dps.size(); ++x) {
    int qc = 0;
    if (cs) {
      auto it = rows.find({dps[x].i, dps[x].j});
      if (it == rows.end())
        throw certification_error(
            "crossing_signs: critical set lacks a double point row");
      qc = qc_sign_from_roots(*cs, *it->second, phi);
    } else {
      qc = qc_sign_numeric(p, dps[x], phi);
    }
    out[x].qc = qc;
    // t = cos(alpha + beta) < s = cos(alpha - beta) always, so the strand
    // with the larger T_c(u + phi) is the s strand exactly when Q_c > 0:
    // T_c(t + phi) - T_c(s + phi) = (t - s) Q_c.
    if (angle_cmp(dps[x].qplus, dps[x].qminus) <= 0)
      throw certification_error("crossing_signs: angle order violated");
    bool t_over = qc < 0;
    std::array<int, 2> d_over =
        passage_dir(p, t_over ? dps[x].qplus : dps[x].qminus);
    std::array<int, 2> d_under =
        passage_dir(p, t_over ? dps[x].qminus : dps[x].qplus);
    // The crossing is positive exactly when the under direction is the
    // over direction rotated a quarter turn counterclockwise.
    out[x].twist =
        d_over[0] * d_under[1] - d_over[1] * d_under[0] > 0 ? 1 : -1;
    if (p.mirror) out[x].twist = -out[x].twist;
    // Independent route to the over slope through the product formula for
    // P_{b-a}: sign(Q_c P_{b-a}) is +1 exactly for a right twist.
    if (d_over[0] * d_over[1] != pba_sign(p, dps[x].i, dps[x].j) * qc)
      throw certification_error(
          "crossing_signs: over slope disagrees with the P_{b-a} identity");
  }
  return out;
}

namespace {

// Branches of the projection ordered bottom to top (by y) on the vertical
// line x = cos(w pi), for a rational w strictly between two grid columns.
// Branch m occupies theta in (m pi / a, (m+1) pi / a); its y there is
// cos of the folded angle b (m + w) / a for even m and b (m + 1 - w) / a
// for odd m. Ascending y is descending folded angle.
std::vector<long> branch_order(const KnotParams& p, long wn, long wd) {
  std::vector<std::pair<AngleFraction, long>> v;
  long awd = checked_mul(p.a, wd);
  for (long m = 0; m < p.a; ++m) {
    long num = m % 2 == 0 ? checked_add(checked_mul(m, wd), wn)
                          : checked_mul(m + 1, wd) - wn;
    v.push_back({AngleFraction::of(checked_mul(p.b, num), awd), m});
  }
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    return angle_cmp(x.first, y.first) > 0;
  });
  for (size_t k = 1; k < v.size(); ++k)
    if (angle_cmp(v[k - 1].first, v[k].first) == 0)
      throw certification_error("diagram: branches collide between columns");
  std::vector<long> order;
  for (const auto& e : v) order.push_back(e.second);
  return order;
}

// Slot of each branch in the full stack of a + 1 strands: the a branches in
// bottom-to-top order plus the closure strand, which runs below the square
// when b is odd (the far tail leaves through the bottom corner) and above
// it when b is even. Returns slots indexed by branch; closure_slot gets the
// remaining slot.
std::vector<long> stack_slots(const KnotParams& p, long wn, long wd,
                              long* closure_slot) {
  std::vector<long> order = branch_order(p, wn, wd);
  std::vector<long> slot(p.a, 0);
  bool closure_bottom = p.b % 2 == 1;
  for (size_t k = 0; k < order.size(); ++k)
    slot[order[k]] = static_cast<long>(k) + (closure_bottom ? 1 : 0);
  if (closure_slot) *closure_slot = closure_bottom ? 0 : p.a;
  return slot;
}

void pair_up(std::vector<int>& m, long x, long y) {
  if (m[x] != -1 || m[y] != -1)
    throw certification_error("diagram: wall matching is not a matching");
  m[x] = static_cast<int>(y);
  m[y] = static_cast<int>(x);
}

void check_noncrossing(const std::vector<int>& m) {
  long n = static_cast<long>(m.size());
  for (long i = 0; i < n; ++i) {
    if (m[i] == -1) throw certification_error("diagram: unmatched wall slot");
    for (long j = i + 1; j < m[i]; ++j)
      if (m[j] > m[i] || m[j] < i)
        throw certification_error("diagram: wall matching is not planar");
  }
}

// Connections made by the left wall (x = -1): the bounce at theta = m pi / a
// with m odd joins branches m-1 and m, and the t = -1 tail (end of branch
// a-1) joins the closure strand.
std::vector<int> left_wall_matching(const KnotParams& p) {
  long closure = 0;
  std::vector<long> slot =
      stack_slots(p, 2 * p.b - 1, checked_mul(2, p.b), &closure);
  std::vector<int> m(p.a + 1, -1);
  for (long odd = 1; odd < p.a; odd += 2) pair_up(m, slot[odd - 1], slot[odd]);
  pair_up(m, slot[p.a - 1], closure);
  check_noncrossing(m);
  return m;
}

// Connections made by the right wall (x = +1): bounces at even m join
// branches m-1 and m, and the t = +1 tail (start of branch 0) joins the
// closure strand.
std::vector<int> right_wall_matching(const KnotParams& p) {
  long closure = 0;
  std::vector<long> slot = stack_slots(p, 1, checked_mul(2, p.b), &closure);
  std::vector<int> m(p.a + 1, -1);
  for (long even = 2; even < p.a; even += 2)
    pair_up(m, slot[even - 1], slot[even]);
  pair_up(m, slot[0], closure);
  check_noncrossing(m);
  return m;
}

}  // namespace

KnotDiagram build_diagram(const KnotParams& p, const mpq_class& phi,
                          const CriticalSet* cs) {
  KnotDiagram d;
  d.params = p;
  d.phi = phi;
  auto dps = double_points(p);
  auto signs = crossing_signs(p, phi, cs);  // also certifies that phi is regular
  const size_t n = dps.size();

  // Traversal: both passages of every double point, ordered by increasing
  // parameter cos(q pi), i.e. by decreasing folded angle.
  struct Passage {
    size_t dp = 0;
    bool is_t = false;
    AngleFraction q;
  };
  std::vector<Passage> visits;
  visits.reserve(2 * n);
  for (size_t x = 0; x < n; ++x) {
    visits.push_back({x, true, dps[x].qplus});
    visits.push_back({x, false, dps[x].qminus});
  }
  std::sort(visits.begin(), visits.end(),
            [](const Passage& x, const Passage& y) {
              return angle_cmp(x.q, y.q) > 0;
            });
  for (size_t v = 1; v < visits.size(); ++v)
    if (angle_cmp(visits[v - 1].q, visits[v].q) == 0)
      throw certification_error("diagram: passage parameters collide");

  // Crossing labels in first-visit order.
  std::vector<long> label_of_dp(n, 0);
  std::vector<std::array<size_t, 2>> visit_of_dp(n, {0, 0});
  std::vector<bool> seen(n, false);
  long next_label = 1;
  for (size_t v = 0; v < visits.size(); ++v) {
    size_t x = visits[v].dp;
    if (!seen[x]) {
      seen[x] = true;
      label_of_dp[x] = next_label++;
      visit_of_dp[x][0] = v;
    } else {
      visit_of_dp[x][1] = v;
    }
  }

  // Geometric column of each crossing: both passages happen at
  // x = cos(u pi / b) with u = fold(ja + ib mod 2b), an interior vertical
  // grid line of the billiard table. This is not j in general.
  std::vector<long> column_of_dp(n, 0);
  for (size_t x = 0; x < n; ++x)
    column_of_dp[x] = fold_lattice(
        checked_add(checked_mul(dps[x].j, p.a), checked_mul(dps[x].i, p.b)),
        p.b);

  // Stack slots of every crossing on its column. Columns are swept left to
  // right (x ascending), so u runs from b-1 down to 1; the branch order
  // just left of column u is taken at w = (2u+1)/(2b) and just right of it
  // at w = (2u-1)/(2b). The order must change exactly by the transpositions
  // of the column's crossings.
  long two_b = checked_mul(2, p.b);
  std::vector<long> stack_pos_of_dp(n, -1);
  for (long u = p.b - 1; u >= 1; --u) {
    std::vector<long> before = stack_slots(p, 2 * u + 1, two_b, nullptr);
    std::vector<long> after = stack_slots(p, 2 * u - 1, two_b, nullptr);
    std::vector<long> expect = before;
    for (size_t x = 0; x < n; ++x) {
      if (column_of_dp[x] != u) continue;
      long mt = branch_of(dps[x].qplus, p.a);
      long ms = branch_of(dps[x].qminus, p.a);
      long st = before[mt];
      long ss = before[ms];
      if (st > ss) std::swap(st, ss);
      if (ss != st + 1)
        throw certification_error(
            "diagram: crossing strands are not adjacent in the stack");
      stack_pos_of_dp[x] = st;
      std::swap(expect[mt], expect[ms]);
    }
    for (long m = 0; m < p.a; ++m)
      if (expect[m] != after[m])
        throw certification_error("diagram: stack order mismatch at a column");
  }

  // Crossing records.
  d.crossings.resize(n);
  for (size_t x = 0; x < n; ++x) {
    Crossing& c = d.crossings[label_of_dp[x] - 1];
    c.label = label_of_dp[x];
    c.i = dps[x].i;
    c.j = dps[x].j;
    c.first_visit = visit_of_dp[x][0];
    c.second_visit = visit_of_dp[x][1];
    c.t_is_first = visits[visit_of_dp[x][0]].is_t;
    c.qc = signs[x].qc;
    c.twist = signs[x].twist;
    c.column = column_of_dp[x];
    c.stack_pos = stack_pos_of_dp[x];
    // t < s always, so T_c(t+phi) - T_c(s+phi) = (t - s) Q_c has the sign
    // opposite to Q_c: the t strand is over exactly when Q_c < 0.
    bool t_over = c.qc < 0;
    c.over_first = (t_over == c.t_is_first);
    const AngleFraction& q_over = t_over ? dps[x].qplus : dps[x].qminus;
    const AngleFraction& q_under = t_over ? dps[x].qminus : dps[x].qplus;
    std::array<int, 2> dir_over = passage_dir(p, q_over);
    std::array<int, 2> dir_under = passage_dir(p, q_under);
    c.over_slope = dir_over[0] * dir_over[1];
    // Tripwire against misplumbing between this record and crossing_signs:
    // recompute the frame sign the stored twist came from.
    int geom = dir_over[0] * dir_under[1] - dir_over[1] * dir_under[0] > 0
                   ? 1
                   : -1;
    if (p.mirror) geom = -geom;
    if (geom != c.twist)
      throw certification_error(
          "diagram: twist sign disagrees with the local geometry");
  }

  // Gauss code.
  d.gauss.resize(2 * n);
  for (size_t v = 0; v < visits.size(); ++v) {
    const Crossing& c = d.crossings[label_of_dp[visits[v].dp] - 1];
    bool first = (v == c.first_visit);
    d.gauss[v] = GaussEntry{c.label, first == c.over_first, c.twist};
  }

  // PD code: edges 1..2N along the traversal, edge 2N closing through
  // infinity; tuples list the incoming under-edge first, then proceed
  // counterclockwise. All local geometry is exact; the mirror reflection
  // swaps the two plane coordinates.
  auto in_edge = [&](size_t v) {
    return v == 0 ? static_cast<long>(2 * n) : static_cast<long>(v);
  };
  auto out_edge = [&](size_t v) { return static_cast<long>(v) + 1; };
  d.pd.resize(n);
  for (const Crossing& c : d.crossings) {
    size_t v_over = c.over_first ? c.first_visit : c.second_visit;
    size_t v_under = c.over_first ? c.second_visit : c.first_visit;
    AngleFraction q_over = visits[v_over].q;
    AngleFraction q_under = visits[v_under].q;
    std::array<int, 2> dir_over = passage_dir(p, q_over);
    std::array<int, 2> dir_under = passage_dir(p, q_under);
    if (p.mirror) {
      std::swap(dir_over[0], dir_over[1]);
      std::swap(dir_under[0], dir_under[1]);
    }
    int base = dir_idx({-dir_under[0], -dir_under[1]});
    int slot1 = (base + 1) % 4;
    int over_in_slot = dir_idx({-dir_over[0], -dir_over[1]});
    int over_out_slot = dir_idx(dir_over);
    if ((over_in_slot + 2) % 4 != over_out_slot ||
        (over_in_slot % 2) == (base % 2))
      throw certification_error("diagram: crossing directions degenerate");
    long ccw1 = over_in_slot == slot1 ? in_edge(v_over) : out_edge(v_over);
    long ccw3 = over_in_slot == slot1 ? out_edge(v_over) : in_edge(v_over);
    d.pd[c.label - 1] = {in_edge(v_under), ccw1, out_edge(v_under), ccw3};
  }
  return d;
}

LaurentPoly LaurentPoly::term(const mpz_class& coeff, long exp) {
  LaurentPoly p;
  if (coeff != 0) p.c_[exp] = coeff;
  return p;
}

const mpz_class& LaurentPoly::coeff(long exp) const {
  static const mpz_class zero = 0;
  auto it = c_.find(exp);
  return it == c_.end() ? zero : it->second;
}

long LaurentPoly::min_exp() const {
  if (c_.empty()) throw input_error("LaurentPoly: zero has no degree");
  return c_.begin()->first;
}

long LaurentPoly::max_exp() const {
  if (c_.empty()) throw input_error("LaurentPoly: zero has no degree");
  return c_.rbegin()->first;
}

void LaurentPoly::add_term(const mpz_class& coeff, long exp) {
  if (coeff == 0) return;
  auto it = c_.find(exp);
  if (it == c_.end()) {
    c_[exp] = coeff;
    return;
  }
  it->second += coeff;
  if (it->second == 0) c_.erase(it);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, v] : o.c_) r.add_term(v, e);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, v] : o.c_) r.add_term(-v, e);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, v1] : c_)
    for (const auto& [e2, v2] : o.c_) r.add_term(v1 * v2, e1 + e2);
  return r;
}

LaurentPoly LaurentPoly::invert_variable() const {
  LaurentPoly r;
  for (const auto& [e, v] : c_) r.c_[-e] = v;
  return r;
}

mpz_class LaurentPoly::eval_minus_one() const {
  mpz_class r = 0;
  for (const auto& [e, v] : c_) r += (e % 2 == 0) ? v : -v;
  return r;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (const auto& [e, v] : c_) {
    mpz_class av = abs(v);
    if (first) {
      if (v < 0) o << "-";
      first = false;
    } else {
      o << (v < 0 ? " - " : " + ");
    }
    if (av != 1 || e == 0) o << av.get_str();
    if (e != 0) {
      o << var;
      if (e != 1) o << "^" << e;
    }
  }
  return o.str();
}

namespace {

using Matching = std::vector<int>;

// delta = -A^2 - A^-2, the value of a closed loop in the bracket.
LaurentPoly bracket_delta() {
  LaurentPoly d;
  d.add_term(-1, 2);
  d.add_term(-1, -2);
  return d;
}

// Number of closed loops obtained by gluing two perfect matchings of the
// same point set.
long matching_cycles(const Matching& m, const Matching& f) {
  std::vector<bool> done(m.size(), false);
  long cycles = 0;
  for (size_t s = 0; s < m.size(); ++s) {
    if (done[s]) continue;
    ++cycles;
    size_t at = s;
    bool use_m = true;
    while (!done[at]) {
      done[at] = true;
      at = static_cast<size_t>(use_m ? m[at] : f[at]);
      use_m = !use_m;
    }
  }
  return cycles;
}

// One Kauffman smoothing step of a crossing between stack slots pos and
// pos+1. When the over strand runs on the +1 diagonal the A-smoothing is
// the cup-cap e_pos and the identity carries A^-1; on the -1 diagonal the
// roles swap.
void apply_crossing(std::map<Matching, LaurentPoly>& state, long pos,
                    int over_slope, const LaurentPoly& delta) {
  std::map<Matching, LaurentPoly> next;
  long e_exp = over_slope > 0 ? 1 : -1;
  LaurentPoly a_id = LaurentPoly::term(1, -e_exp);
  LaurentPoly a_e = LaurentPoly::term(1, e_exp);
  for (const auto& [m, coef] : state) {
    {
      LaurentPoly& slot = next[m];
      slot = slot + coef * a_id;
    }
    if (m[pos] == static_cast<int>(pos + 1)) {
      LaurentPoly& slot = next[m];
      slot = slot + coef * a_e * delta;
    } else {
      Matching m2 = m;
      int x = m2[pos];
      int y = m2[pos + 1];
      m2[x] = y;
      m2[y] = x;
      m2[pos] = static_cast<int>(pos + 1);
      m2[pos + 1] = static_cast<int>(pos);
      LaurentPoly& slot = next[m2];
      slot = slot + coef * a_e;
    }
  }
  state = std::move(next);
}

}  // namespace

LaurentPoly jones(const KnotDiagram& d, long max_crossings) {
  if (static_cast<long>(d.crossings.size()) > max_crossings)
    throw input_error("jones: crossing count exceeds the cutoff");
  const KnotParams& p = d.params;
  LaurentPoly delta = bracket_delta();

  // Kauffman bracket of the canonical-frame diagram by a Temperley-Lieb
  // sweep over the columns: the state is a non-crossing matching of the
  // a + 1 strand slots with a Laurent coefficient.
  std::map<Matching, LaurentPoly> state;
  state[left_wall_matching(p)] = LaurentPoly::one();
  std::vector<std::vector<const Crossing*>> by_column(p.b);
  for (const Crossing& c : d.crossings) by_column[c.column].push_back(&c);
  for (long u = p.b - 1; u >= 1; --u)
    for (const Crossing* c : by_column[u])
      apply_crossing(state, c->stack_pos, c->over_slope, delta);
  Matching rightw = right_wall_matching(p);
  LaurentPoly bracket;
  for (const auto& [m, coef] : state) {
    long loops = matching_cycles(m, rightw);
    LaurentPoly weight = LaurentPoly::one();
    for (long t = 1; t < loops; ++t) weight = weight * delta;
    bracket = bracket + coef * weight;
  }

  // The stored twists already carry the mirror flag; the bracket of the
  // mirror image is the bracket in A^-1.
  if (p.mirror) bracket = bracket.invert_variable();
  long w = 0;
  for (const Crossing& c : d.crossings) w += c.twist;

  // f = (-A)^(-3w) * bracket, then t = A^-4.
  LaurentPoly f;
  for (const auto& [e, v] : bracket.terms())
    f.add_term(w % 2 == 0 ? v : -v, e - 3 * w);
  LaurentPoly out;
  for (const auto& [e, v] : f.terms()) {
    if (e % 4 != 0)
      throw certification_error("jones: bracket exponent not divisible by 4");
    out.add_term(v, -e / 4);
  }
  return out;
}

namespace {

mpz_class bareiss_abs_det(std::vector<std::vector<mpz_class>> m) {
  size_t k = m.size();
  if (k == 0) return 1;
  mpz_class prev = 1;
  for (size_t i = 0; i + 1 < k; ++i) {
    if (m[i][i] == 0) {
      size_t r = i + 1;
      while (r < k && m[r][i] == 0) ++r;
      if (r == k) return 0;
      std::swap(m[i], m[r]);
    }
    for (size_t r = i + 1; r < k; ++r)
      for (size_t c = i + 1; c < k; ++c) {
        mpz_class num = m[r][c] * m[i][i] - m[r][i] * m[i][c];
        mpz_divexact(m[r][c].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[i][i];
  }
  return abs(m[k - 1][k - 1]);
}

}  // namespace

mpz_class goeritz_determinant(const KnotDiagram& d) {
  const size_t n = d.crossings.size();
  if (n == 0) return 1;
  const KnotParams& p = d.params;

  // Rebuild passage angles and directions per traversal visit (canonical
  // frame; the mirror image has the same determinant).
  auto dps = double_points(p);
  std::map<std::pair<long, long>, const DoublePointGeom*> geo;
  for (const auto& g : dps) geo[{g.i, g.j}] = &g;
  std::vector<long> label_of_visit(2 * n, 0);
  std::vector<AngleFraction> q_of_visit(2 * n);
  for (const Crossing& c : d.crossings) {
    const DoublePointGeom* g = geo.at({c.i, c.j});
    label_of_visit[c.first_visit] = c.label;
    label_of_visit[c.second_visit] = c.label;
    q_of_visit[c.first_visit] = c.t_is_first ? g->qplus : g->qminus;
    q_of_visit[c.second_visit] = c.t_is_first ? g->qminus : g->qplus;
  }

  // Planar map: darts 4*(label-1) + slot, slots being the counterclockwise
  // directions at the crossing; alpha glues the two darts of each edge.
  const long darts = static_cast<long>(4 * n);
  std::vector<long> alpha(darts, -1);
  for (size_t e = 1; e <= 2 * n; ++e) {
    size_t tail = e - 1;
    size_t head = e % (2 * n);
    std::array<int, 2> dt = passage_dir(p, q_of_visit[tail]);
    std::array<int, 2> dh = passage_dir(p, q_of_visit[head]);
    long dart_tail = 4 * (label_of_visit[tail] - 1) + dir_idx(dt);
    long dart_head =
        4 * (label_of_visit[head] - 1) + dir_idx({-dh[0], -dh[1]});
    if (alpha[dart_tail] != -1 || alpha[dart_head] != -1)
      throw certification_error("goeritz: crossing slot used twice");
    alpha[dart_tail] = dart_head;
    alpha[dart_head] = dart_tail;
  }

  // Faces: orbits of dart -> rotate(alpha(dart)).
  std::vector<long> face(darts, -1);
  long faces = 0;
  for (long s = 0; s < darts; ++s) {
    if (face[s] != -1) continue;
    long at = s;
    while (face[at] == -1) {
      face[at] = faces;
      long o = alpha[at];
      at = (o / 4) * 4 + (o % 4 + 1) % 4;
    }
    ++faces;
  }
  if (faces != static_cast<long>(n) + 2)
    throw certification_error("goeritz: face count violates Euler's formula");

  // The corner between slots g and g+1 of a crossing lies in the face of
  // dart (crossing, g+1).
  auto corner_face = [&](long label, int g) {
    return face[4 * (label - 1) + (g + 1) % 4];
  };

  // Checkerboard coloring: corners adjacent around a crossing get opposite
  // colors.
  std::vector<int> color(faces, -1);
  std::vector<long> queue;
  color[corner_face(1, 0)] = 0;
  queue.push_back(corner_face(1, 0));
  // Constraint edges, gathered once.
  std::vector<std::vector<long>> adj(faces);
  for (size_t x = 0; x < n; ++x) {
    long label = static_cast<long>(x) + 1;
    for (int g = 0; g < 4; ++g) {
      long u = corner_face(label, g);
      long v = corner_face(label, (g + 1) % 4);
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
  while (!queue.empty()) {
    long u = queue.back();
    queue.pop_back();
    for (long v : adj[u]) {
      if (color[v] == -1) {
        color[v] = 1 - color[u];
        queue.push_back(v);
      } else if (color[v] == color[u]) {
        throw certification_error("goeritz: diagram is not checkerboard");
      }
    }
  }
  for (long f = 0; f < faces; ++f)
    if (color[f] == -1)
      throw certification_error("goeritz: disconnected face graph");

  // Shaded class and Goeritz matrix. eta compares the shaded corner pair
  // with the A-smoothing pair of the crossing; either uniform convention
  // gives the determinant up to sign.
  std::vector<long> shaded_index(faces, -1);
  long shaded = 0;
  for (long f = 0; f < faces; ++f)
    if (color[f] == 0) shaded_index[f] = shaded++;
  std::vector<std::vector<mpz_class>> g(shaded,
                                        std::vector<mpz_class>(shaded, 0));
  for (const Crossing& c : d.crossings) {
    int gpair = color[corner_face(c.label, 0)] == 0 ? 0 : 1;
    long u = shaded_index[corner_face(c.label, gpair)];
    long v = shaded_index[corner_face(c.label, gpair + 2)];
    int apair = c.over_slope > 0 ? 0 : 1;
    int eta = gpair == apair ? -1 : 1;
    if (u == v) continue;
    g[u][v] -= eta;
    g[v][u] -= eta;
  }
  for (long u = 0; u < shaded; ++u) {
    mpz_class s = 0;
    for (long v = 0; v < shaded; ++v)
      if (v != u) s += g[u][v];
    g[u][u] = -s;
  }
  if (shaded <= 1) return 1;
  std::vector<std::vector<mpz_class>> minor(shaded - 1);
  for (long r = 0; r + 1 < shaded; ++r)
    minor[r] = std::vector<mpz_class>(g[r].begin(), g[r].end() - 1);
  return bareiss_abs_det(std::move(minor));
}

mpz_class determinant(const KnotDiagram& d, long max_crossings) {
  mpz_class via_jones = abs(jones(d, max_crossings).eval_minus_one());
  mpz_class via_goeritz = goeritz_determinant(d);
  if (via_jones != via_goeritz)
    throw certification_error(
        "determinant: bracket and Goeritz routes disagree");
  return via_goeritz;
}

TwoBridgeFraction TwoBridgeFraction::mirrored() const {
  TwoBridgeFraction m;
  m.alpha = alpha;
  m.beta = beta == 0 ? mpz_class(0) : mpz_class(alpha - beta);
  return m;
}

bool TwoBridgeFraction::same_type(const TwoBridgeFraction& o) const {
  if (alpha != o.alpha) return false;
  if (alpha == 1) return true;
  if ((beta - o.beta) % alpha == 0) return true;
  return (beta * o.beta - 1) % alpha == 0;
}

TwoBridgeFraction two_bridge_fraction(const KnotDiagram& d) {
  const KnotParams& p = d.params;
  long original_a = p.mirror ? p.b : p.a;
  if (original_a != 3 && original_a != 4)
    throw input_error(
        "two_bridge_fraction: defined only for curves whose original first "
        "parameter is 3 or 4");

  // The original-axes diagram is a 4-plat: 4 strands swept along the
  // original x axis (for original a = 4 the closure arc stays beyond the
  // right wall and never meets an interior column, so the 4 branches alone
  // form the plat). Each crossing twists either the middle strand pair or
  // an outer pair; which one depends only on its horizontal line m, never
  // on x: for a = 3 the third branch sits at y = -1 (line m = 1) or y = +1
  // (m = 2), and for a = 4 the crossings on lines 1 and 3 happen at the
  // same x in top/bottom pairs while line 2 crossings sit between them.
  // Maximal blocks of consecutive same-kind crossings along the sweep are
  // the Conway twist regions; outer twists of the same block commute even
  // when they mix the top and bottom pair, because a half turn of the
  // partial tangle exchanges those pairs without changing its fraction.
  struct Letter {
    long x = 0;        // original column, sweep runs from high x to low
    bool middle = false;
    int slope = 0;
  };
  std::vector<Letter> word;
  word.reserve(d.crossings.size());
  for (const Crossing& c : d.crossings) {
    long k = checked_add(checked_mul(c.j, p.a), checked_mul(c.i, p.b));
    long m = p.mirror ? fold_lattice(k, p.b) : fold_lattice(k, p.a);
    Letter l;
    l.x = p.mirror ? fold_lattice(k, p.a) : fold_lattice(k, p.b);
    l.slope = c.over_slope;
    if (p.mirror) {
      // Original a = 4, branches at stack slots 0..3 bottom to top; line m
      // crosses the pair at slots (3 - m - 1, 3 - m), middle means m = 2.
      l.middle = m == 2;
    } else {
      // Original a = 3, closure strand at the top slot when b is even and
      // at the bottom slot when b is odd; the full 4-slot stack position of
      // the crossing pair is then determined by its line alone.
      long pos = p.b % 2 == 0 ? 2 - m : 3 - m;
      if (c.stack_pos != pos)
        throw certification_error(
            "two_bridge_fraction: stack position disagrees with the line");
      l.middle = pos == 1;
    }
    word.push_back(l);
  }
  std::stable_sort(word.begin(), word.end(),
                   [](const Letter& l, const Letter& r) { return l.x > r.x; });
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i].x == word[i + 1].x && (word[i].middle || word[i + 1].middle))
      throw certification_error(
          "two_bridge_fraction: middle crossings may not share a column");

  // Signed twist count per region: over strand of slope +1 counts +1, and
  // outer regions flip sign (twisting the outer pair one way bends the
  // plat the same way as twisting the middle pair the other way).
  std::vector<mpz_class> region;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i == 0 || word[i].middle != word[i - 1].middle) region.push_back(0);
    region.back() += word[i].middle ? word[i].slope : -word[i].slope;
  }

  // Continued fraction e_n + 1/(e_{n-1} + ... + 1/e_1) by continuants,
  // regions read in sweep order.
  mpz_class num = 0, den = 1;  // empty tail
  bool started = false;
  for (const mpz_class& e : region) {
    if (!started) {
      num = e;
      den = 1;
      started = true;
      continue;
    }
    mpz_class new_num = e * num + den;
    den = num;
    num = new_num;
  }
  TwoBridgeFraction f;
  if (!started || num == 0) {
    f.alpha = 1;
    f.beta = 0;
  } else {
    if (num < 0) {
      num = -num;
      den = -den;
    }
    f.alpha = num;
    f.beta = den % num;
    if (f.beta < 0) f.beta += num;
    if (f.alpha == 1) f.beta = 0;
  }
  if (f.alpha > 1 && gcd(f.alpha, f.beta) != 1)
    throw certification_error("two_bridge_fraction: fraction is not reduced");
  mpz_class det = determinant(d);
  if (f.alpha != det)
    throw certification_error(
        "two_bridge_fraction: numerator disagrees with the determinant");
  return f;
}

namespace {

// Shared lattice walk of both renderers: in billiard coordinates the curve
// is the diagonal path through the integer points P_k = (fold(k, width),
// fold(k, height)), k = 0..ab, bouncing off the walls of a width x height
// table. Every interior lattice point the path meets is a crossing
// passage, met exactly twice. A mirrored parameter set is drawn in the
// original axes, which transposes the table; slopes and over strands are
// transpose-invariant.
struct LatticeWalk {
  long a = 0, b = 0, ab = 0;                    // a = height, b = width
  std::vector<std::array<long, 2>> point;       // P_k, k = 0..ab
  std::vector<const Crossing*> passage;         // per k; null off crossings
  std::vector<bool> under;                      // per k
};

LatticeWalk lattice_walk(const KnotDiagram& d) {
  LatticeWalk w;
  w.a = d.params.mirror ? d.params.b : d.params.a;
  w.b = d.params.mirror ? d.params.a : d.params.b;
  w.ab = checked_mul(w.a, w.b);
  w.point.resize(w.ab + 1);
  for (long k = 0; k <= w.ab; ++k)
    w.point[k] = {fold_lattice(k, w.b), fold_lattice(k, w.a)};
  w.passage.assign(w.ab + 1, nullptr);
  w.under.assign(w.ab + 1, false);
  auto dps = double_points(d.params);
  std::map<std::pair<long, long>, const DoublePointGeom*> geo;
  for (const auto& g : dps) geo[{g.i, g.j}] = &g;
  auto tick_of = [&](const AngleFraction& q) {
    // q = num/den with den | ab, so the passage lands on tick q * ab.
    if (w.ab % q.den != 0)
      throw certification_error("render: passage angle off the lattice");
    return q.num * (w.ab / q.den);
  };
  for (const Crossing& c : d.crossings) {
    const DoublePointGeom* g = geo.at({c.i, c.j});
    long kt = tick_of(g->qplus);
    long ks = tick_of(g->qminus);
    bool t_over = c.t_is_first == c.over_first;
    w.passage[kt] = &c;
    w.under[kt] = !t_over;
    w.passage[ks] = &c;
    w.under[ks] = t_over;
  }
  for (long k = 1; k < w.ab; ++k) {
    bool interior = w.point[k][0] > 0 && w.point[k][0] < w.b &&
                    w.point[k][1] > 0 && w.point[k][1] < w.a;
    if (interior != (w.passage[k] != nullptr))
      throw certification_error("render: lattice passages inconsistent");
  }
  return w;
}

// Deterministic fixed-point formatting of q with two decimals (q >= 0).
std::string format_coord(const mpq_class& q) {
  mpq_class scaled = q * 100;
  mpz_class cents = scaled.get_num() / scaled.get_den();  // floor for q >= 0
  if (mpq_class(cents) != scaled) {
    // round half up
    mpq_class frac = scaled - mpq_class(cents);
    if (frac * 2 >= 1) ++cents;
  }
  mpz_class whole = cents / 100;
  long rest = mpz_class(cents % 100).get_si();
  std::ostringstream o;
  o << whole.get_str() << "." << (rest < 10 ? "0" : "") << rest;
  return o.str();
}

}  // namespace

std::string render_ascii(const KnotDiagram& d) {
  LatticeWalk w = lattice_walk(d);
  const long rows = 2 * w.a + 1;
  const long cols = 2 * w.b + 1;
  std::vector<std::string> canvas(rows, std::string(cols, ' '));
  auto at = [&](long u2, long v2) -> char& {
    // doubled billiard coordinates: u2 = 2u, v2 = 2v, v up
    return canvas[2 * w.a - v2][u2];
  };
  // border and grid
  for (long u = 0; u <= 2 * w.b; ++u) {
    canvas[0][u] = '-';
    canvas[rows - 1][u] = '-';
  }
  for (long r = 0; r < rows; ++r) {
    canvas[r][0] = '|';
    canvas[r][cols - 1] = '|';
  }
  canvas[0][0] = canvas[0][cols - 1] = canvas[rows - 1][0] =
      canvas[rows - 1][cols - 1] = '+';
  for (long u = 1; u < w.b; ++u)
    for (long r = 1; r + 1 < rows; ++r) canvas[r][2 * u] = '.';
  for (long v = 1; v < w.a; ++v)
    for (long col = 1; col + 1 < cols; ++col) canvas[2 * (w.a - v)][col] = '.';
  // path steps
  for (long k = 0; k < w.ab; ++k) {
    auto [u0, v0] = w.point[k];
    auto [u1, v1] = w.point[k + 1];
    char ch = (u1 - u0) * (v1 - v0) > 0 ? '/' : '\\';
    at(u0 + u1, v0 + v1) = ch;
  }
  // crossings: show the over strand's diagonal
  for (long k = 1; k < w.ab; ++k) {
    if (!w.passage[k]) continue;
    at(2 * w.point[k][0], 2 * w.point[k][1]) =
        w.passage[k]->over_slope > 0 ? '/' : '\\';
  }
  // wall bounces and the two tail endpoints
  for (long k = 1; k < w.ab; ++k) {
    auto [u, v] = w.point[k];
    if (u == 0) at(0, 2 * v) = '(';
    if (u == w.b) at(2 * w.b, 2 * v) = ')';
    if (v == 0) at(2 * u, 0) = 'v';
    if (v == w.a) at(2 * u, 2 * w.a) = '^';
  }
  at(2 * w.point[0][0], 2 * w.point[0][1]) = 'o';
  at(2 * w.point[w.ab][0], 2 * w.point[w.ab][1]) = 'o';
  std::ostringstream o;
  for (const std::string& line : canvas) o << line << "\n";
  return o.str();
}

std::string render_svg(const KnotDiagram& d) {
  LatticeWalk w = lattice_walk(d);
  const long unit = 48;
  const long margin = 24;
  const long width = 2 * margin + w.b * unit;
  const long height = 2 * margin + w.a * unit;
  auto px = [&](const mpq_class& u) { return format_coord(margin + u * unit); };
  auto py = [&](const mpq_class& v) {
    return format_coord(margin + (w.a - v) * unit);
  };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width
    << " " << height << "\" width=\"" << width << "\" height=\"" << height
    << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
    << "\" fill=\"#ffffff\"/>\n";
  for (long u = 0; u <= w.b; ++u)
    o << "<line x1=\"" << px(u) << "\" y1=\"" << py(0) << "\" x2=\"" << px(u)
      << "\" y2=\"" << py(w.a) << "\" stroke=\""
      << (u == 0 || u == w.b ? "#555555" : "#cccccc")
      << "\" stroke-width=\"1\"/>\n";
  for (long v = 0; v <= w.a; ++v)
    o << "<line x1=\"" << px(0) << "\" y1=\"" << py(v) << "\" x2=\"" << px(w.b)
      << "\" y2=\"" << py(v) << "\" stroke=\""
      << (v == 0 || v == w.a ? "#555555" : "#cccccc")
      << "\" stroke-width=\"1\"/>\n";

  // The path, broken at every under-passage: polyline pieces with a gap of
  // g units on both sides of the crossing point.
  const mpq_class gap(11, 50);
  std::vector<std::pair<mpq_class, mpq_class>> pts;
  auto flush = [&]() {
    if (pts.size() < 2) {
      pts.clear();
      return;
    }
    o << "<polyline fill=\"none\" stroke=\"#1d3557\" stroke-width=\"3\" "
         "stroke-linecap=\"round\" points=\"";
    for (size_t t = 0; t < pts.size(); ++t) {
      if (t) o << " ";
      o << px(pts[t].first) << "," << py(pts[t].second);
    }
    o << "\"/>\n";
    pts.clear();
  };
  auto lerp = [](long from, long to, const mpq_class& f) {
    return mpq_class(from) + mpq_class(to - from) * f;
  };
  pts.push_back({mpq_class(w.point[0][0]), mpq_class(w.point[0][1])});
  for (long k = 0; k < w.ab; ++k) {
    auto [u0, v0] = w.point[k];
    auto [u1, v1] = w.point[k + 1];
    // Each unit step is trimmed independently: cut after an under-passage
    // at its start, cut before one at its end. One gap comment per
    // under-passage, so one per crossing.
    if (w.passage[k] && w.under[k])
      pts.push_back({lerp(u0, u1, gap), lerp(v0, v1, gap)});
    if (k + 1 < w.ab && w.passage[k + 1] && w.under[k + 1]) {
      pts.push_back({lerp(u0, u1, 1 - gap), lerp(v0, v1, 1 - gap)});
      flush();
      o << "<!-- gap -->\n";
    } else {
      pts.push_back({mpq_class(u1), mpq_class(v1)});
    }
  }
  flush();
  for (long k : {0L, w.ab})
    o << "<circle cx=\"" << px(w.point[k][0]) << "\" cy=\""
      << py(w.point[k][1])
      << "\" r=\"4\" fill=\"#1d3557\"/>\n";
  o << "</svg>\n";
  return o.str();
}

std::string to_json(const KnotDiagram& d) {
  std::ostringstream o;
  o << "{\"format\":\"chebknot-diagram\",\"version\":1";
  o << ",\"params\":{\"a\":" << d.params.a << ",\"b\":" << d.params.b
    << ",\"c\":" << d.params.c
    << ",\"mirror\":" << (d.params.mirror ? "true" : "false") << "}";
  o << ",\"phi\":\"" << d.phi.get_str() << "\"";
  o << ",\"crossing_count\":" << d.crossings.size();
  o << ",\"crossings\":[";
  for (size_t x = 0; x < d.crossings.size(); ++x) {
    const Crossing& c = d.crossings[x];
    if (x) o << ",";
    o << "{\"label\":" << c.label << ",\"i\":" << c.i << ",\"j\":" << c.j
      << ",\"first_visit\":" << c.first_visit
      << ",\"second_visit\":" << c.second_visit
      << ",\"t_is_first\":" << (c.t_is_first ? "true" : "false")
      << ",\"over_first\":" << (c.over_first ? "true" : "false")
      << ",\"qc\":" << c.qc << ",\"twist\":" << c.twist << "}";
  }
  o << "],\"gauss\":[";
  for (size_t v = 0; v < d.gauss.size(); ++v) {
    if (v) o << ",";
    o << "\"" << (d.gauss[v].over ? "O" : "U") << d.gauss[v].label
      << (d.gauss[v].sign > 0 ? "+" : "-") << "\"";
  }
  o << "],\"pd\":[";
  for (size_t x = 0; x < d.pd.size(); ++x) {
    if (x) o << ",";
    o << "[" << d.pd[x][0] << "," << d.pd[x][1] << "," << d.pd[x][2] << ","
      << d.pd[x][3] << "]";
  }
  o << "],\"twists\":[";
  for (size_t x = 0; x < d.crossings.size(); ++x) {
    if (x) o << ",";
    o << d.crossings[x].twist;
  }
  o << "]}";
  return o.str();
}

}  // namespace chebknot
