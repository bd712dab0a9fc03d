#include "chebknot/cyclotomic.hpp"

#include <numeric>
#include <random>
#include <vector>

#include "chebknot/chebyshev.hpp"
#include "chebknot/errors.hpp"
#include "doctest.h"
#include "support/numeric_oracle.hpp"

using chebknot::AngleFraction;
using chebknot::cheb_T;
using chebknot::cos_pi_frac_enclosure;
using chebknot::cos_root_table;
using chebknot::cos_value;
using chebknot::CosValue;
using chebknot::Dyadic;
using chebknot::DyInterval;
using chebknot::eval_enclosure;
using chebknot::formal_null_test;
using chebknot::IntPolynomial;
using chebknot::minimal_cos_poly;
using chebknot::pi_enclosure;
using chebknot::reduce_mod_M;
using chebknot::TrigPolyExpr;
using chebknot::testsupport::oracle_cos_pi_frac;
using chebknot::testsupport::oracle_pi;

namespace {

// Odd k in (0, m) coprime to m, ascending: the angle numerators whose
// cosines are exactly the roots of minimal_cos_poly(m).
std::vector<long> odd_coprime(long m) {
  std::vector<long> ks;
  for (long k = 1; k < m; k += 2)
    if (std::gcd(k, m) == 1) ks.push_back(k);
  return ks;
}

// The univariate polynomial p placed into slot i of a TrigPolyExpr.
TrigPolyExpr poly_in_slot(const std::vector<AngleFraction>& slots, size_t i,
                          const IntPolynomial& p) {
  TrigPolyExpr e(slots);
  for (long d = 0; d <= p.degree(); ++d) {
    if (p[d] == 0) continue;
    std::vector<unsigned> exps(slots.size(), 0);
    exps[i] = static_cast<unsigned>(d);
    e.add_term(p[d], exps);
  }
  return e;
}

IntPolynomial P(std::vector<long> coeffs) {
  std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
  return IntPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("AngleFraction normalization") {
  CHECK(AngleFraction::of(1, 3) == AngleFraction::of(1, 3));
  CHECK(AngleFraction::of(1, 3).num == 1);
  CHECK(AngleFraction::of(1, 3).den == 3);

  // Periodicity: q mod 2.
  CHECK(AngleFraction::of(13, 5) == AngleFraction::of(3, 5));
  CHECK(AngleFraction::of(10, 5) == AngleFraction::of(0, 1));
  // Evenness: q -> 2 - q when q > 1.
  CHECK(AngleFraction::of(7, 5) == AngleFraction::of(3, 5));
  CHECK(AngleFraction::of(-1, 5) == AngleFraction::of(1, 5));
  CHECK(AngleFraction::of(9, 6) == AngleFraction::of(1, 2));
  // Reduction.
  CHECK(AngleFraction::of(6, 4) == AngleFraction::of(1, 2));
  CHECK(AngleFraction::of(5, 5) == AngleFraction::of(1, 1));
  CHECK(AngleFraction::of(0, 7) == AngleFraction::of(0, 1));
  CHECK(AngleFraction::of(4, 6) == AngleFraction::of(2, 3));

  CHECK(AngleFraction::of(3, 7) != AngleFraction::of(3, 8));
  CHECK_THROWS_AS(AngleFraction::of(1, 0), chebknot::input_error);
  CHECK_THROWS_AS(AngleFraction::of(1, -2), chebknot::input_error);
}

TEST_CASE("cos_value is exact for denominators 1, 2, 3") {
  struct Fixture {
    long n, m;
    mpq_class want;
  };
  const std::vector<Fixture> fixtures = {
      {0, 1, mpq_class(1)},      {1, 1, mpq_class(-1)},
      {1, 2, mpq_class(0)},      {3, 2, mpq_class(0)},
      {1, 3, mpq_class(1, 2)},   {2, 3, mpq_class(-1, 2)},
      {4, 3, mpq_class(-1, 2)},  {5, 3, mpq_class(1, 2)},
      {7, 1, mpq_class(-1)},     {8, 4, mpq_class(1)},
  };
  for (const auto& f : fixtures) {
    CAPTURE(f.n);
    CAPTURE(f.m);
    CosValue v = cos_value(f.n, f.m);
    REQUIRE(v.value().is_exact());
    CHECK(*v.value().exact() == f.want);
    // Point enclosure at any accuracy.
    DyInterval iv = enclose(v, Dyadic::pow2(-200));
    CHECK(iv.is_point());
    CHECK(iv.contains(f.want));
  }
}

TEST_CASE("cos_value root forms select the minimal polynomial by rank") {
  // cos(pi/5) and cos(3pi/5) share the defining polynomial M_5 and are
  // its two roots in descending order.
  CosValue a = cos_value(1, 5);
  CosValue b = cos_value(3, 5);
  REQUIRE(!a.value().is_exact());
  REQUIRE(!b.value().is_exact());
  CHECK(a.value().defining() == minimal_cos_poly(5));
  CHECK(b.value().defining() == minimal_cos_poly(5));

  // cos(pi/5) = (1 + sqrt 5)/4 and cos(3pi/5) = (1 - sqrt 5)/4: map the
  // enclosures through t -> 4t - 1 and check the images bracket sqrt 5.
  DyInterval ea = enclose(a, Dyadic::pow2(-80));
  DyInterval eb = enclose(b, Dyadic::pow2(-80));
  {
    Dyadic lo = ea.lo().mul_pow2(2) - Dyadic(1);
    Dyadic hi = ea.hi().mul_pow2(2) - Dyadic(1);
    CHECK(lo * lo < Dyadic(5));
    CHECK(hi * hi > Dyadic(5));
  }
  {
    Dyadic lo = Dyadic(1) - eb.hi().mul_pow2(2);
    Dyadic hi = Dyadic(1) - eb.lo().mul_pow2(2);
    CHECK(lo * lo < Dyadic(5));
    CHECK(hi * hi > Dyadic(5));
  }

  // Even numerator: cos(2pi/5) = (sqrt 5 - 1)/4 is not a root of M_5;
  // its defining polynomial is the sign-normalized reflection of M_5.
  CosValue c = cos_value(2, 5);
  REQUIRE(!c.value().is_exact());
  CHECK(c.value().defining() ==
        minimal_cos_poly(5).negate_variable().sign_normalized());
  DyInterval ec = enclose(c, Dyadic::pow2(-80));
  {
    Dyadic lo = ec.lo().mul_pow2(2) + Dyadic(1);
    Dyadic hi = ec.hi().mul_pow2(2) + Dyadic(1);
    CHECK(lo * lo < Dyadic(5));
    CHECK(hi * hi > Dyadic(5));
  }
  CHECK(ec.lo().sign() > 0);

  // Folding reaches the same canonical angle.
  CosValue d = cos_value(7, 5);
  CHECK(d.angle() == AngleFraction::of(3, 5));
  CHECK(d.value().defining() == minimal_cos_poly(5));
  DyInterval ed = enclose(d, Dyadic::pow2(-80));
  CHECK(ed.overlaps(eb));

  // cos(pi/4) = sqrt(2)/2 via M_4.
  CosValue e = cos_value(1, 4);
  CHECK(e.value().defining() == minimal_cos_poly(4));
  DyInterval ee = enclose(e, Dyadic::pow2(-80));
  CHECK((ee.lo() * ee.lo()).mul_pow2(1) < Dyadic(1));
  CHECK((ee.hi() * ee.hi()).mul_pow2(1) > Dyadic(1));
}

TEST_CASE("enclose produces nested intervals of requested width") {
  CosValue v = cos_value(3, 7);
  DyInterval e1 = enclose(v, Dyadic::pow2(-20));
  DyInterval e2 = enclose(v, Dyadic::pow2(-60));
  DyInterval e3 = enclose(v, Dyadic::pow2(-200));
  CHECK(e1.width() <= Dyadic::pow2(-20));
  CHECK(e2.width() <= Dyadic::pow2(-60));
  CHECK(e3.width() <= Dyadic::pow2(-200));
  CHECK(e1.lo() <= e2.lo());
  CHECK(e2.lo() <= e3.lo());
  CHECK(e3.hi() <= e2.hi());
  CHECK(e2.hi() <= e1.hi());
  // Requesting a coarser accuracy afterwards never widens the result.
  DyInterval e4 = enclose(v, Dyadic::pow2(-10));
  CHECK(e4.width() <= e3.width());

  CHECK_THROWS_AS(enclose(v, Dyadic(0)), chebknot::input_error);
  CHECK_THROWS_AS(enclose(v, Dyadic(-1)), chebknot::input_error);
}

TEST_CASE("pi_enclosure brackets pi and agrees with the oracle") {
  // 3.141592653589793238462643383279502884197 < pi < ...198, far tighter
  // than any width requested below.
  const mpq_class q_lo("3141592653589793238462643383279502884197/"
                       "1000000000000000000000000000000000000000");
  const mpq_class q_hi("3141592653589793238462643383279502884198/"
                       "1000000000000000000000000000000000000000");
  for (long prec : {32L, 64L, 128L, 300L}) {
    CAPTURE(prec);
    DyInterval iv = pi_enclosure(prec);
    CHECK(iv.width() <= Dyadic::pow2(-prec));
    CHECK(Dyadic::cmp_mpq(iv.lo(), q_hi) < 0);
    CHECK(Dyadic::cmp_mpq(iv.hi(), q_lo) > 0);
    CHECK(iv.overlaps(oracle_pi(prec + 16)));
  }
}

TEST_CASE("cos_pi_frac_enclosure agrees with the mpfr oracle") {
  // The production path (Machin pi + interval Taylor cosine) and the
  // oracle (mpfr with directed rounding) must both contain the true
  // value, hence overlap, for every angle.
  std::mt19937_64 rng(20260817);
  for (int trial = 0; trial < 120; ++trial) {
    long m = 1 + static_cast<long>(rng() % 60);
    long n = static_cast<long>(rng() % (4 * m + 1)) - 2 * m;
    CAPTURE(n);
    CAPTURE(m);
    DyInterval got = cos_pi_frac_enclosure(n, m, 80);
    CHECK(got.width() <= Dyadic::pow2(-80));
    CHECK(got.overlaps(oracle_cos_pi_frac(n, m, 100)));
  }
  // Exact rational angles as spot checks.
  CHECK(cos_pi_frac_enclosure(1, 3, 80).contains(mpq_class(1, 2)));
  CHECK(cos_pi_frac_enclosure(2, 3, 80).contains(mpq_class(-1, 2)));
  CHECK(cos_pi_frac_enclosure(1, 2, 80).contains(mpq_class(0)));
  CHECK(cos_pi_frac_enclosure(0, 5, 80).contains(mpq_class(1)));
  CHECK(cos_pi_frac_enclosure(5, 5, 80).contains(mpq_class(-1)));
}

TEST_CASE("cos_value agrees with the mpfr oracle across random angles") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 200; ++trial) {
    long m = 1 + static_cast<long>(rng() % 60);
    long n = static_cast<long>(rng() % (5 * m + 1)) - 2 * m;
    CAPTURE(n);
    CAPTURE(m);
    CosValue v = cos_value(n, m);
    DyInterval got = enclose(v, Dyadic::pow2(-60));
    CHECK(got.width() <= Dyadic::pow2(-60));
    CHECK(got.overlaps(oracle_cos_pi_frac(n, m, 80)));
  }
}

TEST_CASE("cos_root_table lists certified roots in descending order") {
  for (long m = 4; m <= 30; ++m) {
    CAPTURE(m);
    const std::vector<long> ks = odd_coprime(m);
    const std::vector<DyInterval>& tab = cos_root_table(m);
    REQUIRE(tab.size() == ks.size());
    REQUIRE(static_cast<long>(tab.size()) == minimal_cos_poly(m).degree());
    for (size_t i = 0; i + 1 < tab.size(); ++i)
      CHECK(tab[i].lo() > tab[i + 1].hi());  // descending and disjoint
    // Rank association: the i-th interval holds cos(ks[i] pi / m).
    for (size_t i = 0; i < tab.size(); ++i) {
      CAPTURE(i);
      DyInterval orc = oracle_cos_pi_frac(ks[i], m, 100);
      CHECK(tab[i].overlaps(orc));
    }
  }
  // The table is cached: repeated calls hand back the same object.
  CHECK(&cos_root_table(17) == &cos_root_table(17));
  CHECK_THROWS_AS(cos_root_table(3), chebknot::input_error);
  CHECK_THROWS_AS(cos_root_table(0), chebknot::input_error);
}

TEST_CASE("cos_value rank selection matches the oracle for all ranks") {
  for (long m = 4; m <= 30; ++m) {
    CAPTURE(m);
    for (long k : odd_coprime(m)) {
      CAPTURE(k);
      CosValue v = cos_value(k, m);
      REQUIRE(!v.value().is_exact());
      CHECK(v.value().defining() == minimal_cos_poly(m));
      CHECK(enclose(v, Dyadic::pow2(-80))
                .overlaps(oracle_cos_pi_frac(k, m, 100)));
    }
  }
  // Even numerators (odd m) take the reflected polynomial but must land
  // on the same true values.
  for (long m : {5L, 7L, 9L, 11L, 15L, 21L}) {
    for (long k = 2; k < m; k += 2) {
      if (std::gcd(k, m) != 1) continue;
      CAPTURE(m);
      CAPTURE(k);
      CosValue v = cos_value(k, m);
      REQUIRE(!v.value().is_exact());
      CHECK(enclose(v, Dyadic::pow2(-80))
                .overlaps(oracle_cos_pi_frac(k, m, 100)));
    }
  }
}

TEST_CASE("reduce_mod_M fixtures") {
  // T_5 + 1 vanishes at every cos(k pi / 5) with k odd, so M_5 divides it.
  CHECK(reduce_mod_M(cheb_T(5) + IntPolynomial::constant(mpz_class(1)), 5)
            .empty());
  // M_2 = t divides t^2.
  CHECK(reduce_mod_M(IntPolynomial::monomial(mpz_class(1), 2), 2).empty());
  // T_3(cos(k pi / 9)) = cos(k pi / 3) = 1/2 for k = 1, 5, 7.
  std::vector<Dyadic> r = reduce_mod_M(cheb_T(3), 9);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == Dyadic(mpz_class(1), -1));

  // Inputs already below the modulus degree come back unchanged.
  std::vector<Dyadic> s = reduce_mod_M(P({-3, 0, 7}), 9);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Dyadic(-3));
  CHECK(s[1] == Dyadic(0));
  CHECK(s[2] == Dyadic(7));

  CHECK_THROWS_AS(reduce_mod_M(P({1, 1}), 0), chebknot::input_error);
}

TEST_CASE("reduce_mod_M is a ring homomorphism invariant") {
  // reduce(P * M_m + R) == reduce(R) for random P and R.
  std::mt19937_64 rng(987654);
  auto random_poly = [&](long maxdeg) {
    std::vector<mpz_class> c(static_cast<size_t>(rng() % (maxdeg + 1)) + 1);
    for (auto& x : c) x = static_cast<long>(rng() % 19) - 9;
    return IntPolynomial(std::move(c));
  };
  for (long m = 4; m <= 12; ++m) {
    CAPTURE(m);
    const IntPolynomial M = minimal_cos_poly(m);
    for (int trial = 0; trial < 40; ++trial) {
      IntPolynomial p = random_poly(6);
      IntPolynomial rr = random_poly(M.degree() - 1);
      std::vector<Dyadic> lhs = reduce_mod_M(p * M + rr, m);
      std::vector<Dyadic> rhs = reduce_mod_M(rr, m);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("reduce_mod_M kills T_m + 1 and T_2m - 1 for every m") {
  for (long m = 1; m <= 24; ++m) {
    CAPTURE(m);
    const IntPolynomial one = IntPolynomial::constant(mpz_class(1));
    CHECK(reduce_mod_M(cheb_T(static_cast<unsigned long>(m)) + one, m)
              .empty());
    CHECK(reduce_mod_M(cheb_T(static_cast<unsigned long>(2 * m)) - one, m)
              .empty());
  }
}

TEST_CASE("formal_null_test certifies the Myerson product identity") {
  // sin^2(pi/6) sin^2(pi/5) = sin^2(pi/10) sin^2(2pi/5), written with
  // sin^2 = 1 - cos^2. Confirm numerically before asking for the formal
  // verdict, then perturb one angle and expect a definite rejection.
  const std::vector<AngleFraction> slots = {
      AngleFraction::of(1, 6), AngleFraction::of(1, 5),
      AngleFraction::of(1, 10), AngleFraction::of(2, 5)};
  const TrigPolyExpr one = TrigPolyExpr::constant(slots, mpz_class(1));
  const TrigPolyExpr c1 = TrigPolyExpr::var(slots, 0);
  const TrigPolyExpr c2 = TrigPolyExpr::var(slots, 1);
  const TrigPolyExpr c3 = TrigPolyExpr::var(slots, 2);
  const TrigPolyExpr c4 = TrigPolyExpr::var(slots, 3);
  const TrigPolyExpr expr =
      (one - c1 * c1) * (one - c2 * c2) - (one - c3 * c3) * (one - c4 * c4);

  DyInterval num = eval_enclosure(expr, 100);
  CHECK(num.contains_zero());
  CHECK(num.width() <= Dyadic::pow2(-90));
  CHECK(formal_null_test(expr));

  const std::vector<AngleFraction> slots7 = {
      AngleFraction::of(1, 7), AngleFraction::of(1, 5),
      AngleFraction::of(1, 10), AngleFraction::of(2, 5)};
  const TrigPolyExpr one7 = TrigPolyExpr::constant(slots7, mpz_class(1));
  const TrigPolyExpr d1 = TrigPolyExpr::var(slots7, 0);
  const TrigPolyExpr d2 = TrigPolyExpr::var(slots7, 1);
  const TrigPolyExpr d3 = TrigPolyExpr::var(slots7, 2);
  const TrigPolyExpr d4 = TrigPolyExpr::var(slots7, 3);
  const TrigPolyExpr expr7 =
      (one7 - d1 * d1) * (one7 - d2 * d2) - (one7 - d3 * d3) * (one7 - d4 * d4);
  DyInterval num7 = eval_enclosure(expr7, 200);
  CHECK(!num7.contains_zero());
  CHECK(!formal_null_test(expr7));
}

TEST_CASE("formal_null_test classical identities") {
  // Two slots bound to the same angle are formally equal.
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(2, 9),
                                              AngleFraction::of(2, 9)};
    CHECK(formal_null_test(TrigPolyExpr::var(slots, 0) -
                           TrigPolyExpr::var(slots, 1)));
  }
  // Double angle: cos(2pi/7) = 2 cos^2(pi/7) - 1.
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(2, 7),
                                              AngleFraction::of(1, 7)};
    TrigPolyExpr e(slots);
    e.add_term(mpz_class(1), {1, 0});
    e.add_term(mpz_class(-2), {0, 2});
    e.add_term(mpz_class(1), {0, 0});
    CHECK(formal_null_test(e));
  }
  // cos(pi/7) cos(2pi/7) cos(3pi/7) = 1/8.
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(1, 7),
                                              AngleFraction::of(2, 7),
                                              AngleFraction::of(3, 7)};
    TrigPolyExpr e(slots);
    e.add_term(mpz_class(8), {1, 1, 1});
    e.add_term(mpz_class(-1), {0, 0, 0});
    CHECK(formal_null_test(e));
    // And the same expression is nonzero with 3pi/7 replaced by pi/3.
    const std::vector<AngleFraction> wrong = {AngleFraction::of(1, 7),
                                              AngleFraction::of(2, 7),
                                              AngleFraction::of(1, 3)};
    TrigPolyExpr w(wrong);
    w.add_term(mpz_class(8), {1, 1, 1});
    w.add_term(mpz_class(-1), {0, 0, 0});
    CHECK(!formal_null_test(w));
  }
  // cos(pi/7) - cos(2pi/7) + cos(3pi/7) = 1/2.
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(1, 7),
                                              AngleFraction::of(2, 7),
                                              AngleFraction::of(3, 7)};
    TrigPolyExpr e(slots);
    e.add_term(mpz_class(2), {1, 0, 0});
    e.add_term(mpz_class(-2), {0, 1, 0});
    e.add_term(mpz_class(2), {0, 0, 1});
    e.add_term(mpz_class(-1), {0, 0, 0});
    CHECK(formal_null_test(e));
  }
  // Golden ratio pair: 4 c1 c2 = 1, 4 c1^2 + 4 c2^2 = 3, 2 c1 - 2 c2 = 1
  // for c1 = cos(pi/5), c2 = cos(2pi/5).
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(1, 5),
                                              AngleFraction::of(2, 5)};
    TrigPolyExpr prod(slots);
    prod.add_term(mpz_class(4), {1, 1});
    prod.add_term(mpz_class(-1), {0, 0});
    CHECK(formal_null_test(prod));

    TrigPolyExpr sq(slots);
    sq.add_term(mpz_class(4), {2, 0});
    sq.add_term(mpz_class(4), {0, 2});
    sq.add_term(mpz_class(-3), {0, 0});
    CHECK(formal_null_test(sq));

    TrigPolyExpr diff(slots);
    diff.add_term(mpz_class(2), {1, 0});
    diff.add_term(mpz_class(-2), {0, 1});
    diff.add_term(mpz_class(-1), {0, 0});
    CHECK(formal_null_test(diff));

    // Breaking any constant must flip the verdict.
    TrigPolyExpr bad(slots);
    bad.add_term(mpz_class(4), {1, 1});
    bad.add_term(mpz_class(-2), {0, 0});
    CHECK(!formal_null_test(bad));
  }
  // Degenerate denominators: cos(0) = 1, cos(pi) = -1, cos(pi/2) = 0.
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(0, 1),
                                              AngleFraction::of(1, 1)};
    TrigPolyExpr e(slots);
    e.add_term(mpz_class(1), {1, 0});
    e.add_term(mpz_class(1), {0, 1});
    CHECK(formal_null_test(e));  // 1 + (-1)
  }
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(1, 2)};
    CHECK(formal_null_test(TrigPolyExpr::var(slots, 0)));
    TrigPolyExpr e(slots);
    e.add_term(mpz_class(1), {2});
    CHECK(formal_null_test(e));
  }
  // The zero polynomial is formally zero; nonzero constants are not.
  {
    const std::vector<AngleFraction> slots = {AngleFraction::of(1, 5)};
    CHECK(formal_null_test(TrigPolyExpr::constant(slots, mpz_class(0))));
    CHECK(!formal_null_test(TrigPolyExpr::constant(slots, mpz_class(1))));
  }
}

TEST_CASE("formal_null_test against the numeric route on random inputs") {
  std::mt19937_64 rng(55501234);
  const Dyadic thr = Dyadic::pow2(-100);
  int definite = 0;
  for (int trial = 0; trial < 500; ++trial) {
    long m1 = 3 + static_cast<long>(rng() % 7);
    long m2 = 3 + static_cast<long>(rng() % 7);
    const std::vector<AngleFraction> slots = {
        AngleFraction::of(static_cast<long>(rng() % (2 * m1)), m1),
        AngleFraction::of(static_cast<long>(rng() % (2 * m2)), m2)};
    TrigPolyExpr e(slots);
    const int nterms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < nterms; ++t) {
      long coeff = static_cast<long>(rng() % 11) - 5;
      if (coeff == 0) coeff = 1;
      e.add_term(mpz_class(coeff), {static_cast<unsigned>(rng() % 4),
                                    static_cast<unsigned>(rng() % 4)});
    }
    CAPTURE(trial);
    DyInterval num = eval_enclosure(e, 200);
    const bool formal_zero = formal_null_test(e);
    if (formal_zero) {
      // Soundness: a formal zero must be numerically indistinguishable
      // from zero at any precision.
      CHECK(num.contains_zero());
    }
    if (num.lo() > thr || num.hi() < (Dyadic(0) - thr)) {
      ++definite;
      CHECK(!formal_zero);
    }
  }
  // The sample must actually exercise the nonzero branch.
  CHECK(definite > 300);
}

TEST_CASE("formal_null_test accepts constructed formal zeros") {
  // M_m(C1) * (anything) is identically zero whenever the first slot is
  // bound to a root angle of M_m, i.e. k odd and coprime to m. These
  // inputs force the exact dyadic confirmation path to run.
  std::mt19937_64 rng(77001122);
  const std::vector<long> ms = {4, 5, 7, 8, 9, 12, 15};
  for (int trial = 0; trial < 50; ++trial) {
    long m = ms[rng() % ms.size()];
    const std::vector<long> ks = odd_coprime(m);
    long k = ks[rng() % ks.size()];
    long m2 = 3 + static_cast<long>(rng() % 7);
    const std::vector<AngleFraction> slots = {
        AngleFraction::of(k, m),
        AngleFraction::of(static_cast<long>(rng() % (2 * m2)), m2)};
    CAPTURE(m);
    CAPTURE(k);
    TrigPolyExpr base = poly_in_slot(slots, 0, minimal_cos_poly(m));
    TrigPolyExpr mult(slots);
    const int nterms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < nterms; ++t) {
      long coeff = static_cast<long>(rng() % 7) - 3;
      if (coeff == 0) coeff = 2;
      mult.add_term(mpz_class(coeff), {static_cast<unsigned>(rng() % 3),
                                       static_cast<unsigned>(rng() % 3)});
    }
    CHECK(formal_null_test(base * mult));
  }
}

TEST_CASE("eval_enclosure width scales with the requested precision") {
  const std::vector<AngleFraction> slots = {AngleFraction::of(1, 5),
                                            AngleFraction::of(2, 5)};
  TrigPolyExpr e(slots);
  e.add_term(mpz_class(4), {1, 1});
  e.add_term(mpz_class(-1), {0, 0});
  for (long prec : {50L, 100L, 200L}) {
    CAPTURE(prec);
    DyInterval iv = eval_enclosure(e, prec);
    CHECK(iv.contains_zero());
    CHECK(iv.width() <= Dyadic::pow2(-(prec - 5)));
  }
  // A constant expression evaluates exactly.
  DyInterval c =
      eval_enclosure(TrigPolyExpr::constant(slots, mpz_class(7)), 64);
  CHECK(c.contains(mpq_class(7)));
}

TEST_CASE("TrigPolyExpr input validation") {
  const std::vector<AngleFraction> slots = {AngleFraction::of(1, 5),
                                            AngleFraction::of(1, 7)};
  const std::vector<AngleFraction> other = {AngleFraction::of(1, 5),
                                            AngleFraction::of(2, 7)};
  TrigPolyExpr a = TrigPolyExpr::var(slots, 0);
  TrigPolyExpr b = TrigPolyExpr::var(other, 0);
  CHECK_THROWS_AS(a + b, chebknot::input_error);
  CHECK_THROWS_AS(a - b, chebknot::input_error);
  CHECK_THROWS_AS(a * b, chebknot::input_error);
  CHECK_THROWS_AS(TrigPolyExpr::var(slots, 2), chebknot::input_error);
  TrigPolyExpr e(slots);
  CHECK_THROWS_AS(e.add_term(mpz_class(1), {1}), chebknot::input_error);
  CHECK_THROWS_AS(e.add_term(mpz_class(1), {1, 2, 3}), chebknot::input_error);

  // Adding an inverse cancels the stored term completely.
  TrigPolyExpr f(slots);
  f.add_term(mpz_class(5), {1, 2});
  f.add_term(mpz_class(-5), {1, 2});
  CHECK(f.is_zero_polynomial());

  // A slot lcm beyond the machine range is rejected up front.
  const std::vector<AngleFraction> huge = {AngleFraction::of(1, 2147483647),
                                           AngleFraction::of(1, 2147483629),
                                           AngleFraction::of(1, 3)};
  CHECK_THROWS_AS(formal_null_test(TrigPolyExpr::var(huge, 0)),
                  chebknot::input_error);

  CHECK_THROWS_AS(cos_value(1, 0), chebknot::input_error);
  CHECK_THROWS_AS(cos_value(1, -5), chebknot::input_error);
}
