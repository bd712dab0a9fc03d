#include "chebknot/dyadic.hpp"

#include <random>

#include "chebknot/errors.hpp"
#include "doctest.h"

using chebknot::certification_error;
using chebknot::Dyadic;
using chebknot::DyInterval;

namespace {

Dyadic rnd_dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> numd(-(1L << 40), 1L << 40);
  std::uniform_int_distribution<long> expd(-50, 50);
  return Dyadic(mpz_class(numd(rng)), expd(rng));
}

}  // namespace

TEST_CASE("dyadic normalization and text form") {
  Dyadic d(12, 0);
  CHECK(d.num() == 3);
  CHECK(d.exp() == 2);
  CHECK(d.str() == "3*2^2");
  CHECK(Dyadic::parse("3*2^2") == d);

  Dyadic z(mpz_class(0), 7);
  CHECK(z.is_zero());
  CHECK(z.exp() == 0);
  CHECK(z.str() == "0");
  CHECK(Dyadic::parse("0").is_zero());

  CHECK(Dyadic::parse("-5") == Dyadic(-5));
  CHECK(Dyadic(3, -1).str() == "3*2^-1");
  CHECK(Dyadic::parse("3*2^-1") == Dyadic(3, -1));
  CHECK(Dyadic::pow2(-3).to_mpq() == mpq_class(1, 8));
}

TEST_CASE("dyadic arithmetic agrees with exact rationals") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 300; ++i) {
    Dyadic a = rnd_dyadic(rng), b = rnd_dyadic(rng);
    mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    CHECK((a + b).to_mpq() == qa + qb);
    CHECK((a - b).to_mpq() == qa - qb);
    CHECK((a * b).to_mpq() == qa * qb);
    CHECK((-a).to_mpq() == -qa);
    CHECK(a.mul_pow2(3).to_mpq() == qa * 8);
    CHECK(a.mul_pow2(-2).to_mpq() == qa / 4);
    CHECK(Dyadic::midpoint(a, b).to_mpq() == (qa + qb) / 2);
    CHECK(Dyadic::from_mpq(qa) == a);
  }
}

TEST_CASE("dyadic comparisons") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> numd(-5000, 5000);
  std::uniform_int_distribution<long> dend(1, 1000);
  for (int i = 0; i < 300; ++i) {
    Dyadic a = rnd_dyadic(rng), b = rnd_dyadic(rng);
    int want = ::cmp(a.to_mpq(), b.to_mpq());
    CHECK(Dyadic::cmp(a, b) == (want > 0 ? 1 : want < 0 ? -1 : 0));
    mpq_class q(numd(rng), dend(rng));
    q.canonicalize();
    int wantq = ::cmp(a.to_mpq(), q);
    int gotq = Dyadic::cmp_mpq(a, q);
    CHECK((gotq > 0 ? 1 : gotq < 0 ? -1 : 0) ==
          (wantq > 0 ? 1 : wantq < 0 ? -1 : 0));
  }
  CHECK(Dyadic(1, -1) < Dyadic(1));
  CHECK(Dyadic(-1, 10) < Dyadic(1, -10));
}

TEST_CASE("rounding to working precision brackets the value") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> precd(1, 80);
  for (int i = 0; i < 300; ++i) {
    Dyadic d = rnd_dyadic(rng);
    long prec = precd(rng);
    Dyadic down = d.round_down(prec), up = d.round_up(prec);
    CHECK(down <= d);
    CHECK(d <= up);
    CHECK(down.bits() <= static_cast<size_t>(prec) + 1);
    CHECK(up.bits() <= static_cast<size_t>(prec) + 1);
    if (static_cast<long>(d.bits()) <= prec) {
      CHECK(down == d);
      CHECK(up == d);
    } else {
      // One-ulp bracket at the rounded scale.
      long shift = static_cast<long>(d.bits()) - prec;
      CHECK(up - down <= Dyadic::pow2(d.exp() + shift));
    }
  }
}

TEST_CASE("square root enclosures") {
  std::mt19937_64 rng(1234);
  for (long prec : {16L, 64L, 200L}) {
    for (int i = 0; i < 60; ++i) {
      Dyadic d = rnd_dyadic(rng);
      if (d.sign() < 0) d = -d;
      Dyadic down = chebknot::dyadic_sqrt_down(d, prec);
      Dyadic up = chebknot::dyadic_sqrt_up(d, prec);
      CHECK(down <= up);
      CHECK((down * down).to_mpq() <= d.to_mpq());
      CHECK((up * up).to_mpq() >= d.to_mpq());
      CHECK(up - down <= up.mul_pow2(-prec));
    }
  }
  CHECK(chebknot::dyadic_sqrt_down(Dyadic(4), 10) == Dyadic(2));
  CHECK(chebknot::dyadic_sqrt_up(Dyadic(4), 10) == Dyadic(2));
  CHECK_THROWS_AS(chebknot::dyadic_sqrt_down(Dyadic(-1), 10),
                  certification_error);
}

TEST_CASE("division enclosures") {
  std::mt19937_64 rng(555);
  for (long prec : {16L, 64L, 200L}) {
    for (int i = 0; i < 60; ++i) {
      Dyadic a = rnd_dyadic(rng), b = rnd_dyadic(rng);
      if (b.is_zero()) b = Dyadic(1);
      Dyadic down = chebknot::dyadic_div_down(a, b, prec);
      Dyadic up = chebknot::dyadic_div_up(a, b, prec);
      mpq_class exact = a.to_mpq() / b.to_mpq();
      CHECK(down.to_mpq() <= exact);
      CHECK(up.to_mpq() >= exact);
      Dyadic mag = (up.sign() >= 0 ? up : -up);
      Dyadic mag2 = (down.sign() >= 0 ? down : -down);
      if (mag2 > mag) mag = mag2;
      CHECK(up - down <= mag.mul_pow2(-prec) + Dyadic::pow2(-prec * 4));
    }
  }
  CHECK_THROWS_AS(chebknot::dyadic_div_down(Dyadic(1), Dyadic(0), 10),
                  certification_error);
}

TEST_CASE("interval arithmetic contains exact images") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 200; ++i) {
    Dyadic a1 = rnd_dyadic(rng), a2 = rnd_dyadic(rng);
    Dyadic b1 = rnd_dyadic(rng), b2 = rnd_dyadic(rng);
    DyInterval A(std::min(a1, a2), std::max(a1, a2));
    DyInterval B(std::min(b1, b2), std::max(b1, b2));
    for (const Dyadic& s : {A.lo(), Dyadic::midpoint(A.lo(), A.hi()), A.hi()}) {
      for (const Dyadic& t :
           {B.lo(), Dyadic::midpoint(B.lo(), B.hi()), B.hi()}) {
        CHECK((A + B).contains(s + t));
        CHECK((A - B).contains(s - t));
        CHECK((A * B).contains(s * t));
        CHECK((-A).contains(-s));
      }
      CHECK(A.square().contains(s * s));
      CHECK(A.square().lo().sign() >= 0);
      CHECK(A.round_out(10).contains(s));
    }
  }
}

TEST_CASE("interval sign, meet, division, sqrt") {
  CHECK(DyInterval::exact_int(0).definite_sign() == 0);
  CHECK(DyInterval(Dyadic(1), Dyadic(2)).definite_sign() == 1);
  CHECK(DyInterval(Dyadic(-2), Dyadic(-1)).definite_sign() == -1);
  CHECK(!DyInterval(Dyadic(-1), Dyadic(1)).definite_sign().has_value());
  CHECK(!DyInterval(Dyadic(0), Dyadic(1)).definite_sign().has_value());

  DyInterval m = DyInterval::meet(DyInterval(Dyadic(1), Dyadic(3)),
                                  DyInterval(Dyadic(2), Dyadic(5)));
  CHECK(m.lo() == Dyadic(2));
  CHECK(m.hi() == Dyadic(3));
  CHECK_THROWS_AS(DyInterval::meet(DyInterval(Dyadic(0), Dyadic(1)),
                                   DyInterval(Dyadic(2), Dyadic(3))),
                  certification_error);
  CHECK_THROWS_AS(DyInterval(Dyadic(1), Dyadic(0)), certification_error);

  DyInterval q = DyInterval::div(DyInterval(Dyadic(1), Dyadic(2)),
                                 DyInterval(Dyadic(3), Dyadic(4)), 64);
  CHECK(q.contains(mpq_class(1, 3)));
  CHECK(q.contains(mpq_class(2, 3)));
  CHECK(q.contains(mpq_class(1, 2)));
  CHECK(!q.contains(mpq_class(3, 4)));
  CHECK_THROWS_AS(DyInterval::div(DyInterval(Dyadic(1), Dyadic(2)),
                                  DyInterval(Dyadic(-1), Dyadic(1)), 64),
                  certification_error);

  DyInterval r = DyInterval::sqrt_nonneg(DyInterval(Dyadic(2), Dyadic(3)), 80,
                                         false);
  CHECK(r.lo() * r.lo() <= Dyadic(2));
  CHECK(r.hi() * r.hi() >= Dyadic(3));
  DyInterval clamped = DyInterval::sqrt_nonneg(
      DyInterval(Dyadic(-1, -30), Dyadic(4)), 80, true);
  CHECK(clamped.lo().is_zero());
  CHECK_THROWS_AS(DyInterval::sqrt_nonneg(DyInterval(Dyadic(-1, -30), Dyadic(4)),
                                          80, false),
                  certification_error);
}
