#include "chebknot/intpoly.hpp"

#include <random>
#include <vector>

#include "chebknot/dyadic.hpp"
#include "chebknot/errors.hpp"
#include "doctest.h"

using chebknot::certification_error;
using chebknot::Dyadic;
using chebknot::DyInterval;
using chebknot::IntPolynomial;

namespace {

IntPolynomial rnd_poly(std::mt19937_64& rng, int max_deg, long max_coeff) {
  std::uniform_int_distribution<int> degd(0, max_deg);
  std::uniform_int_distribution<long> cd(-max_coeff, max_coeff);
  int deg = degd(rng);
  std::vector<mpz_class> c(static_cast<size_t>(deg) + 1);
  for (auto& v : c) v = cd(rng);
  return IntPolynomial(std::move(c));
}

mpq_class eval_q(const IntPolynomial& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (long i = p.degree(); i >= 0; --i) {
    acc *= x;
    acc += mpq_class(p[static_cast<size_t>(i)]);
  }
  return acc;
}

}  // namespace

TEST_CASE("construction, trimming, accessors") {
  CHECK(IntPolynomial({0, 0}).is_zero());
  CHECK(IntPolynomial().degree() == -1);
  IntPolynomial p({1, 2, 0});
  CHECK(p.degree() == 1);
  CHECK(p[0] == 1);
  CHECK(p[1] == 2);
  CHECK(p[17] == 0);
  CHECK(p.leading() == 2);
  CHECK(IntPolynomial::monomial(5, 3).str_coeffs() == "0 0 0 5");
  CHECK(IntPolynomial::x().str_coeffs() == "0 1");
  CHECK(IntPolynomial::zero().str_coeffs() == "0");
}

TEST_CASE("ring identities on random polynomials") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 120; ++i) {
    IntPolynomial f = rnd_poly(rng, 8, 50);
    IntPolynomial g = rnd_poly(rng, 8, 50);
    IntPolynomial h = rnd_poly(rng, 5, 20);
    CHECK((f + g) - g == f);
    CHECK(f * g == g * f);
    CHECK((f + g) * h == f * h + g * h);
    CHECK((f * g) * h == f * (g * h));
    CHECK((f * g).derivative() ==
          f.derivative() * g + f * g.derivative());
    if (!g.is_zero()) CHECK((f * g).divide_exact(g) == f);
  }
  CHECK_THROWS_AS(IntPolynomial({1, 0, 1}).divide_exact(IntPolynomial({1, 1})),
                  certification_error);
}

TEST_CASE("compose and Taylor shift") {
  IntPolynomial sq({1, 0, 1});  // x^2 + 1
  CHECK(sq.compose(IntPolynomial({1, 1})).str_coeffs() == "2 2 1");
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 60; ++i) {
    IntPolynomial f = rnd_poly(rng, 10, 100);
    CHECK(f.taylor_shift_1() == f.compose(IntPolynomial({1, 1})));
    IntPolynomial g = rnd_poly(rng, 4, 10);
    mpq_class x(i - 30, 7);
    x.canonicalize();
    CHECK(eval_q(f.compose(g), x) == eval_q(f, eval_q(g, x)));
  }
}

TEST_CASE("variable transforms") {
  std::mt19937_64 rng(777);
  for (int i = 0; i < 60; ++i) {
    IntPolynomial f = rnd_poly(rng, 9, 60);
    mpq_class x(i - 30, 11);
    x.canonicalize();
    CHECK(eval_q(f.negate_variable(), x) == eval_q(f, -x));
    if (x != 0 && !f.is_zero()) {
      // reverse: x^deg * f(1/x).
      mpq_class lhs = eval_q(f.reverse(), x);
      mpq_class pw = 1;
      for (long k = 0; k < f.degree(); ++k) pw *= x;
      CHECK(lhs == pw * eval_q(f, 1 / x));
    }
    CHECK(eval_q(f.scale_pow2(3), x) == eval_q(f, 8 * x));
    if (!f.is_zero()) {
      mpq_class pw = 1;
      for (long k = 0; k < f.degree(); ++k) pw *= 4;
      CHECK(eval_q(f.unscale_pow2(2), x) == pw * eval_q(f, x / 4));
    }
  }
}

TEST_CASE("exact evaluation, signs, homogeneous form") {
  std::mt19937_64 rng(2025);
  for (int i = 0; i < 120; ++i) {
    IntPolynomial f = rnd_poly(rng, 9, 500);
    mpq_class x(i - 60, 13);
    x.canonicalize();
    mpq_class v = eval_q(f, x);
    CHECK(f.sign_at(x) == sgn(v));
    Dyadic d(i - 60, -4);
    mpq_class vd = eval_q(f, d.to_mpq());
    CHECK(f.eval_dyadic_exact(d).to_mpq() == vd);
    CHECK(f.sign_at(d) == sgn(vd));
    // q^deg * f(p/q) as an integer.
    if (!f.is_zero()) {
      mpq_class hom(f.eval_homogeneous(x.get_num(), x.get_den()));
      mpq_class pw = 1;
      for (long k = 0; k < f.degree(); ++k) pw *= x.get_den();
      CHECK(hom == pw * v);
    }
  }
}

TEST_CASE("interval evaluation encloses the exact value") {
  std::mt19937_64 rng(31415);
  std::uniform_int_distribution<long> precd(8, 128);
  for (int i = 0; i < 120; ++i) {
    IntPolynomial f = rnd_poly(rng, 10, 1000);
    Dyadic x(mpz_class((i * 37) % 257 - 128), -6);
    long prec = precd(rng);
    mpq_class exact = eval_q(f, x.to_mpq());
    CHECK(f.eval_enclosure(x, prec).contains(exact));
    DyInterval box(x - Dyadic(1, -8), x + Dyadic(1, -8));
    DyInterval img = f.eval_enclosure(box, prec);
    CHECK(img.contains(exact));
    CHECK(img.contains(eval_q(f, box.lo().to_mpq())));
    CHECK(img.contains(eval_q(f, box.hi().to_mpq())));
  }
}

TEST_CASE("sign variations and root bound") {
  CHECK(IntPolynomial({-1, 60, -1}).sign_variations() == 2);
  CHECK(IntPolynomial({1, 0, 0, 5}).sign_variations() == 0);
  CHECK(IntPolynomial({-1, 0, 0, 5}).sign_variations() == 1);
  std::mt19937_64 rng(888);
  std::uniform_int_distribution<long> rootd(-100, 100);
  for (int i = 0; i < 40; ++i) {
    IntPolynomial p = IntPolynomial::constant(1);
    long maxabs = 0;
    for (int k = 0; k < 6; ++k) {
      long r = rootd(rng);
      maxabs = std::max(maxabs, std::abs(r));
      p = p * IntPolynomial({-r, 1});
    }
    long e = p.root_bound_exp2();
    CHECK((mpz_class(1) << static_cast<unsigned long>(e)) > maxabs);
  }
}

TEST_CASE("content, primitive part, normalization") {
  IntPolynomial p({-2, -4});
  CHECK(p.content() == 2);
  CHECK(p.primitive_part().str_coeffs() == "-1 -2");
  CHECK(p.sign_normalized().str_coeffs() == "1 2");
  CHECK(IntPolynomial::zero().content() == 0);
}

TEST_CASE("polynomial gcd") {
  std::mt19937_64 rng(606);
  IntPolynomial f({1, 0, 1});   // x^2 + 1
  IntPolynomial g({2, 0, 1});   // x^2 + 2, coprime to f
  for (int i = 0; i < 40; ++i) {
    IntPolynomial h = rnd_poly(rng, 6, 30);
    if (h.is_zero()) continue;
    IntPolynomial want = h.primitive_part().sign_normalized();
    CHECK(chebknot::poly_gcd(f * h, g * h) == want);
  }
  CHECK(chebknot::poly_gcd_is_one_mod_prime(f, g));
  IntPolynomial h({3, 1, 7, 2});
  CHECK(!chebknot::poly_gcd_is_one_mod_prime(f * h, g * h));
  CHECK(chebknot::poly_gcd(IntPolynomial::zero(), IntPolynomial::zero())
            .is_zero());
  CHECK(chebknot::poly_gcd(IntPolynomial::zero(), f) == f);
}

TEST_CASE("text forms") {
  CHECK(IntPolynomial({-1, 0, 2}).str_coeffs() == "-1 0 2");
  CHECK(IntPolynomial({0, -3, 0, 4}).str_pretty() == "4t^3 - 3t");
  CHECK(IntPolynomial({1}).str_pretty() == "1");
  CHECK(IntPolynomial::zero().str_pretty() == "0");
}
