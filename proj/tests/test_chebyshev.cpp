#include "chebknot/chebyshev.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>

#include "chebknot/bivariate.hpp"
#include "chebknot/errors.hpp"
#include "chebknot/intpoly.hpp"
#include "doctest.h"

using chebknot::BivariatePoly;
using chebknot::cheb_diff_quotient;
using chebknot::cheb_T;
using chebknot::cheb_V;
using chebknot::factor_T;
using chebknot::factor_V;
using chebknot::IntPolynomial;
using chebknot::minimal_cos_poly;
using chebknot::pi_poly;

namespace {

double eval_d(const IntPolynomial& p, double x) {
  double acc = 0;
  for (long i = p.degree(); i >= 0; --i)
    acc = acc * x + p[static_cast<size_t>(i)].get_d();
  return acc;
}

}  // namespace

TEST_CASE("first-kind family fixtures") {
  CHECK(cheb_T(0).str_coeffs() == "1");
  CHECK(cheb_T(1).str_coeffs() == "0 1");
  CHECK(cheb_T(2).str_coeffs() == "-1 0 2");
  CHECK(cheb_T(3).str_coeffs() == "0 -3 0 4");
  CHECK(cheb_T(4).str_coeffs() == "1 0 -8 0 8");
  CHECK(cheb_T(5).str_coeffs() == "0 5 0 -20 0 16");
  CHECK(cheb_T(6).str_coeffs() == "-1 0 18 0 -48 0 32");
  CHECK(cheb_T(3).str_pretty() == "4t^3 - 3t");
}

TEST_CASE("second-kind family fixtures") {
  CHECK(cheb_V(0).str_coeffs() == "0");
  CHECK(cheb_V(1).str_coeffs() == "1");
  CHECK(cheb_V(2).str_coeffs() == "0 2");
  CHECK(cheb_V(3).str_coeffs() == "-1 0 4");
  CHECK(cheb_V(4).str_coeffs() == "0 -4 0 8");
  CHECK(cheb_V(5).str_coeffs() == "1 0 -12 0 16");
}

TEST_CASE("structural identities of the T and V families") {
  // Composition law T_m(T_n) = T_{mn}.
  for (auto [m, n] : {std::pair{2UL, 3UL}, {3UL, 4UL}, {5UL, 2UL}}) {
    CHECK(cheb_T(m).compose(cheb_T(n)) == cheb_T(m * n));
  }
  // Derivative law T_n' = n V_n.
  for (unsigned long n = 1; n <= 30; ++n) {
    CHECK(cheb_T(n).derivative() == cheb_V(n) * mpz_class(n));
  }
  // Divisibility V_d | V_n for d | n.
  for (unsigned long n = 2; n <= 24; ++n) {
    for (unsigned long d : chebknot::divisors_of(n)) {
      if (d < 2) continue;
      CHECK(cheb_V(n).divide_exact(cheb_V(d)) * cheb_V(d) == cheb_V(n));
    }
  }
  // Endpoint values T_n(1) = 1 and T_n(-1) = (-1)^n.
  for (unsigned long n = 0; n <= 20; ++n) {
    CHECK(cheb_T(n).sign_at(mpq_class(1)) == 1);
    CHECK(cheb_T(n).eval_homogeneous(mpz_class(-1), mpz_class(1)) ==
          (n % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("Pi family and its cyclotomic product") {
  CHECK(pi_poly(0).str_coeffs() == "1");
  CHECK(pi_poly(1).str_coeffs() == "-1 2");
  CHECK(pi_poly(2).str_coeffs() == "-1 -2 4");
  CHECK(pi_poly(3).str_coeffs() == "1 -4 -4 8");
  // (-1)^n Pi_n(-T_2(x)) = V_{2n+1}(x).
  IntPolynomial neg_t2({1, 0, -2});
  for (unsigned long n = 0; n <= 30; ++n) {
    IntPolynomial lhs = pi_poly(n).compose(neg_t2);
    if (n % 2 == 1) lhs = -lhs;
    CHECK(lhs == cheb_V(2 * n + 1));
  }
  // Pi_n = prod of M_d over divisors d > 1 of 2n+1 (unit-test scale; the
  // acceptance suite pushes this to 2n+1 = 315).
  for (unsigned long two_n1 = 3; two_n1 <= 101; two_n1 += 2) {
    IntPolynomial prod = IntPolynomial::constant(1);
    for (unsigned long d : chebknot::divisors_of(two_n1)) {
      if (d > 1) prod = prod * minimal_cos_poly(d);
    }
    CHECK(prod == pi_poly((two_n1 - 1) / 2));
  }
}

TEST_CASE("minimal polynomials of cos(pi/n): fixtures") {
  CHECK(minimal_cos_poly(1).str_coeffs() == "1 1");
  CHECK(minimal_cos_poly(2).str_coeffs() == "0 1");
  CHECK(minimal_cos_poly(3).str_coeffs() == "-1 2");
  CHECK(minimal_cos_poly(4).str_coeffs() == "-1 0 2");
  CHECK(minimal_cos_poly(5).str_coeffs() == "-1 -2 4");
  CHECK(minimal_cos_poly(6).str_coeffs() == "-3 0 4");
  CHECK(minimal_cos_poly(7).str_coeffs() == "1 -4 -4 8");
  CHECK(minimal_cos_poly(8).str_coeffs() == "1 0 -8 0 8");
  CHECK(minimal_cos_poly(9).str_coeffs() == "-1 -6 0 8");
  CHECK(minimal_cos_poly(12).str_coeffs() == "1 0 -16 0 16");
}

TEST_CASE("minimal polynomials: degree, leading coefficient, roots") {
  for (unsigned long n = 1; n <= 120; ++n) {
    IntPolynomial m = minimal_cos_poly(n);
    unsigned long deg =
        (n == 1) ? 1 : chebknot::euler_phi(2 * n) / 2;
    CHECK(m.degree() == static_cast<long>(deg));
    mpz_class lead = 1;
    if (n >= 3) {
      unsigned long e = deg;
      if ((n & (n - 1)) == 0) e -= 1;
      lead <<= e;
    }
    CHECK(m.leading() == lead);
  }
  // Numeric root containment: M_n vanishes at cos(k pi / n), gcd(k, 2n) = 1.
  for (unsigned long n = 3; n <= 50; ++n) {
    IntPolynomial m = minimal_cos_poly(n);
    double scale = std::abs(m.leading().get_d());
    for (unsigned long k = 1; k < n; ++k) {
      if (std::gcd(k, 2 * n) != 1) continue;
      double v = eval_d(m, std::cos(M_PI * static_cast<double>(k) /
                                    static_cast<double>(n)));
      CHECK(std::abs(v) < 1e-7 * scale);
    }
  }
}

TEST_CASE("factor_T reconstructs the first-kind family") {
  auto f1 = factor_T(1);
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].str_coeffs() == "0 1");
  auto f6 = factor_T(6);
  REQUIRE(f6.size() == 2);
  CHECK(f6[0] == minimal_cos_poly(4));
  CHECK(f6[1] == minimal_cos_poly(12));
  // The product check is built into factor_T; exercise a range of n.
  for (unsigned long n = 1; n <= 60; ++n) {
    auto fs = factor_T(n);
    unsigned long q = n;
    while (q % 2 == 0) q /= 2;
    CHECK(fs.size() == chebknot::divisors_of(q).size());
  }
}

TEST_CASE("factor_V reconstructs the second-kind family") {
  auto f4 = factor_V(4);
  CHECK(f4.content == 4);
  REQUIRE(f4.factors.size() == 2);
  CHECK(f4.factors[0].str_coeffs() == "0 1");
  CHECK(f4.factors[1].str_coeffs() == "-1 0 2");
  auto f6 = factor_V(6);
  CHECK(f6.content == 2);
  REQUIRE(f6.factors.size() == 4);
  CHECK(f6.factors[0].str_coeffs() == "0 1");
  CHECK(f6.factors[1].str_coeffs() == "-1 2");
  CHECK(f6.factors[2].str_coeffs() == "1 2");
  CHECK(f6.factors[3].str_coeffs() == "-3 0 4");
  for (unsigned long n = 2; n <= 60; ++n) factor_V(n);  // internal product check
}

TEST_CASE("difference quotient of T_n") {
  for (unsigned long n = 1; n <= 12; ++n) {
    BivariatePoly b = cheb_diff_quotient(n);
    CHECK(b.is_symmetric());
    // (t - s) * B == T_n(t) - T_n(s).
    BivariatePoly t_minus_s;
    t_minus_s.set_coeff(0, 1, 1);
    t_minus_s.set_coeff(1, 0, -1);
    BivariatePoly diff = BivariatePoly::from_v(cheb_T(n)) -
                         BivariatePoly::from_u(cheb_T(n));
    CHECK(t_minus_s * b == diff);
  }
  // n = 3 in the symmetric variables: 4S^2 - 4T - 3.
  BivariatePoly st = cheb_diff_quotient(3).symmetric_to_ST();
  CHECK(st.coeff(2, 0) == 4);
  CHECK(st.coeff(0, 1) == -4);
  CHECK(st.coeff(0, 0) == -3);
  CHECK(st.coeff(1, 0) == 0);
  CHECK(st.deg_u() == 2);
  CHECK(st.deg_v() == 1);
}

TEST_CASE("minimal polynomial disk cache") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() /
                 ("chebknot_cache_test_" + std::to_string(getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  IntPolynomial reference = minimal_cos_poly(35);

  setenv("CHEBKNOT_CACHE", dir.c_str(), 1);
  chebknot::minpoly_memo_clear();
  CHECK(minimal_cos_poly(35) == reference);
  // The computation above must have persisted an entry.
  std::ifstream in(dir / "minpoly.txt");
  REQUIRE(in.good());
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  CHECK(contents.find("35: ") != std::string::npos);

  // A shape-invalid line for n = 35 is rejected and recomputation prevails.
  std::ofstream out(dir / "minpoly.txt", std::ios::trunc);
  out << "35: 1 2 3\n" << "not a cache line\n";
  out.close();
  chebknot::minpoly_memo_clear();
  CHECK(minimal_cos_poly(35) == reference);

  // A valid persisted entry is loaded back.
  chebknot::minpoly_memo_clear();
  CHECK(minimal_cos_poly(35) == reference);

  setenv("CHEBKNOT_CACHE", "", 1);
  chebknot::minpoly_memo_clear();
  CHECK(minimal_cos_poly(35) == reference);
  unsetenv("CHEBKNOT_CACHE");
  chebknot::minpoly_memo_clear();
  fs::remove_all(dir);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(minimal_cos_poly(0), chebknot::input_error);
  CHECK_THROWS_AS(factor_T(0), chebknot::input_error);
  CHECK_THROWS_AS(factor_V(1), chebknot::input_error);
}
