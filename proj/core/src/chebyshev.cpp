#include "chebknot/chebyshev.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "chebknot/errors.hpp"

namespace chebknot {

namespace {

std::recursive_mutex g_mutex;

// Shared three-term recurrence p_{n+1} = 2 t p_n - p_{n-1}; the families are
// memoized because factorization checks evaluate many indices of each.
const IntPolynomial& recurrence_family(std::vector<IntPolynomial>& memo,
                                       unsigned long n) {
  while (memo.size() <= n) {
    size_t k = memo.size();
    IntPolynomial next = IntPolynomial::x() * memo[k - 1];
    next = next + next - memo[k - 2];
    memo.push_back(std::move(next));
  }
  return memo[n];
}

std::vector<IntPolynomial>& t_memo() {
  static std::vector<IntPolynomial> memo = {IntPolynomial::constant(1),
                                            IntPolynomial::x()};
  return memo;
}

std::vector<IntPolynomial>& v_memo() {
  static std::vector<IntPolynomial> memo = {IntPolynomial::zero(),
                                            IntPolynomial::constant(1)};
  return memo;
}

std::vector<IntPolynomial>& pi_memo() {
  static std::vector<IntPolynomial> memo = {
      IntPolynomial::constant(1),
      IntPolynomial({-1, 2})};
  return memo;
}

bool is_pow2(unsigned long n) { return n != 0 && (n & (n - 1)) == 0; }

// Degree and leading coefficient every stored M_n must satisfy; corrupt or
// stale cache lines are rejected against these.
void min_poly_shape(unsigned long n, unsigned long* degree, mpz_class* lead) {
  if (n == 1) {
    *degree = 1;
    *lead = 1;
    return;
  }
  *degree = euler_phi(2 * n) / 2;
  unsigned long lead_exp = is_pow2(n) ? *degree - 1 : *degree;
  mpz_class l = 1;
  mpz_mul_2exp(l.get_mpz_t(), l.get_mpz_t(), lead_exp);
  *lead = l;
}

bool shape_ok(unsigned long n, const IntPolynomial& p) {
  unsigned long degree = 0;
  mpz_class lead;
  min_poly_shape(n, &degree, &lead);
  return p.degree() == static_cast<long>(degree) && p.leading() == lead;
}

// Disk cache named by CHEBKNOT_CACHE (a directory; empty or unset disables).
// One line per polynomial, "n: c0 c1 ... cd", lowest degree first; on load a
// line is accepted only if it passes the shape check, and a later valid line
// for the same n wins.
std::optional<std::filesystem::path> cache_file() {
  const char* dir = std::getenv("CHEBKNOT_CACHE");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir) / "minpoly.txt";
}

struct MinPolyState {
  std::map<unsigned long, IntPolynomial> memo;
  bool disk_loaded = false;
  std::string disk_path;
};

MinPolyState& minpoly_state() {
  static MinPolyState state;
  return state;
}

void load_disk_cache(MinPolyState& st) {
  auto path = cache_file();
  std::string want = path ? path->string() : std::string();
  if (st.disk_loaded && st.disk_path == want) return;
  st.disk_loaded = true;
  st.disk_path = want;
  if (!path) return;
  std::ifstream in(*path);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    unsigned long n = 0;
    char colon = 0;
    if (!(ss >> n >> colon) || colon != ':' || n == 0) continue;
    std::vector<mpz_class> coeffs;
    std::string tok;
    bool bad = false;
    while (ss >> tok) {
      mpz_class c;
      if (mpz_set_str(c.get_mpz_t(), tok.c_str(), 10) != 0) {
        bad = true;
        break;
      }
      coeffs.push_back(std::move(c));
    }
    if (bad || coeffs.empty()) continue;
    IntPolynomial p(std::move(coeffs));
    if (!shape_ok(n, p)) continue;
    st.memo[n] = std::move(p);
  }
}

void append_disk_cache(unsigned long n, const IntPolynomial& p) {
  auto path = cache_file();
  if (!path) return;
  std::error_code ec;
  std::filesystem::create_directories(path->parent_path(), ec);
  std::ofstream out(*path, std::ios::app);
  if (!out) return;
  out << n << ": " << p.str_coeffs() << "\n";
}

IntPolynomial compute_min_poly(unsigned long n) {
  if (n == 1) return IntPolynomial({1, 1});
  if (n == 2) return IntPolynomial::x();
  if (is_pow2(n)) return cheb_T(n / 2);
  if (n % 2 == 1) {
    // Pi_{(n-1)/2} carries cos(k pi / n) for every odd k in (0, n); dividing
    // off the M_d of the proper divisors d > 1 leaves exactly the primitive
    // cosines with gcd(k, 2n) = 1. The division is exact by construction.
    IntPolynomial p = pi_poly((n - 1) / 2);
    for (unsigned long d : divisors_of(n)) {
      if (d == 1 || d == n) continue;
      p = p.divide_exact(minimal_cos_poly(d));
    }
    return p;
  }
  // n = 2^k m with m odd >= 3: cos(pi / n) has cos(2^k pi / n) = cos(pi / m),
  // so M_n = M_m composed with T_{2^k}.
  unsigned long two_part = 1;
  unsigned long m = n;
  while (m % 2 == 0) {
    m /= 2;
    two_part *= 2;
  }
  return minimal_cos_poly(m).compose(cheb_T(two_part));
}

}  // namespace

IntPolynomial cheb_T(unsigned long n) {
  std::lock_guard<std::recursive_mutex> lock(g_mutex);
  return recurrence_family(t_memo(), n);
}

IntPolynomial cheb_V(unsigned long n) {
  std::lock_guard<std::recursive_mutex> lock(g_mutex);
  return recurrence_family(v_memo(), n);
}

IntPolynomial pi_poly(unsigned long n) {
  std::lock_guard<std::recursive_mutex> lock(g_mutex);
  return recurrence_family(pi_memo(), n);
}

BivariatePoly cheb_diff_quotient(unsigned long n) {
  // (t^k - s^k) / (t - s) = sum over i + j = k - 1 of s^i t^j, summed with
  // the coefficients of T_n.
  IntPolynomial tn = cheb_T(n);
  BivariatePoly b;
  for (long k = 1; k <= tn.degree(); ++k) {
    const mpz_class& c = tn[static_cast<size_t>(k)];
    if (c == 0) continue;
    for (long i = 0; i < k; ++i) {
      size_t ui = static_cast<size_t>(i);
      size_t vj = static_cast<size_t>(k - 1 - i);
      b.set_coeff(ui, vj, b.coeff(ui, vj) + c);
    }
  }
  return b;
}

unsigned long euler_phi(unsigned long n) {
  unsigned long result = 1;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    result *= p - 1;
    while (n % p == 0) {
      n /= p;
      result *= p;
    }
  }
  if (n > 1) result *= n - 1;
  return result;
}

std::vector<unsigned long> divisors_of(unsigned long n) {
  std::vector<unsigned long> divs;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    divs.push_back(d);
    if (d != n / d) divs.push_back(n / d);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

IntPolynomial minimal_cos_poly(unsigned long n) {
  if (n == 0) throw input_error("minimal_cos_poly: n must be positive");
  std::lock_guard<std::recursive_mutex> lock(g_mutex);
  MinPolyState& st = minpoly_state();
  load_disk_cache(st);
  auto it = st.memo.find(n);
  if (it != st.memo.end()) return it->second;
  IntPolynomial p = compute_min_poly(n);
  if (!shape_ok(n, p))
    throw certification_error("minimal_cos_poly: computed polynomial fails "
                              "degree / leading coefficient invariant");
  st.memo[n] = p;
  append_disk_cache(n, p);
  return p;
}

void minpoly_memo_clear() {
  std::lock_guard<std::recursive_mutex> lock(g_mutex);
  MinPolyState& st = minpoly_state();
  st.memo.clear();
  st.disk_loaded = false;
  st.disk_path.clear();
}

std::vector<IntPolynomial> factor_T(unsigned long n) {
  if (n == 0) throw input_error("factor_T: n must be positive");
  unsigned long two_part = 1;
  unsigned long q = n;
  while (q % 2 == 0) {
    q /= 2;
    two_part *= 2;
  }
  std::vector<IntPolynomial> factors;
  IntPolynomial product = IntPolynomial::constant(1);
  for (unsigned long d : divisors_of(q)) {
    factors.push_back(minimal_cos_poly(2 * two_part * d));
    product = product * factors.back();
  }
  if (!(product == cheb_T(n)))
    throw certification_error("factor_T: product reconstruction failed");
  return factors;
}

FactorV factor_V(unsigned long n) {
  if (n < 2) throw input_error("factor_V: n must be at least 2");
  FactorV result;
  IntPolynomial product = IntPolynomial::constant(1);
  for (unsigned long d : divisors_of(n)) {
    if (d == 1) continue;
    IntPolynomial m = minimal_cos_poly(d);
    product = product * m;
    result.factors.push_back(std::move(m));
    if (d % 2 == 1 && d >= 3) {
      // The mirrored factor carries the cosines cos(k pi / d) with k even.
      IntPolynomial mm =
          minimal_cos_poly(d).negate_variable().sign_normalized();
      product = product * mm;
      result.factors.push_back(std::move(mm));
    }
  }
  IntPolynomial content_poly = cheb_V(n).divide_exact(product);
  if (content_poly.degree() != 0 || content_poly.leading() <= 0)
    throw certification_error("factor_V: content is not a positive integer");
  result.content = content_poly.leading();
  return result;
}

}  // namespace chebknot
