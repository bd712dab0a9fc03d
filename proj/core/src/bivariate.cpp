#include "chebknot/bivariate.hpp"

#include "chebknot/errors.hpp"

namespace chebknot {

namespace {
const mpz_class kZero = 0;
}

BivariatePoly BivariatePoly::constant(const mpz_class& v) {
  return term(v, 0, 0);
}

BivariatePoly BivariatePoly::term(const mpz_class& c, size_t i, size_t j) {
  BivariatePoly p;
  if (c != 0) {
    p.rows_.resize(i + 1);
    p.rows_[i].resize(j + 1);
    p.rows_[i][j] = c;
  }
  return p;
}

BivariatePoly BivariatePoly::from_u(const IntPolynomial& p) {
  BivariatePoly b;
  if (p.degree() < 0) return b;
  b.rows_.resize(static_cast<size_t>(p.degree()) + 1);
  for (long i = 0; i <= p.degree(); ++i) {
    if (p[static_cast<size_t>(i)] != 0)
      b.rows_[static_cast<size_t>(i)] = {p[static_cast<size_t>(i)]};
  }
  b.trim();
  return b;
}

BivariatePoly BivariatePoly::from_v(const IntPolynomial& p) {
  BivariatePoly b;
  if (p.degree() < 0) return b;
  b.rows_.resize(1);
  b.rows_[0].resize(static_cast<size_t>(p.degree()) + 1);
  for (long j = 0; j <= p.degree(); ++j)
    b.rows_[0][static_cast<size_t>(j)] = p[static_cast<size_t>(j)];
  b.trim();
  return b;
}

void BivariatePoly::trim() {
  for (auto& row : rows_) {
    while (!row.empty() && row.back() == 0) row.pop_back();
  }
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

bool BivariatePoly::is_zero() const { return rows_.empty(); }

const mpz_class& BivariatePoly::coeff(size_t i, size_t j) const {
  if (i >= rows_.size() || j >= rows_[i].size()) return kZero;
  return rows_[i][j];
}

void BivariatePoly::set_coeff(size_t i, size_t j, mpz_class v) {
  if (v == 0 && (i >= rows_.size() || j >= rows_[i].size())) return;
  if (i >= rows_.size()) rows_.resize(i + 1);
  if (j >= rows_[i].size()) rows_[i].resize(j + 1);
  rows_[i][j] = std::move(v);
  trim();
}

long BivariatePoly::deg_u() const {
  return static_cast<long>(rows_.size()) - 1;
}

long BivariatePoly::deg_v() const {
  long d = -1;
  for (const auto& row : rows_)
    d = std::max(d, static_cast<long>(row.size()) - 1);
  return d;
}

bool BivariatePoly::operator==(const BivariatePoly& o) const {
  size_t n = std::max(rows_.size(), o.rows_.size());
  for (size_t i = 0; i < n; ++i) {
    size_t mi = (i < rows_.size()) ? rows_[i].size() : 0;
    size_t mo = (i < o.rows_.size()) ? o.rows_[i].size() : 0;
    size_t m = std::max(mi, mo);
    for (size_t j = 0; j < m; ++j)
      if (coeff(i, j) != o.coeff(i, j)) return false;
  }
  return true;
}

BivariatePoly BivariatePoly::operator-() const {
  BivariatePoly r = *this;
  for (auto& row : r.rows_)
    for (auto& c : row) c = -c;
  return r;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
  BivariatePoly r;
  r.rows_.resize(std::max(rows_.size(), o.rows_.size()));
  for (size_t i = 0; i < r.rows_.size(); ++i) {
    size_t mi = (i < rows_.size()) ? rows_[i].size() : 0;
    size_t mo = (i < o.rows_.size()) ? o.rows_[i].size() : 0;
    r.rows_[i].resize(std::max(mi, mo));
    for (size_t j = 0; j < r.rows_[i].size(); ++j)
      r.rows_[i][j] = coeff(i, j) + o.coeff(i, j);
  }
  r.trim();
  return r;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
  return *this + (-o);
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
  BivariatePoly r;
  if (is_zero() || o.is_zero()) return r;
  size_t du = static_cast<size_t>(deg_u() + o.deg_u());
  size_t dv = static_cast<size_t>(deg_v() + o.deg_v());
  r.rows_.assign(du + 1, std::vector<mpz_class>(dv + 1, mpz_class(0)));
  for (size_t i = 0; i < rows_.size(); ++i) {
    for (size_t j = 0; j < rows_[i].size(); ++j) {
      if (rows_[i][j] == 0) continue;
      for (size_t k = 0; k < o.rows_.size(); ++k) {
        for (size_t l = 0; l < o.rows_[k].size(); ++l) {
          if (o.rows_[k][l] == 0) continue;
          mpz_addmul(r.rows_[i + k][j + l].get_mpz_t(),
                     rows_[i][j].get_mpz_t(), o.rows_[k][l].get_mpz_t());
        }
      }
    }
  }
  r.trim();
  return r;
}

mpq_class BivariatePoly::eval(const mpq_class& u, const mpq_class& v) const {
  // Horner in u; each row is a univariate in v evaluated by Horner too.
  mpq_class acc = 0;
  for (size_t ii = rows_.size(); ii-- > 0;) {
    mpq_class row = 0;
    for (size_t jj = rows_[ii].size(); jj-- > 0;) {
      row *= v;
      row += mpq_class(rows_[ii][jj]);
    }
    acc *= u;
    acc += row;
  }
  acc.canonicalize();
  return acc;
}

BivariatePoly BivariatePoly::swapped() const {
  BivariatePoly r;
  for (size_t i = 0; i < rows_.size(); ++i)
    for (size_t j = 0; j < rows_[i].size(); ++j)
      if (rows_[i][j] != 0) {
        if (j >= r.rows_.size()) r.rows_.resize(j + 1);
        if (i >= r.rows_[j].size()) r.rows_[j].resize(i + 1);
        r.rows_[j][i] = rows_[i][j];
      }
  r.trim();
  return r;
}

BivariatePoly BivariatePoly::symmetric_to_ST() const {
  if (!is_symmetric())
    throw certification_error("symmetric_to_ST: polynomial is not symmetric");
  // Reduce against e1 = s+t, e2 = st: pick the lex-highest remaining term
  // c s^a t^b with a >= b, emit c S^(a-b) T^b, subtract c (s+t)^(a-b) (st)^b.
  BivariatePoly rem = *this;
  BivariatePoly e1;
  e1.set_coeff(1, 0, 1);
  e1.set_coeff(0, 1, 1);
  BivariatePoly e2 = BivariatePoly::term(1, 1, 1);
  BivariatePoly out;
  while (!rem.is_zero()) {
    size_t a = 0, b = 0;
    bool found = false;
    for (size_t i = rem.rows_.size(); i-- > 0 && !found;) {
      for (size_t j = rem.rows_[i].size(); j-- > 0;) {
        if (rem.rows_[i][j] != 0) {
          a = i;
          b = j;
          found = true;
          break;
        }
      }
    }
    if (a < b)
      throw certification_error("symmetric_to_ST: reduction left t-heavy term");
    mpz_class c = rem.coeff(a, b);
    out.set_coeff(a - b, b, out.coeff(a - b, b) + c);
    BivariatePoly sub = BivariatePoly::constant(c);
    for (size_t k = 0; k < a - b; ++k) sub = sub * e1;
    for (size_t k = 0; k < b; ++k) sub = sub * e2;
    rem = rem - sub;
  }
  return out;
}

}  // namespace chebknot
