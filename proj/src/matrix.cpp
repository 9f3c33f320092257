#include "picodim/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace picodim {

Rational Rational::from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(mpz_class(s));
  return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
}

std::string Rational::str() const {
  std::ostringstream os;
  os << v_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.raw(); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::vstack(const Matrix& other) const {
  Matrix r(rows_ + other.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = other.at(i, j);
  return r;
}

Matrix Matrix::hstack(const Matrix& other) const {
  Matrix r(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) r.at(i, cols_ + j) = other.at(i, j);
  }
  return r;
}

std::vector<Rational> Matrix::row(std::size_t i) const {
  std::vector<Rational> r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

std::size_t rank(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // clear denominators per row; row scaling does not change the rank
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) l = lcm(l, m.at(i, j).den());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j).num() * (l / m.at(i, j).den());
  }

  // Bareiss: entries stay integral, divisions are exact
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

bool RowSpace::insert(std::vector<Rational> row) {
  // one pass suffices: RREF basis rows vanish at each other's pivot columns
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational c = row[pivots_[k]];
    if (c.is_zero()) continue;
    const auto& b = rows_[k];
    for (std::size_t j = pivots_[k]; j < cols_; ++j)
      if (!b[j].is_zero()) row[j] -= c * b[j];
  }
  std::size_t lead = 0;
  while (lead < cols_ && row[lead].is_zero()) ++lead;
  if (lead == cols_) return false;

  const Rational inv = Rational(1) / row[lead];
  for (std::size_t j = lead; j < cols_; ++j)
    if (!row[j].is_zero()) row[j] *= inv;

  // eliminate the new pivot column from existing rows, then splice in
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational c = rows_[i][lead];
    if (c.is_zero()) continue;
    for (std::size_t j = lead; j < cols_; ++j)
      if (!row[j].is_zero()) rows_[i][j] -= c * row[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, lead);
  rows_.insert(rows_.begin() + pos, std::move(row));
  return true;
}

std::vector<Rational> RowSpace::reduce(std::vector<Rational> row) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational c = row[pivots_[k]];
    if (c.is_zero()) continue;
    const auto& b = rows_[k];
    for (std::size_t j = pivots_[k]; j < cols_; ++j)
      if (!b[j].is_zero()) row[j] -= c * b[j];
  }
  return row;
}

bool RowSpace::contains(const std::vector<Rational>& row) const {
  auto r = reduce(row);
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<Rational> RowSpace::coords(const std::vector<Rational>& v) const {
  std::vector<Rational> c(rows_.size());
  for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

Matrix RowSpace::to_matrix() const {
  Matrix m(rows_.size(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = rows_[i][j];
  return m;
}

Matrix row_space_basis(const Matrix& m) {
  RowSpace rs(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) rs.insert(m.row(i));
  return rs.to_matrix();
}

}  // namespace picodim
