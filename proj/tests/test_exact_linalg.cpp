#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "picodim/matrix.hpp"

using picodim::Matrix;
using picodim::Rational;
using picodim::RowSpace;

namespace {

// ---- oracles, deliberately independent of the library's elimination ----

// determinant by Laplace expansion along the first row
Rational det_laplace(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Rational(1);
  if (n == 1) return a[0][0];
  Rational d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<Rational>> sub(n - 1, std::vector<Rational>(n - 1));
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cj = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        sub[i - 1][cj++] = a[i][c];
      }
    }
    Rational term = a[0][j] * det_laplace(sub);
    d += (j % 2 == 0) ? term : -term;
  }
  return d;
}

bool has_nonzero_minor(const Matrix& m, std::size_t r, std::vector<std::size_t>& ri,
                       std::vector<std::size_t>& ci, std::size_t rpos, std::size_t cpos) {
  if (ri.size() == r && ci.size() == r) {
    std::vector<std::vector<Rational>> sub(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) sub[i][j] = m.at(ri[i], ci[j]);
    return !det_laplace(sub).is_zero();
  }
  if (ri.size() < r) {
    for (std::size_t i = rpos; i + (r - ri.size()) <= m.rows(); ++i) {
      ri.push_back(i);
      if (has_nonzero_minor(m, r, ri, ci, i + 1, cpos)) { ri.pop_back(); return true; }
      ri.pop_back();
    }
    return false;
  }
  for (std::size_t j = cpos; j + (r - ci.size()) <= m.cols(); ++j) {
    ci.push_back(j);
    if (has_nonzero_minor(m, r, ri, ci, rpos, j + 1)) { ci.pop_back(); return true; }
    ci.pop_back();
  }
  return false;
}

// rank as the largest r with a nonsingular r-by-r submatrix
std::size_t rank_by_minors(const Matrix& m) {
  std::size_t cap = std::min(m.rows(), m.cols());
  for (std::size_t r = cap; r >= 1; --r) {
    std::vector<std::size_t> ri, ci;
    if (has_nonzero_minor(m, r, ri, ci, 0, 0)) return r;
  }
  return 0;
}

// membership of v in the row span of B by solving x^T B = v with plain
// Gaussian elimination on the transposed system
bool in_row_span_by_solve(const Matrix& B, const std::vector<Rational>& v) {
  const std::size_t n = B.rows(), c = B.cols();
  // augmented system: columns of B (as rows) against v
  std::vector<std::vector<Rational>> a(c, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = B.at(j, i);
    a[i][n] = v[i];
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < c; ++col) {
    std::size_t p = row;
    while (p < c && a[p][col].is_zero()) ++p;
    if (p == c) continue;
    std::swap(a[p], a[row]);
    Rational inv = Rational(1) / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < c; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  // consistent iff no row reads 0 = nonzero
  for (std::size_t i = 0; i < c; ++i) {
    bool allz = true;
    for (std::size_t j = 0; j < n; ++j)
      if (!a[i][j].is_zero()) { allz = false; break; }
    if (allz && !a[i][n].is_zero()) return false;
  }
  return true;
}

Matrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("rank: identity and zero") {
  CHECK(picodim::rank(Matrix::identity(5)) == 5);
  CHECK(picodim::rank(Matrix(4, 7)) == 0);
  CHECK(picodim::rank(Matrix()) == 0);
}

TEST_CASE("rank agrees with minor-expansion oracle on random 6x6") {
  std::mt19937_64 rng(20260821);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix m = random_int_matrix(rng, 6, 6, -4, 4);
    // bias some trials toward singularity
    if (trial % 3 == 0)
      for (std::size_t j = 0; j < 6; ++j) m.at(5, j) = m.at(0, j) + m.at(1, j);
    if (trial % 5 == 0)
      for (std::size_t j = 0; j < 6; ++j) m.at(4, j) = m.at(2, j);
    CHECK(picodim::rank(m) == rank_by_minors(m));
  }
}

TEST_CASE("rank on rectangular shapes vs oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix m = random_int_matrix(rng, 4, 6, -3, 3);
    CHECK(picodim::rank(m) == rank_by_minors(m));
    Matrix t = m.transpose();
    CHECK(picodim::rank(t) == rank_by_minors(t));
  }
}

TEST_CASE("rank(A) == rank(transpose(A)); hstack dominates") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_int_matrix(rng, 5, 7, -5, 5);
    Matrix b = random_int_matrix(rng, 5, 3, -5, 5);
    std::size_t ra = picodim::rank(a);
    CHECK(ra == picodim::rank(a.transpose()));
    std::size_t rab = picodim::rank(a.hstack(b));
    CHECK(rab >= ra);
    CHECK(rab >= picodim::rank(b));
  }
}

TEST_CASE("row_space_basis: already-reduced and dependent inputs") {
  Matrix id3 = Matrix::identity(3);
  CHECK(row_space_basis(id3) == id3);

  Matrix two(2, 4);
  for (std::size_t j = 0; j < 4; ++j) { two.at(0, j) = Rational(long(j) + 1); two.at(1, j) = Rational(long(j) + 1); }
  Matrix b = row_space_basis(two);
  CHECK(b.rows() == 1);
  CHECK(b.at(0, 0) == Rational(1));
}

TEST_CASE("row_space_basis spans the input (membership by solving)") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_int_matrix(rng, 5, 8, -4, 4);
    if (trial % 2 == 0)
      for (std::size_t j = 0; j < 8; ++j) m.at(3, j) = m.at(0, j) - m.at(1, j);
    Matrix b = row_space_basis(m);
    CHECK(b.rows() == picodim::rank(m));
    CHECK(picodim::rank(b) == picodim::rank(m));
    for (std::size_t i = 0; i < m.rows(); ++i)
      CHECK(in_row_span_by_solve(b, m.row(i)));
    // and conversely every basis row is in the span of m
    for (std::size_t i = 0; i < b.rows(); ++i)
      CHECK(in_row_span_by_solve(m, b.row(i)));
  }
}

TEST_CASE("row_space_basis is idempotent and insertion-order independent") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_int_matrix(rng, 6, 5, -3, 3);
    Matrix b = row_space_basis(m);
    CHECK(row_space_basis(b) == b);

    RowSpace rs(m.cols());
    for (std::size_t i = m.rows(); i-- > 0;) rs.insert(m.row(i));
    CHECK(rs.to_matrix() == b);
  }
}

TEST_CASE("RowSpace: rank growth, membership, coordinates") {
  RowSpace rs(3);
  CHECK(rs.insert({Rational(1), Rational(2), Rational(3)}));
  CHECK(rs.insert({Rational(0), Rational(1), Rational(1)}));
  CHECK(!rs.insert({Rational(1), Rational(3), Rational(4)}));  // sum of the first two
  CHECK(rs.rank() == 2);
  CHECK(rs.contains({Rational(2), Rational(5), Rational(7)}));
  CHECK(!rs.contains({Rational(0), Rational(0), Rational(1)}));

  // coords recombine to the vector
  std::vector<Rational> v{Rational(2), Rational(5), Rational(7)};
  auto c = rs.coords(v);
  std::vector<Rational> rec(3, Rational(0));
  for (std::size_t k = 0; k < rs.basis().size(); ++k)
    for (std::size_t j = 0; j < 3; ++j) rec[j] += c[k] * rs.basis()[k][j];
  CHECK(rec == v);
}

TEST_CASE("scalar arithmetic: canonical form and field axioms") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(-4, -8).str() == "1/2");
  CHECK(Rational(0, 5).str() == "0");
  CHECK(Rational::from_string("6/21") == Rational(2, 7));
  CHECK(Rational::from_string("-3") == Rational(-3));
  CHECK_THROWS(Rational(1, 0));

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> num(-1000000000LL, 1000000000LL);
  std::uniform_int_distribution<long long> den(1, 1000000000LL);
  for (int i = 0; i < 200; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK((a + b) - b == a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}
