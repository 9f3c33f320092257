#pragma once

#include <cstddef>
#include <vector>

#include "picodim/rational.hpp"

namespace picodim {

// Dense row-major rational matrix. Values are immutable by convention once a
// matrix is handed to rank / row_space_basis; those functions never mutate
// their argument.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const;

  // rows of `other` appended below
  Matrix vstack(const Matrix& other) const;
  // columns of `other` appended to the right
  Matrix hstack(const Matrix& other) const;

  std::vector<Rational> row(std::size_t i) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

// Exact rank over Q. Fraction-free (Bareiss) elimination on a row-scaled
// integer copy; deterministic pivoting (first nonzero row per column).
std::size_t rank(const Matrix& m);

// Canonical reduced row echelon basis of the row space; row count = rank(m).
Matrix row_space_basis(const Matrix& m);

// Incremental reduced-echelon accumulator for a row space. Rows are kept
// fully reduced with unit pivots in increasing pivot-column order, so the
// held basis is the canonical RREF of the span regardless of insertion order.
class RowSpace {
public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  // returns true if the row enlarged the space
  bool insert(std::vector<Rational> row);

  // residual of `row` after reduction against the basis; zero iff contained
  std::vector<Rational> reduce(std::vector<Rational> row) const;
  bool contains(const std::vector<Rational>& row) const;

  // coordinates of a member vector in the held basis (its values at the
  // pivot columns); only meaningful when contains(v) holds
  std::vector<Rational> coords(const std::vector<Rational>& v) const;

  const std::vector<std::vector<Rational>>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Matrix to_matrix() const;

private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace picodim
