#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "picodim/matrix.hpp"

namespace picodim {

enum class Parity : int { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return Parity((static_cast<int>(a) + static_cast<int>(b)) % 2);
}

// sparse coordinate vector, index-sorted, entries nonzero
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

class GradedAlgebra;
class Element;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Finite-dimensional Z2-graded algebra given by structure constants.
// Immutable after create(); safe to share across threads.
class GradedAlgebra : public std::enable_shared_from_this<GradedAlgebra> {
 public:
  // table is row-major d*d: table[i*d+j] = coordinates of basis_i * basis_j.
  // With validate on, checks Z2-grading closure, the optional Z-grading
  // closure, and (when expect_super_lie) super-anticommutativity plus the
  // super Jacobi identity on all basis triples; throws on violation.
  static AlgebraPtr create(std::string name, std::vector<Parity> parity,
                           std::vector<SparseVec> table,
                           std::optional<std::vector<long>> z_degree,
                           bool expect_super_lie, bool validate = true);

  std::size_t dim() const { return parity_.size(); }
  Parity parity(std::size_t i) const { return parity_[i]; }
  const std::vector<Parity>& parities() const { return parity_; }
  const std::optional<std::vector<long>>& z_degree() const { return z_degree_; }
  const std::string& name() const { return name_; }
  bool is_super_lie() const { return is_super_lie_; }

  const SparseVec& product_entry(std::size_t i, std::size_t j) const {
    return table_[i * dim() + j];
  }
  // bilinear extension of the structure table to coordinate vectors
  std::vector<Rational> product(const std::vector<Rational>& a,
                                const std::vector<Rational>& b) const;

  Element basis_element(std::size_t i) const;
  Element zero() const;
  Element element(std::vector<Rational> coords) const;

 private:
  GradedAlgebra(std::string name, std::vector<Parity> parity,
                std::vector<SparseVec> table,
                std::optional<std::vector<long>> z_degree, bool is_super_lie);

  std::string name_;
  std::vector<Parity> parity_;
  std::vector<SparseVec> table_;
  std::optional<std::vector<long>> z_degree_;
  bool is_super_lie_;
};

// Coordinate vector in a fixed algebra basis.
class Element {
 public:
  Element() = default;
  Element(AlgebraPtr alg, std::vector<Rational> coords);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<Rational>& coords() const { return coords_; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const;
  Element even_part() const;
  Element odd_part() const;
  // true when the odd (resp. even) part vanishes; zero is both
  bool is_even() const { return odd_part().is_zero(); }
  bool is_odd() const { return even_part().is_zero(); }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element operator*(const Rational& c) const;
  Element& operator+=(const Element& o);
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

 private:
  AlgebraPtr alg_;
  std::vector<Rational> coords_;
};

inline Element operator*(const Rational& c, const Element& e) { return e * c; }

// The algebra's own product extended bilinearly. For an algebra built by
// superbracket_algebra this is the supercommutator of the associative input.
Element bracket(const Element& a, const Element& b);

// Supercommutator algebra of an associative Z2-graded algebra:
// [x,y] = xy - (-1)^{|x||y|} yx on homogeneous basis elements.
// Verifies associativity of the input on all basis triples first; validate
// false skips that and the output's super Jacobi check (both are O(dim^3)).
AlgebraPtr superbracket_algebra(const AlgebraPtr& assoc, bool validate = true);

// Echelonized linear subspace of a fixed algebra. Immutable.
class Subspace {
 public:
  explicit Subspace(AlgebraPtr alg);  // zero subspace
  static Subspace span(AlgebraPtr alg, const std::vector<Element>& gens);
  static Subspace full(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t dim() const { return rows_.rank(); }
  bool is_zero() const { return dim() == 0; }
  bool contains(const Element& e) const;
  std::vector<Element> basis_elements() const;
  Matrix basis_matrix() const { return rows_.to_matrix(); }
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  AlgebraPtr alg_;
  RowSpace rows_;
  friend Subspace bracket_span(const Subspace&, const Subspace&);
  friend Subspace sum(const Subspace&, const Subspace&);
};

// span of brackets of basis pairs
Subspace bracket_span(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// L >= [L,L] >= [[L,L],[L,L]] >= ... until stabilization; last term is 0
// iff solvable.
std::vector<Subspace> derived_series(const AlgebraPtr& alg);

// All-bracketings powers: I^(k+1) = sum over a+b=k+1 of [I^(a), I^(b)],
// returned until stabilization. Last term 0 iff nilpotent; the index m+1
// with I^(m+1)=0 is then the chain length.
std::vector<Subspace> power_series(const Subspace& sub);

// Left-normed powers I^(k+1) = [I^(k), I]; the companion index recorded in
// reports next to the all-bracketings one.
std::vector<Subspace> left_normed_power_series(const Subspace& sub);

// Matrix of y -> [y, x]; column j holds the coordinates of [basis_j, x].
Matrix ad_operator(const Element& x);

// Smallest subspace containing gens and closed under bracketing with the
// whole algebra (super Lie only, so one-sided closure suffices).
Subspace ideal_generated(const AlgebraPtr& alg, const std::vector<Element>& gens);

// JSON round-trip: {name, dim, parity, z_degree?, structure} with structure
// a sparse list of [i, j, [[k, num, den], ...]]. Output is byte-stable.
std::string algebra_to_json_string(const GradedAlgebra& alg);
AlgebraPtr algebra_from_json_string(const std::string& text);
void save_algebra(const GradedAlgebra& alg, const std::string& path);
AlgebraPtr load_algebra(const std::string& path);

}  // namespace picodim
