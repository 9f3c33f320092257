#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "picodim/poly.hpp"
#include "picodim/rational.hpp"

namespace picodim {

// Integer partition with weakly decreasing positive parts. The empty
// partition (weight 0) is allowed.
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<std::size_t> parts);

  const std::vector<std::size_t>& parts() const { return parts_; }
  std::size_t weight() const;
  std::size_t height() const { return parts_.size(); }
  // part(i) is 0 for i >= height(); 0-based
  std::size_t part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition conjugate() const;

  // cells strictly below row d, i.e. sum of parts d+1, d+2, ...
  std::size_t cells_below_row(std::size_t d) const;

  // "(3,1,1)"; the empty partition prints as "()"
  std::string str() const;

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

private:
  std::vector<std::size_t> parts_;
};

// all partitions of m, descending lexicographic: (m) first, (1^m) last
std::vector<Partition> partitions_of(std::size_t m);

// dimension of the irreducible S_m representation indexed by lambda,
// m! divided by the product of hook lengths
unsigned long long hook_dimension(const Partition& lambda);

// number of standard fillings of the shape, counted by backtracking over
// placements of 1..m; independent of hook_dimension
unsigned long long standard_tableau_count(const Partition& shape);

// order of the centralizer of a permutation of cycle type cls:
// prod over part sizes i of i^{a_i} * a_i!
unsigned long long centralizer_order(const Partition& cls);

// size of the conjugacy class of cycle type cls in S_{weight}
unsigned long long class_size(const Partition& cls);

// irreducible character chi_lambda evaluated on the class of cycle type cls.
// Both partitions must have the same weight. Values are integers but the
// return type matches the scalar field used everywhere else.
Rational mn_character(const Partition& lambda, const Partition& cls);

// Permutations of {0,...,m-1} in one-line notation: p[i] is the image of i.
// Composition applies the right factor first: compose(a,b)[i] = a[b[i]].
using Perm = std::vector<std::size_t>;

Perm perm_identity(std::size_t m);
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
int perm_sign(const Perm& p);
std::vector<Perm> all_permutations(std::size_t m);

// canonical permutation of the given cycle type: cycles laid out
// consecutively from 0, largest first
Perm class_representative(const Partition& cls);
Partition cycle_type(const Perm& p);

// Young tableau: shape filled bijectively with 1..m
struct Tableau {
  Partition shape;
  std::vector<std::vector<std::size_t>> rows;

  Tableau(Partition shape_in, std::vector<std::vector<std::size_t>> rows_in);

  // row-major filling 1..m
  static Tableau canonical(const Partition& shape);

  std::size_t weight() const { return shape.weight(); }
  // entries of column j (0-based), top to bottom
  std::vector<std::size_t> column(std::size_t j) const;
};

// Element of the rational group algebra of S_m
struct GroupAlgebraElement {
  std::size_t m = 0;
  std::map<Perm, Rational> support;

  static GroupAlgebraElement zero(std::size_t m);
  static GroupAlgebraElement unit(std::size_t m);

  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator*(const Rational& c) const;
  bool operator==(const GroupAlgebraElement& o) const;
  bool operator!=(const GroupAlgebraElement& o) const { return !(*this == o); }
};

// row and column stabilizers of T as explicit permutation lists,
// |rows| = prod lambda_i!, |cols| = prod lambda'_j!
std::pair<std::vector<Perm>, std::vector<Perm>> stabilizers(const Tableau& T,
                                                            std::size_t cap = 8);

// (sum over row stabilizer) * (signed sum over column stabilizer);
// weight above cap is refused
GroupAlgebraElement young_symmetrizer(const Tableau& T, std::size_t cap = 8);

// Substitute p(..., v_i, ...) -> p(..., v_{g(i)}, ...) where v_i is the i-th
// entry of `on`. Every listed variable must occur in p.
MultiPoly apply_permutation(const Perm& g, const MultiPoly& p,
                            const std::vector<Variable>& on);

// linear extension of apply_permutation over the support of g
MultiPoly apply_group_element(const GroupAlgebraElement& g, const MultiPoly& p,
                              const std::vector<Variable>& on);

// For the d x s rectangle nu = (s^d), N = sd: returns the dimension of the
// irreducible indexed by nu together with the comparison value
// N^{-d(d-1)/2} * d^N. No relation between the two is asserted here; at
// small s the dimension sits below the comparison value.
std::pair<unsigned long long, Rational> rectangular_lower_bound(std::size_t d,
                                                                std::size_t s);

}  // namespace picodim
