#pragma once

#include <map>
#include <string>
#include <vector>

#include "picodim/algebra.hpp"

namespace picodim {

// Named generator of the free graded algebra.
struct Variable {
  std::string name;
  Parity parity = Parity::Even;
};

// Ordering and map keys go by name; a polynomial never holds two variables
// with the same name and different parities.
inline bool operator==(const Variable& a, const Variable& b) {
  return a.name == b.name && a.parity == b.parity;
}
inline bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
inline bool operator<(const Variable& a, const Variable& b) { return a.name < b.name; }

// One left-normed bracket word [w0, w1, ..., w_{n-1}] with a coefficient.
// No variable repeats inside the word.
struct Monomial {
  Rational coeff;
  std::vector<Variable> word;
};

// Multilinear polynomial: every term uses exactly the same variable set.
// Canonical form: terms sorted by word, like terms merged, zeros dropped.
class MultiPoly {
 public:
  MultiPoly() = default;

  static MultiPoly zero(std::vector<Variable> vars);
  static MultiPoly monomial(Rational coeff, std::vector<Variable> word);
  static MultiPoly from_terms(std::vector<Monomial> terms);

  // sorted by name
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  std::size_t degree() const { return vars_.size(); }
  std::size_t even_count() const;
  bool is_zero() const { return terms_.empty(); }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const Rational& c) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

 private:
  std::vector<Variable> vars_;
  std::vector<Monomial> terms_;
};

// element per variable name
using Assignment = std::map<std::string, Element>;

// Left-normed evaluation of one word. Every variable must be assigned an
// element whose parity-pure part matches the variable's parity exactly.
Element evaluate_word(const std::vector<Variable>& word, const Assignment& a);

Element evaluate(const MultiPoly& p, const Assignment& a);

// Renames variables inside every word. images maps old name to new Variable;
// unmapped variables pass through. Parities must be preserved.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, Variable>& images);

// Sum over all permutations of subset with plain permutation signs. The
// subset must consist of distinct variables of p, all of one parity.
MultiPoly alternate(const MultiPoly& p, const std::vector<Variable>& subset);

// All (k+m)! left-normed words over x1..xk (even) and y1..ym (odd), in
// lexicographic order of the underlying permutation.
std::vector<std::vector<Variable>> spanning_words(std::size_t k, std::size_t m);
std::vector<MultiPoly> spanning_monomials(std::size_t k, std::size_t m);

// Text form: variable declarations, alternating-set declarations, then terms.
//   even x1
//   odd y1
//   alt {x1, x2}
//   -3/2 * [x1, y1, x2]
struct PolyScript {
  std::vector<Variable> declarations;
  std::vector<std::vector<Variable>> alt_sets;
  MultiPoly poly;
};

std::string poly_to_text(const PolyScript& s);
PolyScript poly_from_text(const std::string& text);

}  // namespace picodim
