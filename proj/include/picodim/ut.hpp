#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "picodim/algebra.hpp"

namespace picodim {

enum class InvolutionKind { Orthogonal, Symplectic };

std::string involution_name(InvolutionKind kind);  // "orth" / "sympl"

// Associative algebra of upper triangular t x t matrices, basis e_ij for
// i <= j in lexicographic (i,j) order, all even, z-degree j - i.
AlgebraPtr build_ut(std::size_t t);

// basis position of e_ij (1-based indices, i <= j)
std::size_t ut_unit_index(std::size_t t, std::size_t i, std::size_t j);

// Anti-automorphism of square identity on UT_t, as the matrix whose column
// ut_unit_index(i,j) holds the coordinates of the image of e_ij.
// Orthogonal: reflection along the secondary diagonal. Symplectic (even t
// only): the reflection conjugated by diag(Id_m, -Id_m), which negates the
// upper-right m x m quarter.
Matrix involution(std::size_t t, InvolutionKind kind);

std::vector<Rational> apply_involution(const Matrix& inv, const std::vector<Rational>& x);

// 2x2 block matrices over UT_t: block position-major basis (11, 12, 21, 22),
// units in UT lex order inside each block; checkerboard parity.
std::size_t block_index(std::size_t t, std::size_t pos, std::size_t i, std::size_t j);

// Named elements of S(t); indices are 1-based like the matrix units.
// X_i = diag(e_ii - e_i'i' twice), Y_i = upper(e_ii + e_i'i'),
// Z_i = lower(e_ii - e_i'i') for i' = t+1-i and i = 1..m;
// E_ij = diag(e_ij, -e_ij*), I = diag(Id, -Id), Y0 = upper(Id);
// b = upper(e_{m+1,m+1}) for odd t = 2m+1.
struct SNamedElements {
  std::vector<Element> X, Y, Z;                       // index i-1 holds the i-th
  std::map<std::pair<std::size_t, std::size_t>, Element> E;  // 1 <= i <= j <= t
  Element Ibig, Y0;
  std::optional<Element> b;
};

// The Lie superalgebra S(t) = {(x, y; z, -x*)} inside the block superalgebra,
// coordinatized on its own basis: L0 = {diag(e_ij, -e_ij*)} in lex order,
// then the upper block over a basis of the symmetric part of UT_t, then the
// lower block over the antisymmetric part.
struct SAlgebra {
  AlgebraPtr algebra;                // S(t), is_super_lie, z-degree labelled
  AlgebraPtr blocks;                 // ambient block superalgebra
  std::vector<Element> basis_blocks; // S basis written in the ambient algebra
  RowSpace coordizer;                // tracks block coords -> S coords
  std::size_t t = 0;
  std::size_t m = 0;
  InvolutionKind kind = InvolutionKind::Orthogonal;
  SNamedElements named;

  SAlgebra() : coordizer(0) {}

  Element to_blocks(const Element& x) const;
  std::optional<Element> from_blocks(const Element& q) const;
};

SAlgebra build_S(std::size_t t, InvolutionKind kind, bool validate = true);

// "S(t=4,inv=orth)" / "S(t=5,inv=sympl)"
SAlgebra build_from_spec(const std::string& text);

struct ZIdealInfo {
  Subspace ideal;
  std::size_t codim;              // 2t (even t) or 2t-1 (odd t)
  std::size_t power_index;        // smallest k with I^(k) = 0, all bracketings
  std::size_t left_normed_index;  // same for left-normed powers
};

// The positive-degree part of the Z-grading, augmented by b for odd t;
// checked to be a nilpotent ideal before returning.
ZIdealInfo z_graded_ideal(const SAlgebra& S);

}  // namespace picodim
