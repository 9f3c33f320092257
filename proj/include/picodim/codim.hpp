#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "picodim/algebra.hpp"
#include "picodim/poly.hpp"
#include "picodim/rational.hpp"
#include "picodim/symfunc.hpp"
#include "picodim/ut.hpp"

namespace picodim {

// One sector (k even variables, m odd variables) of the multilinear theory
// of an algebra: the dimension of the span of evaluated monomials, the
// multiplicities of the irreducible pieces under the variable permutations,
// and their total.
struct SectorReport {
  std::size_t k = 0;
  std::size_t m = 0;
  unsigned long long codim = 0;
  std::map<std::pair<Partition, Partition>, unsigned long long> multiplicities;
  unsigned long long colength = 0;
};

struct CodimRow {
  std::size_t n = 0;
  std::vector<SectorReport> sectors;  // k ascending from 0 to n
  unsigned long long c_gr = 0;        // sum of binom(n,k) * sector codim
  unsigned long long l_gr = 0;        // sum of sector colengths
  std::string root;                   // display decimal of c_gr^(1/n), 4 places
};

struct CodimTable {
  std::string algebra;
  std::vector<CodimRow> rows;  // n = 1 .. n_max
  bool with_multiplicities = true;
};

struct CodimOptions {
  std::size_t codim_cap = 7;    // max total degree k + m
  std::size_t cochar_cap = 6;   // max k and max m for multiplicity extraction
  std::size_t threads = 1;
  bool with_multiplicities = true;
};

// Dimension of the span of all evaluated left-normed monomials in k even and
// m odd variables: the rank of the matrix whose rows are the n! monomials
// and whose columns are (basis substitution tuple, coordinate) pairs. Even
// slots range over a basis of the even part, odd slots over the odd part,
// tuples in lexicographic order of basis indices.
unsigned long long partial_codimension(const AlgebraPtr& alg, std::size_t k,
                                       std::size_t m, std::size_t cap = 7);

// Same rank from an explicit spanning list (each multilinear in one shared
// variable set), via the generic polynomial evaluator. Slow path; rank is
// independent of the listing order and of variable names.
unsigned long long sector_rank(const AlgebraPtr& alg,
                               const std::vector<MultiPoly>& basis);

// Full sector analysis: codimension plus the multiplicity of each pair of
// shapes (lambda over the even variables, mu over the odd ones) in the
// induced permutation action on the evaluated span, via traces per conjugacy
// class pair. Non-integral or negative multiplicities abort: they would mean
// the engine itself is inconsistent.
SectorReport cocharacter(const AlgebraPtr& alg, std::size_t k, std::size_t m,
                         std::size_t cochar_cap = 6, std::size_t codim_cap = 7);

// d(n+1)^(d*d+d+1) where d = dim_l; every graded colength sits below this
Rational colength_bound(std::size_t dim_l, std::size_t n);

// Sum of sector colengths for one total degree n; checks the colength_bound
// and refuses to return a value above it.
unsigned long long colength(const std::vector<SectorReport>& sectors,
                            std::size_t dim_l);

// True when every nonzero multiplicity respects the nilpotent-ideal
// constraints: cells of lambda below row d0 and of mu below row d1 are
// bounded by the ideal's nilpotency index.
bool check_ideal_vanishing(const SectorReport& report, std::size_t d0,
                           std::size_t d1, std::size_t index);

// Even/odd dimensions of the quotient by the z-graded ideal, counted from
// the basis elements outside the ideal.
std::pair<std::size_t, std::size_t> quotient_dims(const SAlgebra& S,
                                                  const ZIdealInfo& info);

struct UpperBoundRow {
  std::size_t k = 0;
  std::size_t m = 0;
  unsigned long long codim = 0;
  Rational admissible_sum;  // sum of d_lambda * d_mu over admissible shapes
  Rational bound;           // colength_bound factor times admissible_sum
  bool holds = false;
  Rational margin;  // bound - codim
};

struct UpperBoundReport {
  std::size_t n = 0;
  std::vector<UpperBoundRow> rows;  // k ascending
  bool all_hold = false;
};

// Checks each sector codimension of degree n against the shape-restricted
// upper bound: d(n+1)^(d*d+d+1) times the sum of d_lambda*d_mu over pairs
// with height at most d and below-row cell counts bounded by the ideal's
// nilpotency index. Asserts only "<=".
UpperBoundReport upper_bound_check(const SAlgebra& S, const ZIdealInfo& info,
                                   const std::vector<SectorReport>& sectors);

struct WitnessBoundReport {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t k = 0;  // even degree of the witness
  std::size_t m = 0;  // odd degree
  Partition lambda;   // shape over the even variables
  Partition mu;       // shape over the odd variables
  unsigned long long bound = 0;  // d_lambda * d_mu
  bool cross_checked = false;
  unsigned long long exact = 0;  // sector codimension, when cross_checked
};

// Certified lower bound d_lambda * d_mu for the witness's sector, emitted
// only after the alternated witness evaluates nonzero on S. Shapes are the
// rectangles (q^(2m)) and (p^(2m)) for even t, with the taller (q^(2m+1))
// for odd t. When the sector fits under the cap the exact codimension is
// computed and the bound checked against it.
WitnessBoundReport witness_lower_bound(const std::shared_ptr<const SAlgebra>& S,
                                       std::size_t p, std::size_t q,
                                       std::size_t codim_cap = 7);

// one display decimal per table row
std::vector<std::string> root_sequence(const CodimTable& table);

CodimRow graded_codimension(const AlgebraPtr& alg, std::size_t n,
                            const CodimOptions& opt = {});

CodimTable codim_table(const AlgebraPtr& alg, const std::string& algebra_name,
                       std::size_t n_max, const CodimOptions& opt = {});

// Stable serializations: integers above structural indices are emitted as
// decimal strings. Both end with a newline and are byte-stable across runs
// and thread counts.
std::string table_json_text(const CodimTable& table);
std::string table_csv_text(const CodimTable& table);

}  // namespace picodim
