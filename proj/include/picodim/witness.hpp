#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "picodim/poly.hpp"
#include "picodim/ut.hpp"

namespace picodim {

// Bracket expression over variables; children fold left-normed,
// [c1,...,ck] = [[c1,c2],...,ck]. A leaf has no children.
struct BracketTree {
  Variable leaf;
  std::vector<BracketTree> children;

  bool is_leaf() const { return children.empty(); }
  static BracketTree make_leaf(Variable v);
  static BracketTree make_node(std::vector<BracketTree> ch);

  Parity parity() const;
  void collect_variables(std::vector<Variable>& out) const;
};

// A witness polynomial: unexpanded bracket structure, its alternating sets,
// and the designated assignment into a concrete S(t).
struct WitnessSpec {
  BracketTree tree;
  std::vector<std::vector<Variable>> alt_sets;
  Assignment assignment;
  std::shared_ptr<const SAlgebra> target;
  std::string description;

  std::size_t degree() const;
  std::size_t even_degree() const;
};

// The three small replicated elements; level selects which one. All are
// built over S(2m) together with their canonical assignments.
WitnessSpec witness_a(int level, std::size_t m, InvolutionKind kind = InvolutionKind::Orthogonal);
WitnessSpec witness_a(int level, std::size_t m, std::shared_ptr<const SAlgebra> S);

// The replicated element w(p,q) over S(t) with q even and p odd alternating
// sets. Even t uses sets of size 2m = t; odd t uses even sets of size t.
WitnessSpec witness_W(std::size_t p, std::size_t q, std::size_t t, InvolutionKind kind);
WitnessSpec witness_W(std::size_t p, std::size_t q, std::shared_ptr<const SAlgebra> S);

// [w, px_1..px_i, py_1..py_j]: even pads map to E_11, odd pads alternate
// Z_1, Y_1, Z_1, ... starting with Z_1.
WitnessSpec padded_witness(const WitnessSpec& w, std::size_t i, std::size_t j);

// tree evaluation with the stored assignment, alternations ignored
Element eval_plain(const WitnessSpec& w);
Element eval_plain(const WitnessSpec& w, const Assignment& a);

// sum over independent permutations of every alternating set, each term a
// tree evaluation of the permuted assignment with its plain sign
Element eval_alternated(const WitnessSpec& w);
Element eval_alternated(const WitnessSpec& w, const Assignment& a);

// Left-normed expansion of the bracket structure. Term budget guards the
// exponential blowup; exceeding it throws with the estimated size.
MultiPoly flatten_tree(const BracketTree& t, std::uint64_t budget = 10000000);

// witness as a textual polynomial script: flattened terms plus symbolic
// alternating-set declarations
PolyScript witness_script(const WitnessSpec& w, std::uint64_t budget = 10000000);

// Streams the fully expanded alternation of the flattened polynomial into a
// term-by-term evaluation and compares with eval_alternated. A cost above
// the budget is reported as capped, not checked.
struct ConsistencyReport {
  bool checked = false;
  bool consistent = false;
  std::uint64_t term_count = 0;  // exact when checked, an estimate when capped
  std::string note;
};
ConsistencyReport alternation_consistency(const WitnessSpec& w, std::uint64_t budget = 10000000);

}  // namespace picodim
