#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "picodim/ut.hpp"

namespace picodim {

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckLine> lines;
  bool all_pass() const;
};

// Full structural audit of one algebra S(t): grading closure and the super
// Jacobi identity revalidated on all basis triples, the four block bracket
// formulas on random block elements, the generator relation table, the
// involution axioms on the upper triangular matrices, nilpotency and
// codimension of the graded ideal, and for odd t the vanishing cube of
// ad b. Every check is exact.
CheckReport verify_structure(const SAlgebra& S, std::size_t samples = 100,
                             std::uint64_t seed = 20240821);

// Observations where a conventional printed normalization and the computed
// value part ways; recomputed from S on every call.
std::vector<std::string> discrepancy_log(const SAlgebra& S);

}  // namespace picodim
