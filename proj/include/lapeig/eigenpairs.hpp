#pragma once

#include "lapeig/report.hpp"
#include "lapeig/types.hpp"

namespace lapeig {

// Computed eigenpairs in ascending order of eigenvalue.
struct EigenPairSet {
  Vector values;
  std::vector<Vector> vectors;  // unit, mutually orthogonal
  Vector residuals;             // ||A u - theta u|| / theta per pair
  bool includes_kernel = false; // true when vectors[0] is e/sqrt(n)

  Index size() const { return values.size(); }
};

// What every eigensolver returns. On failure `pairs` holds whatever was
// accepted before the solver stopped.
struct SolveResult {
  EigenPairSet pairs;
  SolverReport report;
};

}  // namespace lapeig
