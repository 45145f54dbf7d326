#pragma once

#include <span>

#include "lapeig/graph.hpp"
#include "lapeig/types.hpp"

namespace lapeig {

// Set of orthonormal vectors whose span is excluded from an iteration: the
// Laplacian kernel, previously converged eigenvectors, the current Ritz vector.
class DeflationBasis {
 public:
  static constexpr double kTolerance = 1e-10;

  DeflationBasis() = default;
  // Throws std::invalid_argument unless the columns are orthonormal to 1e-10.
  explicit DeflationBasis(std::vector<Vector> columns);

  // One normalized constant vector per connected component.
  static DeflationBasis laplacian_kernel(const Components& comps);

  std::span<const Vector> columns() const { return cols_; }
  Index size() const { return cols_.size(); }
  bool empty() const { return cols_.empty(); }

  // Appends a unit vector orthogonal to the current columns (checked).
  void push_back(Vector unit_column);
  void pop_back() { cols_.pop_back(); }

  // x -= Q Q^T x
  void project_out(std::span<double> x) const;
  // Largest |q_j . x| over the columns.
  double max_overlap(std::span<const double> x) const;

 private:
  std::vector<Vector> cols_;
};

}  // namespace lapeig
