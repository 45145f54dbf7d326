#include "lapeig/deflation.hpp"

#include <cmath>
#include <stdexcept>

#include "lapeig/kernels.hpp"
#include "lapeig/vector_ops.hpp"

namespace lapeig {

DeflationBasis::DeflationBasis(std::vector<Vector> columns) {
  cols_.reserve(columns.size());
  for (auto& c : columns) push_back(std::move(c));
}

DeflationBasis DeflationBasis::laplacian_kernel(const Components& comps) {
  std::vector<Index> sizes(comps.count, 0);
  for (Index l : comps.labels) ++sizes[l];
  std::vector<Vector> cols(comps.count, Vector(comps.labels.size(), 0.0));
  for (Index v = 0; v < comps.labels.size(); ++v) {
    const Index l = comps.labels[v];
    cols[l][v] = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
  }
  return DeflationBasis(std::move(cols));
}

void DeflationBasis::push_back(Vector unit_column) {
  if (!cols_.empty() && unit_column.size() != cols_.front().size()) {
    throw std::invalid_argument("DeflationBasis: dimension mismatch");
  }
  if (std::abs(norm2(unit_column) - 1.0) > kTolerance) {
    throw std::invalid_argument("DeflationBasis: column is not unit norm");
  }
  if (max_overlap(unit_column) > kTolerance) {
    throw std::invalid_argument("DeflationBasis: column is not orthogonal to the basis");
  }
  cols_.push_back(std::move(unit_column));
}

void DeflationBasis::project_out(std::span<double> x) const { lapeig::project_out(cols_, x); }

double DeflationBasis::max_overlap(std::span<const double> x) const {
  double m = 0.0;
  for (const auto& q : cols_) m = std::max(m, std::abs(dot(q, x)));
  return m;
}

}  // namespace lapeig
