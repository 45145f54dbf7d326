#pragma once

// Eigensolvers for the small projected problems (Lanczos T, Davidson H).

#include <span>

#include "lapeig/types.hpp"

namespace lapeig {

// Small dense symmetric matrix, row-major.
class DenseSym {
 public:
  DenseSym() = default;
  explicit DenseSym(Index dim) : dim_(dim), a_(dim * dim, 0.0) {}
  // Throws std::invalid_argument if entries.size() != dim*dim.
  DenseSym(Index dim, Vector entries);

  static DenseSym diagonal(std::span<const double> d);

  Index dim() const { return dim_; }
  double operator()(Index i, Index j) const { return a_[i * dim_ + j]; }
  double& operator()(Index i, Index j) { return a_[i * dim_ + j]; }
  // Sets (i,j) and (j,i).
  void set_sym(Index i, Index j, double v) {
    a_[i * dim_ + j] = v;
    a_[j * dim_ + i] = v;
  }
  // Grows to dim+1, new row/column zero.
  void grow();
  std::span<const double> entries() const { return a_; }

  double max_abs() const;
  // max |a_ij - a_ji| / max |a_ij|; 0 for a zero matrix.
  double asymmetry() const;

 private:
  Index dim_ = 0;
  Vector a_;
};

struct DenseEig {
  Vector values;                // ascending
  std::vector<Vector> vectors;  // vectors[k] is the unit eigenvector of values[k]
};

inline constexpr Index kDenseEigMaxDim = 512;

// Householder tridiagonalization followed by implicit shifted QL.
// Throws std::invalid_argument for asymmetric input (relative 1e-12) or
// dim above max_dim, std::runtime_error if QL fails to converge.
DenseEig dense_sym_eig(const DenseSym& h, Index max_dim = kDenseEigMaxDim);

// Symmetric tridiagonal matrix with diagonal `alpha` and off-diagonal `beta`
// (beta[k] couples k and k+1). Throws if beta.size() + 1 != alpha.size().
DenseEig tridiag_eig(std::span<const double> alpha, std::span<const double> beta);

}  // namespace lapeig
