#pragma once

// Kernels shared by every solver: counted sparse products and Gram-Schmidt.

#include <cstdint>
#include <initializer_list>
#include <span>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/types.hpp"

namespace lapeig {

// Number of sparse matrix-vector products performed during one solver run.
class MvpCounter {
 public:
  void tick() { ++count_; }
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_ = 0;
};

// y = A x. Throws std::invalid_argument on dimension mismatch.
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y, MvpCounter& counter);
Vector spmv(const CsrMatrix& a, std::span<const double> x, MvpCounter& counter);

struct MgsResult {
  Vector v;           // unit vector orthogonal to every basis column (unless breakdown)
  double norm = 0.0;  // norm after orthogonalization, before normalizing
  bool breakdown = false;
};

// Modified Gram-Schmidt against one or more sets of orthonormal columns,
// with a second pass when the first shrinks the norm below 0.7 of its
// previous value. Breakdown is reported when the remaining norm is below
// 1e-14 of the input norm.
MgsResult mgs_orthonormalize(Vector v, std::initializer_list<std::span<const Vector>> bases);
MgsResult mgs_orthonormalize(Vector v, std::span<const Vector> basis);

// x -= sum_j (q_j . x) q_j, one modified Gram-Schmidt sweep.
void project_out(std::span<const Vector> basis, std::span<double> x);

}  // namespace lapeig
