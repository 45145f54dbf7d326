#pragma once

// Incomplete Cholesky factorization with no fill-in, used as the
// preconditioner K^{-1} = (L L^T)^{-1} by all three eigensolvers.

#include <span>
#include <stdexcept>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/types.hpp"

namespace lapeig {

class Ic0Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Ic0Factor {
 public:
  Ic0Factor() = default;
  // `l` must be lower triangular with a strictly positive stored diagonal.
  Ic0Factor(CsrMatrix l, double shift, int attempts);

  static Ic0Factor identity(Index n);

  const CsrMatrix& lower() const { return l_; }
  Index n() const { return l_.n(); }
  // Relative diagonal shift alpha: the factored matrix is A + alpha*diag(A).
  double shift() const { return shift_; }
  // Number of escalations beyond the first shift tried.
  int attempts() const { return attempts_; }

  // Solves L L^T z = r.
  void apply(std::span<const double> r, std::span<double> z) const;

 private:
  CsrMatrix l_;
  Vector diag_;
  double shift_ = 0.0;
  int attempts_ = 0;
};

// Shifts tried in order: shift0, then each of 1e-8, 1e-6, 1e-4, 1e-3, 1e-2,
// 0.1*max_diag that exceeds shift0.
std::vector<double> ic0_shift_schedule(double shift0, double max_diag);

// Factors A + alpha*diag(A) on the lower pattern of A, escalating alpha
// through the schedule whenever a pivot drops to <= 1e-14*A_ii. Requires a
// symmetric matrix with positive diagonal; throws Ic0Error when every
// shift fails.
Ic0Factor ic0_factorize(const CsrMatrix& a, double shift0 = 0.0);

Vector precond_apply(const Ic0Factor& f, std::span<const double> r);

// z = (I - QQ^T) K^{-1} (I - QQ^T) r
Vector projected_precond_apply(const Ic0Factor& f, const DeflationBasis& q,
                               std::span<const double> r);

}  // namespace lapeig
