#pragma once

// Preconditioned conjugate gradients restricted to the orthogonal
// complement of a deflation basis.

#include <functional>
#include <span>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/ic0.hpp"
#include "lapeig/kernels.hpp"
#include "lapeig/types.hpp"

namespace lapeig {

// y = Op(x). Operators that wrap a sparse matrix count their own products.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

LinearOperator matrix_operator(const CsrMatrix& a, MvpCounter& counter);
LinearOperator preconditioner_operator(const Ic0Factor& f);
LinearOperator identity_operator();

struct PcgOptions {
  double tol = 1e-8;   // on ||b - A x|| / ||b|| with b projected
  Index maxit = 1000;
};

enum class PcgStatus {
  converged,
  max_iterations,
  indefinite,  // p^T A p <= 0 met; current iterate returned
};

struct PcgOutcome {
  Vector solution;
  Index iterations = 0;  // operator applications
  double final_relres = 0.0;
  bool converged = false;
  PcgStatus status = PcgStatus::converged;
};

// Called after every iteration with the current iterate.
using PcgObserver = std::function<void(Index iteration, std::span<const double> x)>;

// Solves Op x = (I - QQ^T) b for x orthogonal to Q. The residual is
// re-projected every iteration and the preconditioned residual is projected
// as well. On indefinite curvature in the first iteration the projected
// preconditioned residual is returned so that callers always receive a
// usable direction. A right-hand side whose projection is below 1e-14 ||b||
// returns zero, converged, after 0 iterations.
PcgOutcome pcg_solve(const LinearOperator& op, const LinearOperator& precond,
                     std::span<const double> b, const PcgOptions& options,
                     const DeflationBasis& deflation, const PcgObserver& observer = {});

// Approximately solves
//   (I - QQ^T)(A - theta I)(I - QQ^T) s = -residual,  s orthogonal to Q,
// preconditioned with (I - QQ^T) K^{-1} (I - QQ^T). Inexact results are
// returned as-is.
PcgOutcome jd_correction_solve(const CsrMatrix& a, double theta, const DeflationBasis& q,
                               std::span<const double> residual, const Ic0Factor& f, double tol,
                               Index itmax, MvpCounter& counter);

}  // namespace lapeig
