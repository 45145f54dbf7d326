#pragma once

// Restarted Lanczos on the inverse operator: the largest eigenvalues of A^{-1}
// on the complement of the kernel give the smallest positive eigenvalues of A.
// Every step solves A w = v by deflated PCG with the IC(0) preconditioner.

#include <cstdint>
#include <optional>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/dense_eig.hpp"
#include "lapeig/eigenpairs.hpp"
#include "lapeig/ic0.hpp"
#include "lapeig/kernels.hpp"
#include "lapeig/report.hpp"
#include "lapeig/rng.hpp"

namespace lapeig {

struct IrlmOptions {
  Index neig = 1;
  Index ncv = 0;           // 0 selects default_ncv(neig)
  double delta = 1e-6;
  double delta_pcg = 0.0;  // 0 selects 1e-2 * delta
  Index pcg_maxit = 2000;
  Index max_restarts = 500;
  std::uint64_t seed = 1;
  std::optional<Vector> start;  // overrides the random start vector
};

// 15, 30, 60, 120 for 1, 5, 20, 50 wanted pairs, linear in between and
// extrapolated along the last segment.
Index default_ncv(Index neig);

// Lanczos basis and projected matrix. After a thick restart the first
// `kept` columns are Ritz vectors: T is diagonal there (alpha) and couples
// to column `kept` through `coupling`; the rest of T is tridiagonal with
// beta[j] linking columns j and j+1. beta.back() is the norm of the last
// unnormalized residual, whose direction is stored in `next`.
struct LanczosState {
  std::vector<Vector> basis;
  Vector alpha;
  Vector beta;
  Index kept = 0;
  Vector coupling;
  Vector next;  // unit start vector of the next step; empty when the space is exhausted
  Index ncv = 0;

  Index m() const { return basis.size(); }
};

struct LanczosStepResult {
  Index pcg_iterations = 0;
  bool inner_converged = true;
  bool breakdown = false;  // invariant subspace reached
};

// Appends `next` to the basis, solves A w = next, orthogonalizes w and
// records alpha/beta. On breakdown (beta < max(1e-12, 10 delta_pcg) ||w||)
// `next` becomes a random unit vector orthogonal to the basis and the
// kernel and beta is 0.
LanczosStepResult inverse_lanczos_step(LanczosState& state, const CsrMatrix& a, const Ic0Factor& f,
                                       double delta_pcg, Index pcg_maxit,
                                       const DeflationBasis& null_basis, MvpCounter& counter,
                                       Rng& rng);

// Dense copy of the projected matrix T.
DenseSym projected_matrix(const LanczosState& state);

// Smallest `neig` strictly positive eigenpairs, each with
// ||A u - theta u|| / theta <= delta (and their mean as well).
// Throws std::invalid_argument for inconsistent options.
SolveResult irlm_smallest(const CsrMatrix& a, const Ic0Factor& f, const DeflationBasis& null_basis,
                          const IrlmOptions& options);

}  // namespace lapeig
