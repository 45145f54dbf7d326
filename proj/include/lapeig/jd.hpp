#pragma once

// Jacobi-Davidson for the smallest positive eigenpairs: Rayleigh-Ritz
// extraction over a bounded search space expanded by inexact solutions of
// the projected correction equation, with converged pairs locked into the
// projector one at a time.

#include <cstdint>
#include <functional>
#include <optional>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/dense_eig.hpp"
#include "lapeig/eigenpairs.hpp"
#include "lapeig/ic0.hpp"

namespace lapeig {

struct JdOptions {
  Index neig = 1;
  double delta = 1e-6;
  double delta_pcg = 1e-2;
  Index itmax_inner = 20;
  Index m_min = 5;
  Index m_max = 10;
  Index max_outer = 20000;
  Index stagnation_window = 200;  // outer iterations without a new best residual
  std::uint64_t seed = 1;
  std::optional<Vector> start;
  // Called once per Rayleigh-Ritz extraction: (pair index, search space
  // dimension, theta, ||r|| / theta).
  std::function<void(Index, Index, double, double)> observer;
};

// Search space V, its image W = A V and H = V^T A V.
struct JdWorkspace {
  std::vector<Vector> v;
  std::vector<Vector> w;
  DenseSym h;
  Index m_min = 5;
  Index m_max = 10;

  Index dim() const { return v.size(); }
  // Adds an orthonormalized column and its image; H gains the averaged
  // cross terms (v_i.w + v.w_i)/2 so it stays exactly symmetric.
  void append(Vector column, Vector image);
};

struct RitzPair {
  double theta = 0.0;
  Vector y;   // coefficients in V
  Vector u;   // V y, unit norm
  Vector au;  // W y
  Vector r;   // au - theta u
};

// Ritz pair for the `which`-th smallest eigenvalue of H; no MVP.
RitzPair rayleigh_ritz_extract(const JdWorkspace& ws, Index which = 0);

// Keeps `count` Ritz vectors starting at the `first`-th smallest, rebuilding
// W and H from the existing columns.
void jd_compress(JdWorkspace& ws, Index first, Index count);

// Shrinks the search space to the m_min smallest Ritz vectors.
void jd_restart(JdWorkspace& ws);

SolveResult jd_smallest(const CsrMatrix& a, const Ic0Factor& f, const DeflationBasis& null_basis,
                        const JdOptions& options);

}  // namespace lapeig
