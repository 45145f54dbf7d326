#pragma once

// Deflation-accelerated conjugate gradients: the eigenpairs are found one
// after another by preconditioned nonlinear CG minimization of the Rayleigh
// quotient on the orthogonal complement of the vectors already found.
// No linear systems are solved.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/eigenpairs.hpp"
#include "lapeig/ic0.hpp"
#include "lapeig/kernels.hpp"

namespace lapeig {

struct DacgOptions {
  Index neig = 1;
  double delta = 1e-6;
  Index maxit_per_pair = 20000;
  Index restart_period = 0;  // steepest-descent reset period; 0 selects max(1, n/10)
  std::uint64_t seed = 1;
  std::optional<Vector> start;  // first pair only
  // (pair index, iteration, Rayleigh quotient, ||A x - q x|| / q)
  std::function<void(Index, Index, double, double)> observer;
};

struct RqGradient {
  double q = 0.0;
  Vector gradient;  // 2 (A x - q x) / (x^T x)
  Vector ax;
};

// q(x) = x^T A x / x^T x and its gradient; exactly one MVP. Throws
// std::invalid_argument for x = 0.
RqGradient rq_gradient(const CsrMatrix& a, std::span<const double> x, MvpCounter& counter);

struct LineSearchResult {
  double t = 0.0;       // q(x + t p) minimal; infinite when the minimizer is p itself
  double q = 0.0;       // Rayleigh quotient at the minimizer
  Vector x;             // unit minimizer in span{x, p}
  Vector ax;            // A x for the returned x, without an extra MVP
  bool degenerate = false;  // p parallel to x: zero step, x returned normalized
};

// Exact minimization of the Rayleigh quotient over span{x, p} through the
// 2x2 projected eigenproblem; one MVP (A p). `ax` must equal A x.
LineSearchResult rq_line_search(const CsrMatrix& a, std::span<const double> x,
                                std::span<const double> p, std::span<const double> ax,
                                MvpCounter& counter);

// Iterations spent on each pair are reported in per_pair_iterations.
SolveResult dacg_smallest(const CsrMatrix& a, const Ic0Factor& f, const DeflationBasis& null_basis,
                          const DacgOptions& options);

}  // namespace lapeig
