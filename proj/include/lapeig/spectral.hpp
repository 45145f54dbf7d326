#pragma once

// Applications of the smallest Laplacian eigenpairs: algebraic
// connectivity, relaxed two-way partitioning, spectral gap diagnostics and
// low-rank pseudoinverse approximations.

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/eigenpairs.hpp"
#include "lapeig/report.hpp"
#include "lapeig/types.hpp"

namespace lapeig {

class DisconnectedGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FiedlerResult {
  double lambda2 = 0.0;
  Vector vector;  // unit norm, orthogonal to e
  double residual = 0.0;
  SolverReport report;
};

// Throws DisconnectedGraphError when the Laplacian has more than one
// connected component and std::runtime_error when the solver fails.
FiedlerResult fiedler(const CsrMatrix& laplacian, SolverKind solver, double delta,
                      std::uint64_t seed = 1);

struct RelaxedPartition {
  Vector x;
  double value = 0.0;  // (n1 n2 / n) lambda_2
};

// x = ((n1 - n2) / 2n) e + sqrt(n1 n2 / n) v2 with v2 re-projected onto the
// complement of e and renormalized. Throws std::invalid_argument unless
// n1, n2 >= 1 and n1 + n2 = n.
RelaxedPartition partition_relaxed(const EigenPairSet& pairs, Index n1, Index n2);

// Labels 0 (V1: the n1 largest entries) and 1 (V2); ties go to the lower index.
std::vector<int> sign_partition(std::span<const double> x, Index n1, Index n2);

// Total weight of the edges crossing a 0/1 labelling.
double cut_weight(const CsrMatrix& laplacian, std::span<const int> labels);

// Node permutation sorting x ascending (ties by index).
std::vector<Index> fiedler_order(std::span<const double> x);

enum class PinvKind { truncated, shifted };

// T = sum_{i<k} (1/lambda_i) v_i v_i^T over the first k positive pairs;
// S = (1/sigma)(I - e e^T/n) + sum_{i<k} (1/lambda_i - 1/sigma) v_i v_i^T.
// k counts positive eigenpairs, so k = n - 1 uses the whole spectrum.
struct PinvApprox {
  PinvKind kind = PinvKind::truncated;
  Index k = 0;
  double sigma = 0.0;
  const EigenPairSet* pairs = nullptr;
};

PinvApprox make_truncated(const EigenPairSet& pairs, Index k);
PinvApprox make_shifted(const EigenPairSet& pairs, Index k, double sigma);

Vector pinv_apply(const PinvApprox& p, std::span<const double> v);

constexpr Index kMaterializeLimit = 2000;
// Dense row-major n x n matrix; refused above kMaterializeLimit.
Vector materialize(const PinvApprox& p, Index n);

// Rayleigh quotient after `iterations` power steps from a seeded start
// orthogonal to e.
double estimate_lambda_max(const CsrMatrix& laplacian, Index iterations = 20,
                           std::uint64_t seed = 1);

enum class SigmaPolicy { midpoint, lambda_k };

// midpoint: (lambda_k + lambda_max) / 2, lambda_k: the largest eigenvalue in
// the explicit part. Requires k >= 1.
double choose_sigma(SigmaPolicy policy, const EigenPairSet& pairs, Index k, double lambda_max);

constexpr double kInfiniteSeparation = std::numeric_limits<double>::infinity();

struct GapRatios {
  double gap = 0.0;  // last / first
  Vector xi;         // xi_j = l_j / (l_{j+1} - l_j), kInfiniteSeparation on ties
};

// Throws std::invalid_argument unless the values are positive and ascending.
GapRatios gap_ratios(std::span<const double> values);

}  // namespace lapeig
