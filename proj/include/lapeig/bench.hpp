#pragma once

// Benchmark harness: load a graph, run the selected eigensolvers on its
// Laplacian with a shared IC(0) factor, and verify every accepted pair.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/eigenpairs.hpp"
#include "lapeig/graph.hpp"
#include "lapeig/report.hpp"
#include "lapeig/spectral.hpp"

namespace lapeig {

struct RunConfig {
  std::vector<SolverKind> solvers{SolverKind::dacg, SolverKind::jd, SolverKind::irlm};
  Index neig = 1;
  double delta = 1e-6;
  double delta_pcg = 1e-2;  // JD correction equation; IRLM solves to 1e-2 * delta
  Index itmax_inner = 20;
  Index m_min = 5;
  Index m_max = 10;
  Index ncv = 0;  // 0: automatic
  SigmaPolicy sigma = SigmaPolicy::midpoint;
  std::uint64_t seed = 1;
  std::string input;
  GraphFormat format = GraphFormat::edge_list;
  bool symmetrize = false;
  ReportFormat report = ReportFormat::table;
  bool allow_disconnected = false;
  bool parallel = false;
};

struct RunOutcome {
  GraphStats stats;            // of the graph actually solved
  Index dropped_nodes = 0;     // nodes outside the largest component
  double factor_seconds = 0.0;
  double ic0_shift = 0.0;
  double lambda_max = 0.0;        // power-method estimate
  std::vector<SolveResult> runs;  // in the order of config.solvers

  std::vector<SolverReport> reports() const;
  // Shift for the pseudoinverse approximation from the first converged run;
  // 0 when no run converged.
  double sigma(SigmaPolicy policy) const;
  bool all_converged() const;
};

// Thrown when the graph is disconnected and allow_disconnected is off.
class DisconnectedInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solves on an already-built graph. Solver failures are recorded in the
// corresponding report, never thrown.
RunOutcome run(const RunConfig& config, const EdgeList& graph);

// Loads config.input first; InputError propagates.
RunOutcome run(const RunConfig& config);

// ||A u - theta u|| / theta for each pair, recomputed with fresh products.
Vector verify_residuals(const CsrMatrix& a, const EigenPairSet& pairs);

}  // namespace lapeig
