#pragma once

// Per-run counters and their table / CSV renderings.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lapeig/types.hpp"

namespace lapeig {

enum class SolverKind { dacg, jd, irlm };

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> parse_solver_kind(std::string_view name);

enum class SolveStatus {
  converged,
  max_iterations,       // restart / outer / per-pair iteration cap reached
  stagnation,           // no residual progress over the stagnation window
  inner_failure,        // inner linear solve failed
  verification_failed,  // independent residual check disagreed with the solver
  error,                // exception while running
};

std::string_view to_string(SolveStatus status);

struct SolverReport {
  SolverKind solver = SolverKind::dacg;
  Index neig = 0;
  double delta = 0.0;
  std::uint64_t mvp = 0;
  Index outer_its = 0;        // linear systems solved; always 0 for DACG
  Index inner_its_total = 0;  // PCG iterations (IRLM, JD) or nonlinear CG iterations (DACG)
  double wall_seconds = 0.0;
  bool converged = false;
  Vector per_pair_residuals;
  std::vector<Index> per_pair_iterations;  // DACG only

  // MVPs spent outside inner PCG iterations (basis expansion, residual
  // checks, DACG gradient and line-search products).
  std::uint64_t extra_mvp = 0;
  SolveStatus status = SolveStatus::converged;
  std::string message;
  double factor_seconds = 0.0;

  // Configuration echo.
  double delta_pcg = 0.0;
  Index itmax_inner = 0;
  Index m_min = 0;
  Index m_max = 0;
  Index ncv = 0;
  std::uint64_t seed = 0;
};

enum class ReportFormat { table, csv };

// CSV header: solver,neig,delta,mvp,outer_its,inner_its_total,wall_seconds,converged
// Rows are ordered dacg, jd, irlm; the table groups the same columns the
// way the comparison tables lay them out (outer its shown as "-" for DACG).
std::string emit_report(std::span<const SolverReport> reports, ReportFormat format);

// Inverse of the CSV rendering (CSV columns only). Throws std::invalid_argument.
std::vector<SolverReport> parse_report_csv(std::string_view csv);

// Two columns "j lambda_j/lambda_2" starting at j = 2. Throws on empty input.
std::string emit_spectrum(std::span<const double> values);

}  // namespace lapeig
