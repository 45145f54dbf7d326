#include "lapeig/irlm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lapeig/pcg.hpp"
#include "lapeig/vector_ops.hpp"
#include "solver_common.hpp"

namespace lapeig {

Index default_ncv(Index neig) {
  struct Knot {
    double neig;
    double ncv;
  };
  static constexpr Knot knots[] = {{1, 15}, {5, 30}, {20, 60}, {50, 120}};
  const double x = static_cast<double>(neig);
  if (x <= knots[0].neig) return 15;
  for (std::size_t k = 1; k < std::size(knots); ++k) {
    if (x <= knots[k].neig) {
      const auto& lo = knots[k - 1];
      const auto& hi = knots[k];
      return static_cast<Index>(
          std::lround(lo.ncv + (hi.ncv - lo.ncv) * (x - lo.neig) / (hi.neig - lo.neig)));
    }
  }
  return 120 + 2 * (neig - 50);
}

LanczosStepResult inverse_lanczos_step(LanczosState& state, const CsrMatrix& a, const Ic0Factor& f,
                                       double delta_pcg, Index pcg_maxit,
                                       const DeflationBasis& null_basis, MvpCounter& counter,
                                       Rng& rng) {
  if (state.next.empty()) throw std::logic_error("inverse_lanczos_step: Krylov space exhausted");
  const Index n = a.n();
  const Index j = state.m();
  state.basis.push_back(std::move(state.next));
  state.next.clear();
  const Vector& v = state.basis.back();

  LanczosStepResult result;
  PcgOutcome solve = pcg_solve(matrix_operator(a, counter), preconditioner_operator(f), v,
                               PcgOptions{delta_pcg, pcg_maxit}, null_basis);
  result.pcg_iterations = solve.iterations;
  result.inner_converged = solve.converged;

  Vector w = std::move(solve.solution);
  const double wnorm = norm2(w);
  const double alpha = dot(w, v);
  axpy(-alpha, v, w);
  if (state.kept > 0 && j == state.kept) {
    for (Index i = 0; i < state.kept; ++i) axpy(-state.coupling[i], state.basis[i], w);
  } else if (j > 0) {
    axpy(-state.beta[j - 1], state.basis[j - 1], w);
  }
  MgsResult ortho = mgs_orthonormalize(std::move(w), {null_basis.columns(), state.basis});
  state.alpha.push_back(alpha);

  const bool exhausted = state.m() + null_basis.size() >= n;
  // With inexact inner solves an invariant subspace shows up as a residual at
  // the level of the solve error rather than at rounding level.
  result.breakdown = ortho.breakdown || ortho.norm < std::max(1e-12, 10.0 * delta_pcg) * wnorm;
  if (exhausted) {
    state.beta.push_back(result.breakdown ? 0.0 : ortho.norm);
  } else if (result.breakdown) {
    state.beta.push_back(0.0);
    state.next = detail::random_unit(n, {null_basis.columns(), state.basis}, rng);
  } else {
    state.beta.push_back(ortho.norm);
    state.next = std::move(ortho.v);
  }
  return result;
}

DenseSym projected_matrix(const LanczosState& state) {
  const Index m = state.m();
  DenseSym t(m);
  for (Index i = 0; i < m; ++i) t(i, i) = state.alpha[i];
  for (Index i = 0; i < state.kept && state.kept < m; ++i) t.set_sym(i, state.kept, state.coupling[i]);
  for (Index j = state.kept; j + 1 < m; ++j) t.set_sym(j, j + 1, state.beta[j]);
  return t;
}

namespace {

DenseEig projected_eig(const LanczosState& state) {
  if (state.kept == 0) {
    return tridiag_eig(state.alpha, std::span<const double>(state.beta).first(state.m() - 1));
  }
  return dense_sym_eig(projected_matrix(state));
}

// Replaces the basis by the `keep` Ritz vectors with the largest Ritz values.
void thick_restart(LanczosState& state, const DenseEig& eig, Index keep) {
  const Index m = state.m();
  const Index n = state.basis.front().size();
  const double last_beta = state.beta.back();
  std::vector<Vector> basis;
  Vector alpha, coupling;
  for (Index k = 0; k < keep; ++k) {
    const Index idx = m - 1 - k;
    basis.push_back(combine(state.basis, eig.vectors[idx], n));
    alpha.push_back(eig.values[idx]);
    coupling.push_back(last_beta * eig.vectors[idx][m - 1]);
  }
  state.basis = std::move(basis);
  state.alpha = std::move(alpha);
  state.beta.assign(keep, 0.0);
  state.coupling = std::move(coupling);
  state.kept = keep;
}

double max_row_abs_sum(const CsrMatrix& a) {
  double m = 0.0;
  for (Index i = 0; i < a.n(); ++i) {
    double s = 0.0;
    for (Index p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) s += std::abs(a.values()[p]);
    m = std::max(m, s);
  }
  return m;
}

}  // namespace

SolveResult irlm_smallest(const CsrMatrix& a, const Ic0Factor& f, const DeflationBasis& null_basis,
                          const IrlmOptions& options) {
  detail::check_problem(a, f, null_basis, options.neig);
  if (!(options.delta > 0.0)) throw std::invalid_argument("irlm: delta must be positive");
  const detail::Stopwatch clock;
  const Index n = a.n();
  const Index neig = options.neig;
  const Index available = n - null_basis.size();
  const double delta_pcg = options.delta_pcg > 0.0 ? options.delta_pcg : 1e-2 * options.delta;
  Index ncv = options.ncv > 0 ? options.ncv : default_ncv(neig);
  ncv = std::min(std::max(ncv, neig + 1), available);

  SolveResult out;
  SolverReport& rep = out.report;
  rep.solver = SolverKind::irlm;
  rep.neig = neig;
  rep.delta = options.delta;
  rep.delta_pcg = delta_pcg;
  rep.ncv = ncv;
  rep.seed = options.seed;

  Rng rng(options.seed);
  MvpCounter counter;
  LanczosState state;
  state.ncv = ncv;
  state.next = detail::start_vector(options.start, n, {null_basis.columns()}, rng);

  const double norm_bound = max_row_abs_sum(a);
  Index restarts = 0;
  auto finish = [&](SolveStatus status, std::string message) {
    rep.status = status;
    rep.converged = status == SolveStatus::converged;
    rep.message = std::move(message);
    rep.mvp = counter.count();
    rep.wall_seconds = clock.seconds();
    return std::move(out);
  };

  while (true) {
    const LanczosStepResult step =
        inverse_lanczos_step(state, a, f, delta_pcg, options.pcg_maxit, null_basis, counter, rng);
    ++rep.outer_its;
    rep.inner_its_total += step.pcg_iterations;
    if (!step.inner_converged) {
      return finish(SolveStatus::inner_failure,
                    "inner PCG did not reach " + std::to_string(delta_pcg) + " within " +
                        std::to_string(options.pcg_maxit) + " iterations at Lanczos step " +
                        std::to_string(state.m()));
    }
    const Index m = state.m();
    const bool exhausted = state.next.empty();
    const bool full = m >= ncv;
    if (m < neig || (step.breakdown && !exhausted)) {
      if (m < neig && exhausted) return finish(SolveStatus::max_iterations, "Krylov space exhausted");
      continue;
    }

    const DenseEig eig = projected_eig(state);
    const double last_beta = state.beta.back();
    bool plausible = true;
    bool confident = true;
    for (Index k = 0; k < neig; ++k) {
      const Index idx = m - 1 - k;
      const double mu = eig.values[idx];
      const double coupling = std::abs(last_beta * eig.vectors[idx][m - 1]);
      plausible = plausible && mu > 0.0 && coupling <= options.delta * mu;
      confident = confident && coupling * norm_bound <= options.delta;
    }

    if (confident || exhausted || (full && plausible)) {
      EigenPairSet candidate;
      double mean = 0.0;
      bool all_ok = true;
      for (Index k = 0; k < neig; ++k) {
        Vector u = combine(state.basis, eig.vectors[m - 1 - k], n);
        scale(1.0 / norm2(u), u);
        const auto res = detail::rayleigh_residual(a, u, counter);
        ++rep.extra_mvp;
        candidate.values.push_back(res.theta);
        candidate.vectors.push_back(std::move(u));
        candidate.residuals.push_back(res.relative);
        mean += res.relative / static_cast<double>(neig);
        all_ok = all_ok && res.relative <= options.delta;
      }
      if (all_ok && mean <= options.delta) {
        detail::sort_ascending(candidate);
        out.pairs = std::move(candidate);
        rep.per_pair_residuals = out.pairs.residuals;
        return finish(SolveStatus::converged, "");
      }
    }
    if (exhausted) {
      return finish(SolveStatus::max_iterations,
                    "Krylov space exhausted before the residual test was met");
    }
    if (full) {
      if (++restarts > options.max_restarts) {
        return finish(SolveStatus::max_iterations,
                      "no convergence after " + std::to_string(options.max_restarts) + " restarts");
      }
      thick_restart(state, eig, std::min(neig + 1, m - 1));
    }
  }
}

}  // namespace lapeig
