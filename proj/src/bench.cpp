#include "lapeig/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <future>
#include <limits>
#include <string>

#include "lapeig/dacg.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/ic0.hpp"
#include "lapeig/irlm.hpp"
#include "lapeig/jd.hpp"
#include "lapeig/kernels.hpp"
#include "lapeig/vector_ops.hpp"

namespace lapeig {

std::vector<SolverReport> RunOutcome::reports() const {
  std::vector<SolverReport> out;
  for (const auto& r : runs) out.push_back(r.report);
  return out;
}

bool RunOutcome::all_converged() const {
  return std::all_of(runs.begin(), runs.end(), [](const SolveResult& r) { return r.report.converged; });
}

double RunOutcome::sigma(SigmaPolicy policy) const {
  for (const auto& r : runs) {
    if (r.report.converged && r.pairs.size() > 0) {
      return choose_sigma(policy, r.pairs, r.pairs.size(), lambda_max);
    }
  }
  return 0.0;
}

Vector verify_residuals(const CsrMatrix& a, const EigenPairSet& pairs) {
  MvpCounter fresh;
  Vector out;
  for (const auto& u : pairs.vectors) {
    Vector au = spmv(a, u, fresh);
    const double uu = dot(u, u);
    const double theta = dot(u, au) / uu;
    axpy(-theta, u, au);
    out.push_back(theta > 0.0 ? norm2(au) / (theta * std::sqrt(uu))
                              : std::numeric_limits<double>::infinity());
  }
  return out;
}

namespace {

SolveResult run_one(SolverKind kind, const RunConfig& c, const CsrMatrix& a, const Ic0Factor& f,
                    const DeflationBasis& kernel) {
  SolveResult r;
  try {
    switch (kind) {
      case SolverKind::dacg: {
        DacgOptions o;
        o.neig = c.neig;
        o.delta = c.delta;
        o.seed = c.seed;
        r = dacg_smallest(a, f, kernel, o);
        break;
      }
      case SolverKind::jd: {
        JdOptions o;
        o.neig = c.neig;
        o.delta = c.delta;
        o.delta_pcg = c.delta_pcg;
        o.itmax_inner = c.itmax_inner;
        o.m_min = c.m_min;
        o.m_max = c.m_max;
        o.seed = c.seed;
        r = jd_smallest(a, f, kernel, o);
        break;
      }
      case SolverKind::irlm: {
        IrlmOptions o;
        o.neig = c.neig;
        o.delta = c.delta;
        o.ncv = c.ncv;
        o.seed = c.seed;
        r = irlm_smallest(a, f, kernel, o);
        break;
      }
    }
  } catch (const std::exception& e) {
    r = SolveResult{};
    r.report.solver = kind;
    r.report.neig = c.neig;
    r.report.delta = c.delta;
    r.report.converged = false;
    r.report.status = SolveStatus::error;
    r.report.message = e.what();
  }

  SolverReport& rep = r.report;
  rep.delta_pcg = kind == SolverKind::irlm ? rep.delta_pcg : (kind == SolverKind::jd ? c.delta_pcg : 0.0);
  rep.itmax_inner = c.itmax_inner;
  rep.m_min = c.m_min;
  rep.m_max = c.m_max;
  rep.seed = c.seed;
  if (rep.converged) {
    const Vector check = verify_residuals(a, r.pairs);
    const bool ok = check.size() == c.neig &&
                    std::all_of(check.begin(), check.end(), [&](double x) { return x <= c.delta; });
    rep.per_pair_residuals = check;
    if (!ok) {
      rep.converged = false;
      rep.status = SolveStatus::verification_failed;
      rep.message = "independent residual check exceeded delta";
    }
  }
  return r;
}

}  // namespace

RunOutcome run(const RunConfig& config, const EdgeList& input) {
  RunOutcome out;
  EdgeList graph = input;
  const Components comps = connected_components(input);
  if (comps.count > 1) {
    if (!config.allow_disconnected) {
      throw DisconnectedInputError("graph has " + std::to_string(comps.count) +
                                   " connected components; rerun with --allow-disconnected to "
                                   "use the largest one");
    }
    Subgraph sub = largest_component(input);
    out.dropped_nodes = input.n_nodes() - sub.graph.n_nodes();
    graph = std::move(sub.graph);
  }
  out.stats = stats(graph);
  const CsrMatrix a = build_laplacian(graph);
  const DeflationBasis kernel = DeflationBasis::laplacian_kernel(connected_components(graph));

  const auto t0 = std::chrono::steady_clock::now();
  const Ic0Factor f = ic0_factorize(a);
  out.factor_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.ic0_shift = f.shift();
  out.lambda_max = estimate_lambda_max(a, 20, config.seed);

  if (config.parallel) {
    std::vector<std::future<SolveResult>> jobs;
    for (SolverKind k : config.solvers) {
      jobs.push_back(std::async(std::launch::async, [&, k] { return run_one(k, config, a, f, kernel); }));
    }
    for (auto& j : jobs) out.runs.push_back(j.get());
  } else {
    for (SolverKind k : config.solvers) out.runs.push_back(run_one(k, config, a, f, kernel));
  }
  for (auto& r : out.runs) r.report.factor_seconds = out.factor_seconds;
  return out;
}

RunOutcome run(const RunConfig& config) {
  return run(config, load_edge_list_file(config.input, config.format, config.symmetrize));
}

}  // namespace lapeig
