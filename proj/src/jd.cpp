#include "lapeig/jd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lapeig/pcg.hpp"
#include "lapeig/vector_ops.hpp"
#include "solver_common.hpp"

namespace lapeig {

void JdWorkspace::append(Vector column, Vector image) {
  const Index k = dim();
  h.grow();
  for (Index i = 0; i < k; ++i) h.set_sym(i, k, 0.5 * (dot(v[i], image) + dot(column, w[i])));
  h(k, k) = dot(column, image);
  v.push_back(std::move(column));
  w.push_back(std::move(image));
}

RitzPair rayleigh_ritz_extract(const JdWorkspace& ws, Index which) {
  if (which >= ws.dim()) throw std::invalid_argument("rayleigh_ritz_extract: empty search space");
  const DenseEig eig = dense_sym_eig(ws.h);
  const Index n = ws.v.front().size();
  RitzPair p;
  p.theta = eig.values[which];
  p.y = eig.vectors[which];
  p.u = combine(ws.v, p.y, n);
  p.au = combine(ws.w, p.y, n);
  p.r = p.au;
  axpy(-p.theta, p.u, p.r);
  return p;
}

void jd_compress(JdWorkspace& ws, Index first, Index count) {
  if (first + count > ws.dim()) throw std::invalid_argument("jd_compress: not enough Ritz vectors");
  const DenseEig eig = dense_sym_eig(ws.h);
  const Index n = ws.v.front().size();
  std::vector<Vector> v, w;
  for (Index k = first; k < first + count; ++k) {
    v.push_back(combine(ws.v, eig.vectors[k], n));
    w.push_back(combine(ws.w, eig.vectors[k], n));
  }
  DenseSym h(count);
  for (Index i = 0; i < count; ++i) {
    h(i, i) = dot(v[i], w[i]);
    for (Index j = i + 1; j < count; ++j) h.set_sym(i, j, 0.5 * (dot(v[i], w[j]) + dot(v[j], w[i])));
  }
  ws.v = std::move(v);
  ws.w = std::move(w);
  ws.h = std::move(h);
}

void jd_restart(JdWorkspace& ws) { jd_compress(ws, 0, std::min(ws.m_min, ws.dim())); }

SolveResult jd_smallest(const CsrMatrix& a, const Ic0Factor& f, const DeflationBasis& null_basis,
                        const JdOptions& options) {
  detail::check_problem(a, f, null_basis, options.neig);
  if (!(options.delta > 0.0)) throw std::invalid_argument("jd: delta must be positive");
  if (options.m_min == 0 || options.m_min >= options.m_max) {
    throw std::invalid_argument("jd: require 0 < m_min < m_max");
  }
  const detail::Stopwatch clock;
  const Index n = a.n();

  SolveResult out;
  SolverReport& rep = out.report;
  rep.solver = SolverKind::jd;
  rep.neig = options.neig;
  rep.delta = options.delta;
  rep.delta_pcg = options.delta_pcg;
  rep.itmax_inner = options.itmax_inner;
  rep.m_min = options.m_min;
  rep.m_max = options.m_max;
  rep.seed = options.seed;

  Rng rng(options.seed);
  MvpCounter counter;
  DeflationBasis locked = null_basis;  // kernel followed by converged eigenvectors
  JdWorkspace ws;
  ws.m_min = options.m_min;
  ws.m_max = options.m_max;

  auto finish = [&](SolveStatus status, std::string message) {
    if (status == SolveStatus::converged) detail::sort_ascending(out.pairs);
    rep.status = status;
    rep.converged = status == SolveStatus::converged;
    rep.message = std::move(message);
    rep.mvp = counter.count();
    rep.per_pair_residuals = out.pairs.residuals;
    rep.wall_seconds = clock.seconds();
    return std::move(out);
  };

  Vector candidate = detail::start_vector(options.start, n, {locked.columns()}, rng);
  double best_residual = std::numeric_limits<double>::infinity();
  Index since_best = 0;
  Index outer = 0;

  while (out.pairs.size() < options.neig) {
    if (!candidate.empty()) {
      MgsResult o = mgs_orthonormalize(std::move(candidate), {locked.columns(), ws.v});
      if (o.breakdown) o.v = detail::random_unit(n, {locked.columns(), ws.v}, rng);
      candidate.clear();
      if (!o.v.empty()) {
        Vector image = spmv(a, o.v, counter);
        ++rep.extra_mvp;
        ws.append(std::move(o.v), std::move(image));
      }
    }
    if (ws.dim() == 0) return finish(SolveStatus::error, "search space is empty");

    RitzPair ritz = rayleigh_ritz_extract(ws);
    const double rnorm = norm2(ritz.r);
    const double relres = ritz.theta > 0.0 ? rnorm / ritz.theta : std::numeric_limits<double>::infinity();
    if (options.observer) options.observer(out.pairs.size(), ws.dim(), ritz.theta, relres);

    if (rnorm < options.delta * ritz.theta) {
      MgsResult clean = mgs_orthonormalize(ritz.u, locked.columns());
      locked.push_back(clean.v);
      out.pairs.values.push_back(ritz.theta);
      out.pairs.vectors.push_back(std::move(clean.v));
      out.pairs.residuals.push_back(relres);
      best_residual = std::numeric_limits<double>::infinity();
      since_best = 0;
      if (ws.dim() > 1) {
        jd_compress(ws, 1, ws.dim() - 1);
      } else {
        ws = JdWorkspace{{}, {}, DenseSym(0), options.m_min, options.m_max};
        candidate = detail::random_unit(n, {locked.columns()}, rng);
      }
      continue;
    }

    if (relres < best_residual) {
      best_residual = relres;
      since_best = 0;
    } else if (++since_best >= options.stagnation_window) {
      return finish(SolveStatus::stagnation,
                    "pair " + std::to_string(out.pairs.size() + 1) + ": residual stuck at " +
                        detail::format_residual(best_residual) + " for " +
                        std::to_string(options.stagnation_window) + " iterations");
    }
    if (ws.dim() + locked.size() >= n) {
      return finish(SolveStatus::max_iterations,
                    "search space exhausted with residual " + detail::format_residual(relres));
    }
    if (++outer > options.max_outer) {
      return finish(SolveStatus::max_iterations,
                    "no convergence after " + std::to_string(options.max_outer) + " outer iterations");
    }
    if (ws.dim() >= ws.m_max) {
      jd_restart(ws);
      ritz = rayleigh_ritz_extract(ws);
    }

    locked.push_back(ritz.u);
    const PcgOutcome corr = jd_correction_solve(a, ritz.theta, locked, ritz.r, f, options.delta_pcg,
                                                options.itmax_inner, counter);
    locked.pop_back();
    ++rep.outer_its;
    rep.inner_its_total += corr.iterations;
    candidate = corr.solution;
    if (norm2(candidate) == 0.0) candidate = detail::random_unit(n, {locked.columns(), ws.v}, rng);
  }
  return finish(SolveStatus::converged, "");
}

}  // namespace lapeig
