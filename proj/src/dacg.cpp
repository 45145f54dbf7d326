#include "lapeig/dacg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lapeig/vector_ops.hpp"
#include "solver_common.hpp"

namespace lapeig {

RqGradient rq_gradient(const CsrMatrix& a, std::span<const double> x, MvpCounter& counter) {
  const double xx = dot(x, x);
  if (xx == 0.0) throw std::invalid_argument("rq_gradient: zero vector");
  RqGradient g;
  g.ax = spmv(a, x, counter);
  g.q = dot(x, g.ax) / xx;
  g.gradient = g.ax;
  axpy(-g.q, x, g.gradient);
  scale(2.0 / xx, g.gradient);
  return g;
}

LineSearchResult rq_line_search(const CsrMatrix& a, std::span<const double> x,
                                std::span<const double> p, std::span<const double> ax,
                                MvpCounter& counter) {
  const Index n = x.size();
  const double xnorm = norm2(x);
  if (xnorm == 0.0) throw std::invalid_argument("rq_line_search: zero iterate");
  LineSearchResult out;
  Vector xh(x.begin(), x.end());
  Vector axh(ax.begin(), ax.end());
  scale(1.0 / xnorm, xh);
  scale(1.0 / xnorm, axh);

  const Vector ap = spmv(a, p, counter);
  const double gamma = dot(xh, p);
  Vector ph(p.begin(), p.end());
  axpy(-gamma, xh, ph);
  const double nu = norm2(ph);
  if (!(nu > 1e-14 * norm2(p))) {
    out.degenerate = true;
    out.q = dot(xh, axh);
    out.x = std::move(xh);
    out.ax = std::move(axh);
    return out;
  }
  scale(1.0 / nu, ph);
  Vector aph = ap;
  axpy(-gamma, axh, aph);
  scale(1.0 / nu, aph);

  // Smallest eigenpair of the symmetric 2x2 projection on {xh, ph}.
  const double a11 = dot(xh, axh);
  const double a22 = dot(ph, aph);
  const double a12 = 0.5 * (dot(xh, aph) + dot(ph, axh));
  const double mean = 0.5 * (a11 + a22);
  const double lambda = mean - std::hypot(0.5 * (a11 - a22), a12);
  double c1 = a12, c2 = lambda - a11;
  const double d1 = lambda - a22, d2 = a12;
  if (std::hypot(d1, d2) > std::hypot(c1, c2)) {
    c1 = d1;
    c2 = d2;
  }
  const double cn = std::hypot(c1, c2);
  if (cn == 0.0) {  // multiple of the identity on the plane: any vector is optimal
    c1 = 1.0;
    c2 = 0.0;
  } else {
    c1 /= cn;
    c2 /= cn;
  }
  if (c1 < 0.0) {
    c1 = -c1;
    c2 = -c2;
  }

  out.x.assign(n, 0.0);
  out.ax.assign(n, 0.0);
  axpy(c1, xh, out.x);
  axpy(c2, ph, out.x);
  axpy(c1, axh, out.ax);
  axpy(c2, aph, out.ax);
  out.q = dot(out.x, out.ax) / dot(out.x, out.x);
  const double denom = nu * c1 - c2 * gamma;
  out.t = denom != 0.0 ? c2 * xnorm / denom : std::numeric_limits<double>::infinity();
  return out;
}

SolveResult dacg_smallest(const CsrMatrix& a, const Ic0Factor& f, const DeflationBasis& null_basis,
                          const DacgOptions& options) {
  detail::check_problem(a, f, null_basis, options.neig);
  if (!(options.delta > 0.0)) throw std::invalid_argument("dacg: delta must be positive");
  const detail::Stopwatch clock;
  const Index n = a.n();
  const Index period = options.restart_period > 0 ? options.restart_period : std::max<Index>(1, n / 10);

  SolveResult out;
  SolverReport& rep = out.report;
  rep.solver = SolverKind::dacg;
  rep.neig = options.neig;
  rep.delta = options.delta;
  rep.seed = options.seed;

  Rng rng(options.seed);
  MvpCounter counter;
  DeflationBasis locked = null_basis;

  auto finish = [&](SolveStatus status, std::string message) {
    if (status == SolveStatus::converged) detail::sort_ascending(out.pairs, &rep.per_pair_iterations);
    rep.status = status;
    rep.converged = status == SolveStatus::converged;
    rep.message = std::move(message);
    rep.mvp = counter.count();
    rep.per_pair_residuals = out.pairs.residuals;
    rep.wall_seconds = clock.seconds();
    return std::move(out);
  };

  for (Index pair = 0; pair < options.neig; ++pair) {
    Vector x = pair == 0 ? detail::start_vector(options.start, n, {locked.columns()}, rng)
                         : detail::random_unit(n, {locked.columns()}, rng);
    if (x.empty()) return finish(SolveStatus::error, "no start vector orthogonal to the locked set");
    RqGradient g = rq_gradient(a, x, counter);
    ++rep.extra_mvp;
    double q = g.q;
    Vector ax = std::move(g.ax);
    Vector grad = std::move(g.gradient);

    Vector p, z, z_prev;
    double gz_prev = 0.0;
    Index its = 0;
    bool last_degenerate = false;
    while (true) {
      const double relres = q > 0.0 ? 0.5 * norm2(grad) / q : std::numeric_limits<double>::infinity();
      if (options.observer) options.observer(pair, its, q, relres);
      if (relres <= options.delta) {
        // Confirm against a fresh product; recursive updates of A x drift.
        const auto check = detail::rayleigh_residual(a, x, counter);
        ++rep.extra_mvp;
        if (check.relative <= options.delta) {
          locked.push_back(x);
          out.pairs.values.push_back(check.theta);
          out.pairs.vectors.push_back(std::move(x));
          out.pairs.residuals.push_back(check.relative);
          rep.per_pair_iterations.push_back(its);
          break;
        }
        ax = spmv(a, x, counter);
        ++rep.extra_mvp;
        q = dot(x, ax);
        grad = ax;
        axpy(-q, x, grad);
        scale(2.0, grad);
        p.clear();
      }
      if (its >= options.maxit_per_pair) {
        rep.per_pair_iterations.push_back(its);
        return finish(SolveStatus::max_iterations,
                      "pair " + std::to_string(pair + 1) + " stalled after " + std::to_string(its) +
                          " iterations with residual " + detail::format_residual(relres));
      }

      z = precond_apply(f, grad);
      const double gz = dot(grad, z);
      double beta = 0.0;
      if (!p.empty() && its % period != 0 && gz_prev > 0.0) {
        beta = (gz - dot(grad, z_prev)) / gz_prev;
        if (beta < 0.0) beta = 0.0;
      }
      if (p.empty()) p.assign(n, 0.0);
      for (Index i = 0; i < n; ++i) p[i] = -z[i] + beta * p[i];
      locked.project_out(p);

      LineSearchResult ls = rq_line_search(a, x, p, ax, counter);
      ++its;
      ++rep.inner_its_total;
      if (ls.degenerate) {
        if (last_degenerate) {
          rep.per_pair_iterations.push_back(its);
          return finish(SolveStatus::stagnation,
                        "pair " + std::to_string(pair + 1) + ": search direction parallel to iterate");
        }
        last_degenerate = true;
        p.clear();
        continue;
      }
      last_degenerate = false;
      x = std::move(ls.x);
      ax = std::move(ls.ax);
      locked.project_out(x);
      const double xn = norm2(x);
      scale(1.0 / xn, x);
      scale(1.0 / xn, ax);
      q = dot(x, ax);
      grad = ax;
      axpy(-q, x, grad);
      scale(2.0, grad);
      std::swap(z_prev, z);
      gz_prev = gz;
    }
  }
  return finish(SolveStatus::converged, "");
}

}  // namespace lapeig
