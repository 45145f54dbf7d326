#include "lapeig/pcg.hpp"

#include <algorithm>

#include "lapeig/vector_ops.hpp"

namespace lapeig {

LinearOperator matrix_operator(const CsrMatrix& a, MvpCounter& counter) {
  return [&a, &counter](std::span<const double> x, std::span<double> y) { spmv(a, x, y, counter); };
}

LinearOperator preconditioner_operator(const Ic0Factor& f) {
  return [&f](std::span<const double> x, std::span<double> y) { f.apply(x, y); };
}

LinearOperator identity_operator() {
  return [](std::span<const double> x, std::span<double> y) { std::copy(x.begin(), x.end(), y.begin()); };
}

PcgOutcome pcg_solve(const LinearOperator& op, const LinearOperator& precond,
                     std::span<const double> b, const PcgOptions& options,
                     const DeflationBasis& deflation, const PcgObserver& observer) {
  const Index n = b.size();
  PcgOutcome out;
  out.solution.assign(n, 0.0);

  Vector r(b.begin(), b.end());
  deflation.project_out(r);
  const double bnorm = norm2(r);
  if (bnorm == 0.0 || bnorm <= 1e-14 * norm2(b)) {
    out.converged = true;
    return out;
  }

  Vector z(n), p(n), q(n);
  auto apply_precond = [&](const Vector& in, Vector& result) {
    precond(in, result);
    deflation.project_out(result);
  };
  Vector& x = out.solution;
  apply_precond(r, z);
  p = z;
  double rz = dot(r, z);
  out.final_relres = 1.0;
  out.status = PcgStatus::max_iterations;

  for (Index k = 1; k <= options.maxit; ++k) {
    op(p, q);
    deflation.project_out(q);
    out.iterations = k;
    const double curvature = dot(p, q);
    if (!(curvature > 0.0)) {
      if (k == 1) x = p;
      out.status = PcgStatus::indefinite;
      return out;
    }
    const double step = rz / curvature;
    axpy(step, p, x);
    axpy(-step, q, r);
    deflation.project_out(r);
    if (observer) observer(k, x);

    out.final_relres = norm2(r) / bnorm;
    if (out.final_relres <= options.tol) {
      out.converged = true;
      out.status = PcgStatus::converged;
      return out;
    }
    apply_precond(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (Index i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return out;
}

PcgOutcome jd_correction_solve(const CsrMatrix& a, double theta, const DeflationBasis& q,
                               std::span<const double> residual, const Ic0Factor& f, double tol,
                               Index itmax, MvpCounter& counter) {
  const Index n = a.n();
  Vector shifted_in(n);
  LinearOperator op = [&](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), shifted_in.begin());
    q.project_out(shifted_in);
    spmv(a, shifted_in, y, counter);
    axpy(-theta, shifted_in, y);
    q.project_out(y);
  };
  LinearOperator precond = [&](std::span<const double> x, std::span<double> y) {
    const Vector z = projected_precond_apply(f, q, x);
    std::copy(z.begin(), z.end(), y.begin());
  };
  Vector rhs(residual.begin(), residual.end());
  scale(-1.0, rhs);
  return pcg_solve(op, precond, rhs, PcgOptions{tol, itmax}, q);
}

}  // namespace lapeig
