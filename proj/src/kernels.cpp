#include "lapeig/kernels.hpp"

#include <stdexcept>
#include <string>

#include "lapeig/vector_ops.hpp"

namespace lapeig {

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y, MvpCounter& counter) {
  if (x.size() != a.n() || y.size() != a.n()) {
    throw std::invalid_argument("spmv: dimension mismatch (n=" + std::to_string(a.n()) +
                                ", x=" + std::to_string(x.size()) + ")");
  }
  const auto row_ptr = a.row_ptr();
  const auto col_idx = a.col_idx();
  const auto values = a.values();
  for (Index i = 0; i < a.n(); ++i) {
    double s = 0.0;
    for (Index p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * x[col_idx[p]];
    y[i] = s;
  }
  counter.tick();
}

Vector spmv(const CsrMatrix& a, std::span<const double> x, MvpCounter& counter) {
  Vector y(a.n());
  spmv(a, x, y, counter);
  return y;
}

void project_out(std::span<const Vector> basis, std::span<double> x) {
  for (const auto& q : basis) axpy(-dot(q, x), q, x);
}

MgsResult mgs_orthonormalize(Vector v, std::initializer_list<std::span<const Vector>> bases) {
  const double input_norm = norm2(v);
  MgsResult out;
  if (input_norm == 0.0) {
    out.v = std::move(v);
    out.breakdown = true;
    return out;
  }
  double before = input_norm;
  double after = before;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& basis : bases) project_out(basis, v);
    after = norm2(v);
    if (after >= 0.7 * before) break;
    before = after;
  }
  out.norm = after;
  if (after < 1e-14 * input_norm) {
    out.breakdown = true;
    out.v = std::move(v);
    return out;
  }
  scale(1.0 / after, v);
  out.v = std::move(v);
  return out;
}

MgsResult mgs_orthonormalize(Vector v, std::span<const Vector> basis) {
  return mgs_orthonormalize(std::move(v), {basis});
}

}  // namespace lapeig
