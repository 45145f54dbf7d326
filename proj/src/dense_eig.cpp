#include "lapeig/dense_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lapeig {

DenseSym::DenseSym(Index dim, Vector entries) : dim_(dim), a_(std::move(entries)) {
  if (a_.size() != dim_ * dim_) throw std::invalid_argument("DenseSym: expected dim*dim entries");
}

DenseSym DenseSym::diagonal(std::span<const double> d) {
  DenseSym h(d.size());
  for (Index i = 0; i < d.size(); ++i) h(i, i) = d[i];
  return h;
}

void DenseSym::grow() {
  const Index n = dim_ + 1;
  Vector b(n * n, 0.0);
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j) b[i * n + j] = a_[i * dim_ + j];
  a_ = std::move(b);
  dim_ = n;
}

double DenseSym::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double DenseSym::asymmetry() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double d = 0.0;
  for (Index i = 0; i < dim_; ++i)
    for (Index j = i + 1; j < dim_; ++j) d = std::max(d, std::abs((*this)(i, j) - (*this)(j, i)));
  return d / scale;
}

namespace {

// Column-major n*n work matrix: z[i + n*j].
struct Work {
  Index n;
  Vector z;
  double& operator()(Index i, Index j) { return z[i + n * j]; }
};

// Householder reduction of the symmetric matrix held in z to tridiagonal
// form; on exit d holds the diagonal, e[1..n-1] the subdiagonal and z the
// accumulated orthogonal transformation.
void tridiagonalize(Work& z, Vector& d, Vector& e) {
  const Index n = z.n;
  for (Index j = 0; j < n; ++j) d[j] = z(n - 1, j);

  for (Index i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (Index k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (Index j = 0; j < i; ++j) {
        d[j] = z(i - 1, j);
        z(i, j) = 0.0;
        z(j, i) = 0.0;
      }
    } else {
      for (Index k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (Index j = 0; j < i; ++j) e[j] = 0.0;

      for (Index j = 0; j < i; ++j) {
        f = d[j];
        z(j, i) = f;
        g = e[j] + z(j, j) * f;
        for (Index k = j + 1; k < i; ++k) {
          g += z(k, j) * d[k];
          e[k] += z(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (Index j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (Index j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (Index j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (Index k = j; k < i; ++k) z(k, j) -= (f * e[k] + g * d[k]);
        d[j] = z(i - 1, j);
        z(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (Index i = 0; i + 1 < n; ++i) {
    z(n - 1, i) = z(i, i);
    z(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (Index k = 0; k <= i; ++k) d[k] = z(k, i + 1) / h;
      for (Index j = 0; j <= i; ++j) {
        double g = 0.0;
        for (Index k = 0; k <= i; ++k) g += z(k, i + 1) * z(k, j);
        for (Index k = 0; k <= i; ++k) z(k, j) -= g * d[k];
      }
    }
    for (Index k = 0; k <= i; ++k) z(k, i + 1) = 0.0;
  }
  for (Index j = 0; j < n; ++j) {
    d[j] = z(n - 1, j);
    z(n - 1, j) = 0.0;
  }
  z(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL with shifts taken from the trailing 2x2 of each unreduced
// block. Input e[1..n-1] is the subdiagonal; rotations are accumulated in z.
void ql_implicit(Work& z, Vector& d, Vector& e) {
  const Index n = z.n;
  for (Index i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 60;
  for (Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    Index m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > max_sweeps) throw std::runtime_error("dense eigensolver: QL did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (Index i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (Index i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (Index k = 0; k < n; ++k) {
            h = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * h;
            z(k, i) = c * z(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

DenseEig collect_sorted(Work& z, const Vector& d) {
  const Index n = z.n;
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return d[a] < d[b]; });
  DenseEig out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (Index k : order) {
    out.values.push_back(d[k]);
    out.vectors.emplace_back(z.z.begin() + static_cast<std::ptrdiff_t>(n * k),
                             z.z.begin() + static_cast<std::ptrdiff_t>(n * (k + 1)));
  }
  return out;
}

}  // namespace

DenseEig dense_sym_eig(const DenseSym& h, Index max_dim) {
  const Index n = h.dim();
  if (n > max_dim) throw std::invalid_argument("dense_sym_eig: dimension exceeds cap");
  if (h.asymmetry() > 1e-12) throw std::invalid_argument("dense_sym_eig: matrix is not symmetric");
  if (n == 0) return {};
  Work z{n, Vector(n * n)};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) z(i, j) = h(i, j);
  Vector d(n), e(n);
  tridiagonalize(z, d, e);
  ql_implicit(z, d, e);
  return collect_sorted(z, d);
}

DenseEig tridiag_eig(std::span<const double> alpha, std::span<const double> beta) {
  const Index n = alpha.size();
  if (n == 0 ? !beta.empty() : beta.size() + 1 != n) {
    throw std::invalid_argument("tridiag_eig: beta must have one entry fewer than alpha");
  }
  if (n == 0) return {};
  Work z{n, Vector(n * n, 0.0)};
  for (Index i = 0; i < n; ++i) z(i, i) = 1.0;
  Vector d(alpha.begin(), alpha.end());
  Vector e(n, 0.0);
  for (Index i = 1; i < n; ++i) e[i] = beta[i - 1];
  ql_implicit(z, d, e);
  return collect_sorted(z, d);
}

}  // namespace lapeig
