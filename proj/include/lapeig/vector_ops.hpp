#pragma once

// Small dense BLAS-1 helpers over spans.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <span>

#include "lapeig/types.hpp"

namespace lapeig {

inline double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

inline double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// y += a * x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for (Index i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale(double a, std::span<double> x) {
  for (double& v : x) v *= a;
}

// Linear combination sum_j coeff[j] * cols[j]; cols must be nonempty or n given.
inline Vector combine(std::span<const Vector> cols, std::span<const double> coeff, Index n) {
  assert(cols.size() == coeff.size());
  Vector out(n, 0.0);
  for (Index j = 0; j < cols.size(); ++j) axpy(coeff[j], cols[j], out);
  return out;
}

}  // namespace lapeig
