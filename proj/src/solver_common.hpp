#pragma once

// Helpers shared by the eigensolver implementations.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "lapeig/csr_matrix.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/eigenpairs.hpp"
#include "lapeig/ic0.hpp"
#include "lapeig/kernels.hpp"
#include "lapeig/rng.hpp"
#include "lapeig/vector_ops.hpp"

namespace lapeig::detail {

inline std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", r);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Random unit vector orthogonal to the given bases; nullopt-like empty
// vector when the complement is (numerically) empty.
inline Vector random_unit(Index n, std::initializer_list<std::span<const Vector>> bases, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    MgsResult r = mgs_orthonormalize(rng.vector(n), bases);
    if (!r.breakdown) return std::move(r.v);
  }
  return {};
}

// Orthonormalizes a caller-supplied start vector, falling back to random.
inline Vector start_vector(const std::optional<Vector>& given, Index n,
                           std::initializer_list<std::span<const Vector>> bases, Rng& rng) {
  if (given) {
    if (given->size() != n) throw std::invalid_argument("start vector has wrong dimension");
    MgsResult r = mgs_orthonormalize(*given, bases);
    if (!r.breakdown) return std::move(r.v);
  }
  return random_unit(n, bases, rng);
}

struct Residual {
  double theta = 0.0;
  double relative = 0.0;  // ||A u - theta u|| / theta
};

// One MVP; u must be unit norm.
inline Residual rayleigh_residual(const CsrMatrix& a, std::span<const double> u, MvpCounter& counter) {
  Vector au = spmv(a, u, counter);
  Residual r;
  r.theta = dot(u, au);
  axpy(-r.theta, u, au);
  r.relative = r.theta > 0.0 ? norm2(au) / r.theta : std::numeric_limits<double>::infinity();
  return r;
}

// Reorders the pairs (and an optional per-pair companion) by eigenvalue.
inline void sort_ascending(EigenPairSet& pairs, std::vector<Index>* companion = nullptr) {
  std::vector<Index> order(pairs.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return pairs.values[x] < pairs.values[y]; });
  EigenPairSet sorted;
  sorted.includes_kernel = pairs.includes_kernel;
  std::vector<Index> other;
  for (Index k : order) {
    sorted.values.push_back(pairs.values[k]);
    sorted.vectors.push_back(std::move(pairs.vectors[k]));
    sorted.residuals.push_back(pairs.residuals[k]);
    if (companion != nullptr && companion->size() == pairs.size()) other.push_back((*companion)[k]);
  }
  pairs = std::move(sorted);
  if (!other.empty()) *companion = std::move(other);
}

inline void check_problem(const CsrMatrix& a, const Ic0Factor& f, const DeflationBasis& null_basis,
                          Index neig) {
  if (!a.symmetric()) throw std::invalid_argument("eigensolver: matrix must be symmetric");
  if (f.n() != a.n()) throw std::invalid_argument("eigensolver: preconditioner dimension mismatch");
  if (!null_basis.empty() && null_basis.columns().front().size() != a.n()) {
    throw std::invalid_argument("eigensolver: null basis dimension mismatch");
  }
  if (neig == 0 || neig + null_basis.size() > a.n()) {
    throw std::invalid_argument("eigensolver: neig must be in [1, n - dim(null basis)]");
  }
}

}  // namespace lapeig::detail
