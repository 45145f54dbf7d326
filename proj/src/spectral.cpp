#include "lapeig/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lapeig/dacg.hpp"
#include "lapeig/deflation.hpp"
#include "lapeig/graph.hpp"
#include "lapeig/ic0.hpp"
#include "lapeig/irlm.hpp"
#include "lapeig/jd.hpp"
#include "lapeig/kernels.hpp"
#include "lapeig/rng.hpp"
#include "lapeig/vector_ops.hpp"

namespace lapeig {

FiedlerResult fiedler(const CsrMatrix& laplacian, SolverKind solver, double delta,
                      std::uint64_t seed) {
  const Components comps = connected_components(laplacian);
  if (comps.count != 1) {
    throw DisconnectedGraphError("graph has " + std::to_string(comps.count) +
                                 " connected components; lambda_2 > 0 only for connected graphs");
  }
  if (laplacian.n() < 2) throw std::invalid_argument("fiedler: need at least two nodes");
  const Ic0Factor f = ic0_factorize(laplacian);
  const DeflationBasis kernel = DeflationBasis::laplacian_kernel(comps);

  SolveResult r;
  switch (solver) {
    case SolverKind::dacg: {
      DacgOptions o;
      o.delta = delta;
      o.seed = seed;
      r = dacg_smallest(laplacian, f, kernel, o);
      break;
    }
    case SolverKind::jd: {
      JdOptions o;
      o.delta = delta;
      o.seed = seed;
      r = jd_smallest(laplacian, f, kernel, o);
      break;
    }
    case SolverKind::irlm: {
      IrlmOptions o;
      o.delta = delta;
      o.seed = seed;
      r = irlm_smallest(laplacian, f, kernel, o);
      break;
    }
  }
  if (!r.report.converged || r.pairs.size() < 1) {
    throw std::runtime_error("fiedler: " + std::string(to_string(solver)) + " failed: " +
                             r.report.message);
  }
  FiedlerResult out;
  out.lambda2 = r.pairs.values[0];
  out.vector = std::move(r.pairs.vectors[0]);
  out.residual = r.pairs.residuals[0];
  out.report = std::move(r.report);
  return out;
}

namespace {

Index first_positive(const EigenPairSet& pairs) { return pairs.includes_kernel ? 1 : 0; }

Index positive_count(const EigenPairSet& pairs) {
  return pairs.size() - std::min(pairs.size(), first_positive(pairs));
}

void remove_mean(std::span<double> x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

}  // namespace

RelaxedPartition partition_relaxed(const EigenPairSet& pairs, Index n1, Index n2) {
  if (positive_count(pairs) < 1) throw std::invalid_argument("partition_relaxed: lambda_2 missing");
  const Index i2 = first_positive(pairs);
  const Index n = pairs.vectors[i2].size();
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("partition_relaxed: both parts must be nonempty");
  if (n1 + n2 != n) throw std::invalid_argument("partition_relaxed: n1 + n2 must equal n");

  Vector v2 = pairs.vectors[i2];
  remove_mean(v2);
  scale(1.0 / norm2(v2), v2);
  const double nd = static_cast<double>(n);
  const double d1 = static_cast<double>(n1), d2 = static_cast<double>(n2);
  const double offset = (d1 - d2) / (2.0 * nd);
  const double amp = std::sqrt(d1 * d2 / nd);
  RelaxedPartition out;
  out.x.resize(n);
  for (Index i = 0; i < n; ++i) out.x[i] = offset + amp * v2[i];
  out.value = d1 * d2 / nd * pairs.values[i2];
  return out;
}

std::vector<int> sign_partition(std::span<const double> x, Index n1, Index n2) {
  if (n1 + n2 != x.size()) throw std::invalid_argument("sign_partition: n1 + n2 must equal n");
  std::vector<Index> order(x.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] > x[b]; });
  std::vector<int> labels(x.size(), 1);
  for (Index k = 0; k < n1; ++k) labels[order[k]] = 0;
  return labels;
}

double cut_weight(const CsrMatrix& laplacian, std::span<const int> labels) {
  if (labels.size() != laplacian.n()) throw std::invalid_argument("cut_weight: dimension mismatch");
  double cut = 0.0;
  for (Index i = 0; i < laplacian.n(); ++i) {
    for (Index p = laplacian.row_ptr()[i]; p < laplacian.row_ptr()[i + 1]; ++p) {
      const Index j = laplacian.col_idx()[p];
      if (j > i && labels[i] != labels[j]) cut -= laplacian.values()[p];
    }
  }
  return cut;
}

std::vector<Index> fiedler_order(std::span<const double> x) {
  std::vector<Index> order(x.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] < x[b]; });
  return order;
}

PinvApprox make_truncated(const EigenPairSet& pairs, Index k) {
  if (k > positive_count(pairs)) throw std::invalid_argument("pinv: k exceeds available eigenpairs");
  return {PinvKind::truncated, k, 0.0, &pairs};
}

PinvApprox make_shifted(const EigenPairSet& pairs, Index k, double sigma) {
  if (k > positive_count(pairs)) throw std::invalid_argument("pinv: k exceeds available eigenpairs");
  if (!(sigma > 0.0)) throw std::invalid_argument("pinv: sigma must be positive");
  return {PinvKind::shifted, k, sigma, &pairs};
}

Vector pinv_apply(const PinvApprox& p, std::span<const double> v) {
  if (p.pairs == nullptr) throw std::invalid_argument("pinv_apply: no eigenpairs");
  const EigenPairSet& pairs = *p.pairs;
  if (p.k > positive_count(pairs)) throw std::invalid_argument("pinv: k exceeds available eigenpairs");
  const Index n = v.size();
  // With every positive pair present the 1/sigma terms cancel exactly.
  const bool shifted = p.kind == PinvKind::shifted && p.k + 1 < n;
  Vector out(n, 0.0);
  if (shifted) {
    out.assign(v.begin(), v.end());
    remove_mean(out);
    scale(1.0 / p.sigma, out);
  }
  const Index first = first_positive(pairs);
  for (Index j = first; j < first + p.k; ++j) {
    const Vector& u = pairs.vectors[j];
    if (u.size() != n) throw std::invalid_argument("pinv_apply: dimension mismatch");
    double c = 1.0 / pairs.values[j];
    if (shifted) c -= 1.0 / p.sigma;
    axpy(c * dot(u, v), u, out);
  }
  return out;
}

Vector materialize(const PinvApprox& p, Index n) {
  if (n > kMaterializeLimit) {
    throw std::invalid_argument("materialize: refused for n > " + std::to_string(kMaterializeLimit));
  }
  Vector dense(n * n);
  Vector e(n, 0.0);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = pinv_apply(p, e);
    e[j] = 0.0;
    for (Index i = 0; i < n; ++i) dense[i * n + j] = col[i];
  }
  return dense;
}

double estimate_lambda_max(const CsrMatrix& laplacian, Index iterations, std::uint64_t seed) {
  const Index n = laplacian.n();
  if (n == 0) throw std::invalid_argument("estimate_lambda_max: empty matrix");
  Rng rng(seed);
  Vector x = rng.vector(n);
  if (n > 1) remove_mean(x);
  scale(1.0 / norm2(x), x);
  MvpCounter counter;
  Vector ax = spmv(laplacian, x, counter);
  for (Index it = 0; it < iterations; ++it) {
    const double nrm = norm2(ax);
    if (nrm == 0.0) break;
    x = ax;
    scale(1.0 / nrm, x);
    ax = spmv(laplacian, x, counter);
  }
  return dot(x, ax);
}

double choose_sigma(SigmaPolicy policy, const EigenPairSet& pairs, Index k, double lambda_max) {
  if (k == 0 || k > positive_count(pairs)) throw std::invalid_argument("choose_sigma: k out of range");
  const double lk = pairs.values[first_positive(pairs) + k - 1];
  return policy == SigmaPolicy::midpoint ? 0.5 * (lk + std::max(lk, lambda_max)) : lk;
}

GapRatios gap_ratios(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("gap_ratios: no values");
  for (Index j = 0; j < values.size(); ++j) {
    if (!(values[j] > 0.0)) throw std::invalid_argument("gap_ratios: values must be positive");
    if (j > 0 && values[j] < values[j - 1]) {
      throw std::invalid_argument("gap_ratios: values must be ascending");
    }
  }
  GapRatios out;
  out.gap = values.back() / values.front();
  for (Index j = 0; j + 1 < values.size(); ++j) {
    const double d = values[j + 1] - values[j];
    out.xi.push_back(d > 0.0 ? values[j] / d : kInfiniteSeparation);
  }
  return out;
}

}  // namespace lapeig
