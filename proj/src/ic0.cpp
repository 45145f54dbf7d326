#include "lapeig/ic0.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace lapeig {

Ic0Factor::Ic0Factor(CsrMatrix l, double shift, int attempts)
    : l_(std::move(l)), diag_(l_.n()), shift_(shift), attempts_(attempts) {
  for (Index i = 0; i < l_.n(); ++i) {
    const Index begin = l_.row_ptr()[i];
    const Index end = l_.row_ptr()[i + 1];
    if (end == begin || l_.col_idx()[end - 1] != i) {
      throw std::invalid_argument("Ic0Factor: row " + std::to_string(i) +
                                  " must end with its diagonal entry");
    }
    if (!(l_.values()[end - 1] > 0.0)) {
      throw std::invalid_argument("Ic0Factor: diagonal must be strictly positive");
    }
    diag_[i] = l_.values()[end - 1];
  }
}

Ic0Factor Ic0Factor::identity(Index n) { return Ic0Factor(CsrMatrix::identity(n), 0.0, 0); }

void Ic0Factor::apply(std::span<const double> r, std::span<double> z) const {
  const Index n = l_.n();
  if (r.size() != n || z.size() != n) throw std::invalid_argument("Ic0Factor::apply: dimension mismatch");
  const auto row_ptr = l_.row_ptr();
  const auto col_idx = l_.col_idx();
  const auto values = l_.values();

  // L y = r
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    double s = r[i];
    for (Index p = row_ptr[i]; p + 1 < row_ptr[i + 1]; ++p) s -= values[p] * y[col_idx[p]];
    y[i] = s / diag_[i];
  }
  // L^T z = y, sweeping the rows of L as columns of L^T.
  for (Index i = n; i-- > 0;) {
    const double zi = y[i] / diag_[i];
    z[i] = zi;
    for (Index p = row_ptr[i]; p + 1 < row_ptr[i + 1]; ++p) y[col_idx[p]] -= values[p] * zi;
  }
}

std::vector<double> ic0_shift_schedule(double shift0, double max_diag) {
  std::vector<double> schedule{shift0};
  for (double s : {1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1 * max_diag}) {
    if (s > schedule.back()) schedule.push_back(s);
  }
  return schedule;
}

namespace {

constexpr double kPivotTolerance = 1e-14;

// Up-looking IC(0) on the pattern of `low` (lower triangle of A, diagonal
// last in each row). Returns nullopt on pivot breakdown.
std::optional<Vector> factor_with_shift(const CsrMatrix& low, std::span<const double> a_diag,
                                        double shift) {
  const Index n = low.n();
  const auto row_ptr = low.row_ptr();
  const auto col_idx = low.col_idx();
  Vector l(low.values().begin(), low.values().end());

  // Row i of L scattered into `work`, positions flagged in `mark`.
  Vector work(n, 0.0);
  std::vector<char> mark(n, 0);

  for (Index i = 0; i < n; ++i) {
    const Index begin = row_ptr[i];
    const Index diag_pos = row_ptr[i + 1] - 1;
    double pivot = a_diag[i] * (1.0 + shift);
    for (Index p = begin; p < diag_pos; ++p) {
      const Index k = col_idx[p];
      double s = l[p];
      // Dot of row i and row k of L over columns j < k present in both.
      for (Index q = row_ptr[k]; q + 1 < row_ptr[k + 1]; ++q) {
        const Index j = col_idx[q];
        if (mark[j]) s -= work[j] * l[q];
      }
      const double lik = s / l[row_ptr[k + 1] - 1];
      l[p] = lik;
      work[k] = lik;
      mark[k] = 1;
      pivot -= lik * lik;
    }
    for (Index p = begin; p < diag_pos; ++p) {
      mark[col_idx[p]] = 0;
      work[col_idx[p]] = 0.0;
    }
    if (!(pivot > kPivotTolerance * a_diag[i])) return std::nullopt;
    l[diag_pos] = std::sqrt(pivot);
  }
  return l;
}

}  // namespace

Ic0Factor ic0_factorize(const CsrMatrix& a, double shift0) {
  if (!a.symmetric()) throw std::invalid_argument("ic0_factorize: matrix must be symmetric");
  if (shift0 < 0.0) throw std::invalid_argument("ic0_factorize: shift must be nonnegative");
  const Vector a_diag = a.diagonal();
  for (Index i = 0; i < a.n(); ++i) {
    if (!(a_diag[i] > 0.0)) {
      throw std::invalid_argument("ic0_factorize: diagonal entry " + std::to_string(i) +
                                  " is not positive");
    }
  }
  const CsrMatrix low = a.lower();
  const double max_diag = a_diag.empty() ? 0.0 : *std::max_element(a_diag.begin(), a_diag.end());
  const auto schedule = ic0_shift_schedule(shift0, max_diag);
  for (std::size_t attempt = 0; attempt < schedule.size(); ++attempt) {
    auto values = factor_with_shift(low, a_diag, schedule[attempt]);
    if (!values) continue;
    CsrMatrix l(low.n(), {low.row_ptr().begin(), low.row_ptr().end()},
                {low.col_idx().begin(), low.col_idx().end()}, std::move(*values), false);
    return Ic0Factor(std::move(l), schedule[attempt], static_cast<int>(attempt));
  }
  throw Ic0Error("ic0_factorize: pivot breakdown for every shift up to " +
                 std::to_string(schedule.back()));
}

Vector precond_apply(const Ic0Factor& f, std::span<const double> r) {
  Vector z(r.size());
  f.apply(r, z);
  return z;
}

Vector projected_precond_apply(const Ic0Factor& f, const DeflationBasis& q,
                               std::span<const double> r) {
  Vector rp(r.begin(), r.end());
  q.project_out(rp);
  Vector z = precond_apply(f, rp);
  q.project_out(z);
  return z;
}

}  // namespace lapeig
