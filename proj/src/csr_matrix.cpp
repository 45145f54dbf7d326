#include "lapeig/csr_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lapeig {

CsrMatrix::CsrMatrix(Index n, std::vector<Index> row_ptr, std::vector<Index> col_idx,
                     Vector values, bool symmetric)
    : n_(n),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)),
      symmetric_(symmetric) {
  if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0) {
    throw std::invalid_argument("CsrMatrix: row_ptr must have n+1 entries starting at 0");
  }
  if (row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size()) {
    throw std::invalid_argument("CsrMatrix: row_ptr/col_idx/values size mismatch");
  }
  for (Index i = 0; i < n_; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) {
      throw std::invalid_argument("CsrMatrix: row_ptr must be nondecreasing");
    }
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (col_idx_[p] >= n_) {
        throw std::invalid_argument("CsrMatrix: column index out of range in row " +
                                    std::to_string(i));
      }
      if (p > row_ptr_[i] && col_idx_[p] <= col_idx_[p - 1]) {
        throw std::invalid_argument("CsrMatrix: column indices not strictly increasing in row " +
                                    std::to_string(i));
      }
    }
  }
  if (symmetric_) {
    for (Index i = 0; i < n_; ++i) {
      for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
        const Index j = col_idx_[p];
        if (j == i) continue;
        if (!contains(j, i) || at(j, i) != values_[p]) {
          throw std::invalid_argument("CsrMatrix: symmetric flag set but entry (" +
                                      std::to_string(i) + "," + std::to_string(j) +
                                      ") has no matching transpose entry");
        }
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(Index n, std::vector<Triplet> entries, bool symmetric) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Index> row_ptr(n + 1, 0);
  std::vector<Index> col_idx;
  Vector values;
  col_idx.reserve(entries.size());
  values.reserve(entries.size());
  for (Index k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (t.row >= n || t.col >= n) throw std::invalid_argument("from_triplets: index out of range");
    if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      values.back() += t.value;
      continue;
    }
    col_idx.push_back(t.col);
    values.push_back(t.value);
    ++row_ptr[t.row + 1];
  }
  for (Index i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), std::move(values), symmetric);
}

CsrMatrix CsrMatrix::identity(Index n) {
  Vector ones(n, 1.0);
  return diagonal(ones);
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> d) {
  const Index n = d.size();
  std::vector<Index> row_ptr(n + 1);
  std::vector<Index> col_idx(n);
  for (Index i = 0; i < n; ++i) {
    row_ptr[i + 1] = i + 1;
    col_idx[i] = i;
  }
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), Vector(d.begin(), d.end()), true);
}

CsrMatrix CsrMatrix::from_dense(Index n, std::span<const double> dense, bool symmetric) {
  if (dense.size() != n * n) throw std::invalid_argument("from_dense: expected n*n entries");
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (dense[i * n + j] != 0.0) t.push_back({i, j, dense[i * n + j]});
  return from_triplets(n, std::move(t), symmetric);
}

double CsrMatrix::at(Index i, Index j) const {
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<Index>(it - col_idx_.begin())];
}

bool CsrMatrix::contains(Index i, Index j) const {
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  return std::binary_search(first, last, j);
}

Vector CsrMatrix::diagonal() const {
  Vector d(n_, 0.0);
  for (Index i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

CsrMatrix CsrMatrix::lower() const {
  std::vector<Index> row_ptr(n_ + 1, 0);
  std::vector<Index> col_idx;
  Vector values;
  for (Index i = 0; i < n_; ++i) {
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1] && col_idx_[p] <= i; ++p) {
      col_idx.push_back(col_idx_[p]);
      values.push_back(values_[p]);
    }
    row_ptr[i + 1] = col_idx.size();
  }
  return CsrMatrix(n_, std::move(row_ptr), std::move(col_idx), std::move(values), false);
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (Index i = 0; i < n_; ++i)
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) t.push_back({col_idx_[p], i, values_[p]});
  return from_triplets(n_, std::move(t), symmetric_);
}

Vector CsrMatrix::to_dense() const {
  Vector d(n_ * n_, 0.0);
  for (Index i = 0; i < n_; ++i)
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d[i * n_ + col_idx_[p]] = values_[p];
  return d;
}

}  // namespace lapeig
