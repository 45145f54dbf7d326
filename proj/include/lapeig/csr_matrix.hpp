#pragma once

#include <span>
#include <vector>

#include "lapeig/types.hpp"

namespace lapeig {

struct Triplet {
  Index row;
  Index col;
  double value;
};

// Square sparse matrix in compressed sparse row form. Column indices are
// strictly increasing within each row. Immutable after construction.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  // Validates the CSR invariants; when `symmetric` is set the transpose must
  // match exactly. Throws std::invalid_argument on violation.
  CsrMatrix(Index n, std::vector<Index> row_ptr, std::vector<Index> col_idx, Vector values,
            bool symmetric);

  // Duplicate (row, col) entries are summed.
  static CsrMatrix from_triplets(Index n, std::vector<Triplet> entries, bool symmetric);
  static CsrMatrix identity(Index n);
  static CsrMatrix diagonal(std::span<const double> d);
  // Row-major dense input; exact zeros are dropped.
  static CsrMatrix from_dense(Index n, std::span<const double> dense, bool symmetric);

  Index n() const { return n_; }
  Index nnz() const { return col_idx_.size(); }
  bool symmetric() const { return symmetric_; }

  std::span<const Index> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  // Entry lookup by binary search; 0 when not stored.
  double at(Index i, Index j) const;
  bool contains(Index i, Index j) const;

  Vector diagonal() const;
  double max_abs() const;
  // Lower triangle including the diagonal.
  CsrMatrix lower() const;
  CsrMatrix transpose() const;
  // Row-major n*n copy; meant for tests and small problems.
  Vector to_dense() const;

 private:
  Index n_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  Vector values_;
  bool symmetric_ = false;
};

}  // namespace lapeig
