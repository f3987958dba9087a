#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace hyfr {

// Compressed sparse row matrix. Column indices are sorted and unique per row.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  int rows() const { return nrows_; }
  int cols() const { return ncols_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(vals_.size()); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return vals_; }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

  // Dense view, for small oracle comparisons in tests.
  Eigen::MatrixXd to_dense() const;

  friend class CooBuilder;

 private:
  int nrows_ = 0, ncols_ = 0;
  std::vector<int> row_ptr_, col_idx_;
  std::vector<double> vals_;
};

// Accumulates (i, j, v) entries; duplicates are summed on build.
class CooBuilder {
 public:
  CooBuilder(int rows, int cols) : rows_(rows), cols_(cols) {}

  void add(int i, int j, double v) { entries_.push_back({i, j, v}); }
  void reserve(std::size_t n) { entries_.reserve(n); }

  CsrMatrix build() const;

 private:
  struct Entry {
    int i, j;
    double v;
  };
  int rows_, cols_;
  std::vector<Entry> entries_;
};

}  // namespace hyfr
