#include "hyfr/sparse.hpp"

#include <algorithm>

#include "hyfr/errors.hpp"

namespace hyfr {

Eigen::VectorXd CsrMatrix::multiply(const Eigen::VectorXd& x) const {
  if (x.size() != ncols_) throw InvalidArgument("CsrMatrix::multiply: size mismatch");
  Eigen::VectorXd y(nrows_);
  for (int i = 0; i < nrows_; ++i) {
    double acc = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += vals_[k] * x[col_idx_[k]];
    y[i] = acc;
  }
  return y;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nrows_, ncols_);
  for (int i = 0; i < nrows_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) m(i, col_idx_[k]) += vals_[k];
  return m;
}

CsrMatrix CooBuilder::build() const {
  std::vector<Entry> sorted = entries_;
  std::sort(sorted.begin(), sorted.end(), [](const Entry& a, const Entry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  CsrMatrix m;
  m.nrows_ = rows_;
  m.ncols_ = cols_;
  m.row_ptr_.assign(rows_ + 1, 0);
  m.col_idx_.reserve(sorted.size());
  m.vals_.reserve(sorted.size());

  std::size_t k = 0;
  for (int i = 0; i < rows_; ++i) {
    while (k < sorted.size() && sorted[k].i == i) {
      int j = sorted[k].j;
      double v = 0.0;
      while (k < sorted.size() && sorted[k].i == i && sorted[k].j == j) v += sorted[k++].v;
      m.col_idx_.push_back(j);
      m.vals_.push_back(v);
    }
    m.row_ptr_[i + 1] = static_cast<int>(m.col_idx_.size());
  }
  return m;
}

}  // namespace hyfr
