#include "prosodex/matrix.hpp"

#include "prosodex/error.hpp"

#include <algorithm>

namespace prosodex {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  for (const auto& r : rows) {
    const std::vector<double> values(r);
    append_row(values);
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) {
    cols_ = values.size();
  } else if (values.size() != cols_) {
    throw DomainError("row length " + std::to_string(values.size()) + " does not match " +
                      std::to_string(cols_) + " columns");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
  Matrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < indices.size(); ++j) out(r, j) = (*this)(r, indices[j]);
  }
  return out;
}

Matrix Matrix::without_row(std::size_t skip) const {
  Matrix out(rows_ - 1, cols_);
  std::size_t dst = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r == skip) continue;
    const auto src = row(r);
    std::copy(src.begin(), src.end(), out.row(dst++).begin());
  }
  return out;
}

}  // namespace prosodex
