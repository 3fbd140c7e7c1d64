#include "hds/matrix.hpp"

#include <algorithm>

#include "hds/error.hpp"

namespace hds {

std::string_view to_string(Frame frame) {
  return frame == Frame::UnitCube ? "unit" : "bounds";
}

SampleMatrix::SampleMatrix(std::size_t rows, std::size_t cols, Frame frame)
    : rows_(rows), cols_(cols), frame_(frame), data_(rows * cols, 0.0) {}

void SampleMatrix::append_row(std::span<const double> values) {
  if (values.size() != cols_) {
    throw ConfigError("append_row: expected " + std::to_string(cols_) + " columns, got " +
                      std::to_string(values.size()));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void SampleMatrix::append_rows(const SampleMatrix& other) {
  if (other.empty()) return;
  if (other.cols_ != cols_) {
    throw ConfigError("append_rows: column mismatch");
  }
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

void SampleMatrix::truncate(std::size_t rows) {
  rows_ = std::min(rows_, rows);
  data_.resize(rows_ * cols_);
}

bool inside_unit_cube(std::span<const double> point) {
  return std::all_of(point.begin(), point.end(),
                     [](double v) { return v >= 0.0 && v <= 1.0; });
}

}  // namespace hds
