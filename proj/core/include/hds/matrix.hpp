#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hds {

/// Coordinate frame a sample matrix is expressed in.
enum class Frame { UnitCube, Bounds };

std::string_view to_string(Frame frame);

/// Dense row-major N x D matrix of sample points.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(std::size_t rows, std::size_t cols, Frame frame = Frame::UnitCube);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }
  Frame frame() const { return frame_; }
  void set_frame(Frame frame) { frame_ = frame; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void reserve_rows(std::size_t rows) { data_.reserve(rows * cols_); }
  void append_row(std::span<const double> values);
  /// Appends every row of `other`; column counts must match.
  void append_rows(const SampleMatrix& other);
  void truncate(std::size_t rows);

  friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Frame frame_ = Frame::UnitCube;
  std::vector<double> data_;
};

/// True when every entry lies in the closed unit interval.
bool inside_unit_cube(std::span<const double> point);

}  // namespace hds
