#pragma once

#include <vector>

#include "hds/matrix.hpp"

namespace testing_support {

inline std::vector<std::vector<double>> to_rows(const hds::SampleMatrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

inline hds::SampleMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                   hds::Frame frame = hds::Frame::UnitCube) {
  hds::SampleMatrix m(0, rows.empty() ? 0 : rows.front().size(), frame);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

}  // namespace testing_support
