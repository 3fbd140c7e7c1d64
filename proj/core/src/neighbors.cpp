#include "hds/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace hds {
namespace {

// Squared distance, abandoned once the partial sum reaches `limit`. Accepted
// values are always summed in full and in the same order.
double squared_distance(const double* a, const double* b, std::size_t dims, double limit) {
  constexpr std::size_t kChunk = 8;
  double s = 0.0;
  std::size_t j = 0;
  for (; j + kChunk <= dims; j += kChunk) {
    for (std::size_t t = j; t < j + kChunk; ++t) {
      const double diff = a[t] - b[t];
      s += diff * diff;
    }
    if (s >= limit) return s;
  }
  for (; j < dims; ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

// Bounded max-heap of the k smallest squared distances seen so far.
class NearestSet {
 public:
  explicit NearestSet(std::size_t k) : k_(k) { heap_.reserve(k + 1); }

  double worst() const {
    return heap_.size() < k_ ? std::numeric_limits<double>::infinity() : heap_.front();
  }
  void offer(double d2) {
    if (heap_.size() < k_) {
      heap_.push_back(d2);
      std::push_heap(heap_.begin(), heap_.end());
    } else if (d2 < heap_.front()) {
      std::pop_heap(heap_.begin(), heap_.end());
      heap_.back() = d2;
      std::push_heap(heap_.begin(), heap_.end());
    }
  }
  double mean_distance() {
    std::sort(heap_.begin(), heap_.end());
    double sum = 0.0;
    for (double d2 : heap_) sum += std::sqrt(d2);
    return heap_.empty() ? 0.0 : sum / static_cast<double>(heap_.size());
  }

 private:
  std::size_t k_;
  std::vector<double> heap_;
};

class KdTree {
 public:
  explicit KdTree(const SampleMatrix& points) : points_(points), dims_(points.cols()) {
    index_.resize(points.rows());
    std::iota(index_.begin(), index_.end(), 0);
    nodes_.reserve(2 * points.rows() / kLeafSize + 2);
    build(0, index_.size());
    ordered_.resize(points.rows() * dims_);
    for (std::size_t i = 0; i < index_.size(); ++i) {
      const auto row = points.row(index_[i]);
      std::copy(row.begin(), row.end(), ordered_.begin() + static_cast<std::ptrdiff_t>(i * dims_));
    }
  }

  void query(std::size_t self, NearestSet& best, std::vector<double>& offsets) const {
    std::fill(offsets.begin(), offsets.end(), 0.0);
    search(0, self, best, 0.0, offsets);
  }

 private:
  static constexpr std::size_t kLeafSize = 32;

  struct Node {
    std::size_t begin;
    std::size_t end;
    std::size_t axis = 0;
    double split = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    bool leaf = true;
  };

  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back({begin, end});
    if (end - begin <= kLeafSize) return id;

    // Split on the widest axis at the median.
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t j = 0; j < dims_; ++j) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t i = begin; i < end; ++i) {
        const double v = points_(index_[i], j);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi - lo > widest) {
        widest = hi - lo;
        axis = j;
      }
    }
    if (widest <= 0.0) return id;
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin),
                     index_.begin() + static_cast<std::ptrdiff_t>(mid),
                     index_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) { return points_(a, axis) < points_(b, axis); });
    const double split = points_(index_[mid], axis);
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    Node& node = nodes_[id];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    node.leaf = false;
    return id;
  }

  // `bound` is the squared distance from the query to the node's cell,
  // accumulated from the per-axis `offsets`.
  void search(std::size_t id, std::size_t self, NearestSet& best, double bound,
              std::vector<double>& offsets) const {
    const Node& node = nodes_[id];
    if (node.leaf) {
      const double* q = points_.row(self).data();
      for (std::size_t i = node.begin; i < node.end; ++i) {
        if (index_[i] == self) continue;
        best.offer(squared_distance(q, ordered_.data() + i * dims_, dims_, best.worst()));
      }
      return;
    }
    const double delta = points_(self, node.axis) - node.split;
    const std::size_t near = delta < 0.0 ? node.left : node.right;
    const std::size_t far = delta < 0.0 ? node.right : node.left;
    search(near, self, best, bound, offsets);
    const double previous = offsets[node.axis];
    const double far_bound = bound - previous * previous + delta * delta;
    // <= keeps points lying exactly on the splitting plane reachable.
    if (far_bound <= best.worst()) {
      offsets[node.axis] = delta;
      search(far, self, best, far_bound, offsets);
      offsets[node.axis] = previous;
    }
  }

  const SampleMatrix& points_;
  std::size_t dims_;
  std::vector<std::size_t> index_;
  std::vector<Node> nodes_;
  std::vector<double> ordered_;  // points in index_ order
};

}  // namespace

std::vector<double> mean_knn_distance(const SampleMatrix& points, std::size_t k,
                                      std::size_t brute_force_limit) {
  const std::size_t n = points.rows();
  const std::size_t dims = points.cols();
  std::vector<double> out(n, 0.0);
  if (n < 2 || k == 0) return out;
  k = std::min(k, n - 1);

  if (n <= brute_force_limit) {
    for (std::size_t i = 0; i < n; ++i) {
      NearestSet best(k);
      const double* q = points.row(i).data();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        best.offer(squared_distance(q, points.row(j).data(), dims, best.worst()));
      }
      out[i] = best.mean_distance();
    }
    return out;
  }

  const KdTree tree(points);
  std::vector<double> offsets(dims);
  for (std::size_t i = 0; i < n; ++i) {
    NearestSet best(k);
    tree.query(i, best, offsets);
    out[i] = best.mean_distance();
  }
  return out;
}

}  // namespace hds
