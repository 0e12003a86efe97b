#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lje {

/// Binary indexed tree over non-negative rates at positions 1..n.
/// Supports point updates, prefix sums and inverse-CDF search in O(log n).
class FenwickTree {
 public:
  FenwickTree() = default;
  explicit FenwickTree(std::size_t n);

  /// Rebuilds from values[0..n-1] (position i+1 gets values[i]) in O(n).
  void assign(std::span<const double> values);

  void add(std::size_t pos, double delta);
  double prefix(std::size_t pos) const;
  double total() const { return prefix(n_); }
  std::size_t size() const { return n_; }

  /// Smallest position p with prefix(p) > target; returns n when target
  /// is at or above the total (callers clamp rounding overshoot that way).
  std::size_t find(double target) const;

 private:
  std::size_t n_ = 0;
  std::size_t top_bit_ = 0;
  std::vector<double> tree_;
};

}  // namespace lje
