#include "lje/fenwick_tree.hpp"

#include <stdexcept>

namespace lje {

FenwickTree::FenwickTree(std::size_t n) : n_(n), tree_(n + 1, 0.0) {
  top_bit_ = 1;
  while ((top_bit_ << 1) <= n_) top_bit_ <<= 1;
  if (n_ == 0) top_bit_ = 0;
}

void FenwickTree::assign(std::span<const double> values) {
  if (values.size() != n_) throw std::invalid_argument("fenwick assign: size mismatch");
  for (std::size_t i = 1; i <= n_; ++i) tree_[i] = values[i - 1];
  for (std::size_t i = 1; i <= n_; ++i) {
    const std::size_t parent = i + (i & (~i + 1));
    if (parent <= n_) tree_[parent] += tree_[i];
  }
}

void FenwickTree::add(std::size_t pos, double delta) {
  for (; pos <= n_; pos += pos & (~pos + 1)) tree_[pos] += delta;
}

double FenwickTree::prefix(std::size_t pos) const {
  double sum = 0.0;
  for (; pos > 0; pos -= pos & (~pos + 1)) sum += tree_[pos];
  return sum;
}

std::size_t FenwickTree::find(double target) const {
  std::size_t idx = 0;
  for (std::size_t mask = top_bit_; mask != 0; mask >>= 1) {
    const std::size_t next = idx + mask;
    if (next <= n_ && tree_[next] <= target) {
      target -= tree_[next];
      idx = next;
    }
  }
  return idx + 1 > n_ ? n_ : idx + 1;
}

}  // namespace lje
