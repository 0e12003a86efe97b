#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lje {

/// Walker/Vose alias table: O(n) build, O(1) draws from a finite discrete law.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  /// Maps one uniform u in [0, 1) to an index distributed as the weights.
  std::size_t sample(double u) const {
    const double scaled = u * static_cast<double>(prob_.size());
    auto column = static_cast<std::size_t>(scaled);
    if (column >= prob_.size()) column = prob_.size() - 1;
    const double coin = scaled - static_cast<double>(column);
    return coin < prob_[column] ? column : alias_[column];
  }

  std::size_t size() const { return prob_.size(); }
  bool empty() const { return prob_.empty(); }
  double total_weight() const { return total_; }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  double total_ = 0.0;
};

}  // namespace lje
