#include "lje/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lje {

Profile::Profile(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("profile needs at least one cell");
}

Profile Profile::constant(int cells, double value) {
  if (cells < 1) throw std::invalid_argument("profile needs at least one cell");
  return Profile(std::vector<double>(static_cast<std::size_t>(cells), value));
}

Profile Profile::from_function(int cells, const std::function<double(double)>& f) {
  if (cells < 1) throw std::invalid_argument("profile needs at least one cell");
  std::vector<double> v(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) v[static_cast<std::size_t>(i)] = f((i + 0.5) / cells);
  return Profile(std::move(v));
}

double Profile::at(double q) const {
  const int m = cells();
  if (m == 1) return values_[0];
  const double pos = q * m - 0.5;  // fractional cell index
  int i = static_cast<int>(std::floor(pos));
  i = std::clamp(i, 0, m - 2);
  const double w = pos - i;
  return (1.0 - w) * values_[static_cast<std::size_t>(i)] + w * values_[static_cast<std::size_t>(i + 1)];
}

double Profile::integral() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * spacing();
}

double Profile::left_boundary() const {
  if (cells() < 2) return values_.front();
  return 1.5 * values_[0] - 0.5 * values_[1];
}

double Profile::right_boundary() const {
  const std::size_t m = values_.size();
  if (m < 2) return values_.back();
  return 1.5 * values_[m - 1] - 0.5 * values_[m - 2];
}

double Profile::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Profile::max() const { return *std::max_element(values_.begin(), values_.end()); }

}  // namespace lje
