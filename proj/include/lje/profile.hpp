#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lje {

/// Density values on the cell-centered grid q_i = (i + 1/2)/M, i = 0..M-1.
/// The grid never touches q = 0 or q = 1.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<double> values);

  static Profile constant(int cells, double value);
  static Profile from_function(int cells, const std::function<double(double)>& f);

  int cells() const { return static_cast<int>(values_.size()); }
  double spacing() const { return 1.0 / static_cast<double>(values_.size()); }
  double center(int i) const { return (static_cast<double>(i) + 0.5) / static_cast<double>(values_.size()); }

  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Piecewise-linear interpolation through the centers, extended linearly
  /// to the endpoints.
  double at(double q) const;
  /// Midpoint-rule integral over (0, 1).
  double integral() const;
  /// One-sided second-order extrapolation to q = 0 and q = 1.
  double left_boundary() const;
  double right_boundary() const;

  double min() const;
  double max() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<double> values_;
};

}  // namespace lje
