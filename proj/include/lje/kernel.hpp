#pragma once

#include <cstdint>
#include <vector>

#include "lje/alias_table.hpp"
#include "lje/rng.hpp"

namespace lje {

struct KernelOptions {
  /// Explicit terms kept in the moment series before the analytic remainder.
  std::int64_t moment_cutoff = 1'000'000;
  /// Explicit terms kept in the per-site tail tables and in the sampler.
  std::int64_t table_cutoff = 100'000;
};

/// A power-series value split into the explicit part and the remainder estimate,
/// with a bound on the error of the remainder.
struct SeriesValue {
  double value = 0.0;
  double remainder = 0.0;
  double error_bound = 0.0;
};

/// Sum_{z >= from} z^{-s} for s > 1: explicit terms up to `cutoff`, then an
/// Euler-Maclaurin remainder through the third-derivative correction.
SeriesValue power_series_tail(double s, std::int64_t from, std::int64_t cutoff);

/// Euler-Maclaurin remainder Sum_{z > cutoff} z^{-s}.
SeriesValue power_series_remainder(double s, std::int64_t cutoff);

/// Symmetric heavy-tailed jump law p(z) = c_gamma |z|^{-gamma-1}, p(0) = 0.
///
/// Immutable after construction and safe to share between threads. Tail sums
/// r_N^{+-} and the first-moment tails Theta_x^{+-} are served from tables up to
/// `table_cutoff` and from the analytic remainder beyond.
class JumpKernel {
 public:
  JumpKernel(double gamma, double tol, KernelOptions options = {});

  double gamma() const { return gamma_; }
  double c_gamma() const { return c_gamma_; }
  /// sigma^2 = Sum_z z^2 p(z).
  double variance() const { return variance_; }
  /// m = Sum_{z >= 1} z p(z).
  double mean_m() const { return mean_m_; }
  std::int64_t truncation_radius() const { return table_cutoff_; }

  /// Bound on |Sum_z p(z) - 1| including the truncation remainder.
  double normalization_error() const { return normalization_error_; }

  double prob(std::int64_t z) const;

  /// Sum_{y >= x} p(y) for x >= 1.
  double upper_tail(std::int64_t x) const;
  /// Sum_{y >= x} y p(y) for x >= 1.
  double first_moment_tail(std::int64_t x) const;

  /// r_N^-(x/N) = Sum_{y >= x} p(y).
  double tail_left(std::int64_t x, std::int64_t N) const;
  /// r_N^+(x/N) = Sum_{y <= x-N} p(y).
  double tail_right(std::int64_t x, std::int64_t N) const;
  /// Theta_x^- = Sum_{y <= 0} (x-y) p(x-y).
  double theta_minus(std::int64_t x, std::int64_t N) const;
  /// Theta_x^+ = Sum_{y >= N} (y-x) p(x-y).
  double theta_plus(std::int64_t x, std::int64_t N) const;

  /// Exact draw from p up to the (negligible) tail mass beyond the table,
  /// which is sampled by inverting the continuous power-law tail.
  std::int64_t sample_jump(Rng& rng) const;

 private:
  void check_site(std::int64_t x, std::int64_t N) const;

  double gamma_;
  double c_gamma_;
  double variance_;
  double mean_m_;
  double normalization_error_;
  std::int64_t table_cutoff_;

  // suffix_mass_[x] = Sum_{y >= x} y^{-gamma-1}, suffix_first_[x] = Sum_{y >= x} y^{-gamma},
  // for 1 <= x <= table_cutoff_ + 1 (index 0 unused).
  std::vector<double> suffix_mass_;
  std::vector<double> suffix_first_;

  AliasTable magnitude_table_;
  double beyond_table_share_;  // P(|z| > table_cutoff_)
};

JumpKernel make_kernel(double gamma, double tol = 1e-12, KernelOptions options = {});

}  // namespace lje
