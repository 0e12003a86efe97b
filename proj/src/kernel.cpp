#include "lje/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lje {

SeriesValue power_series_remainder(double s, std::int64_t cutoff) {
  if (!(s > 1.0)) throw std::domain_error("power series needs exponent > 1");
  if (cutoff < 1) throw std::invalid_argument("power series remainder needs cutoff >= 1");
  const double z = static_cast<double>(cutoff);
  const double fz = std::pow(z, -s);
  // Sum_{k > Z} f(k) = Int_Z^inf f - f(Z)/2 - f'(Z)/12 + f'''(Z)/720 - ...
  const double integral = z * fz / (s - 1.0);
  const double d1 = s * fz / z / 12.0;
  const double d3 = s * (s + 1.0) * (s + 2.0) * fz / (z * z * z) / 720.0;
  const double d5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * fz / std::pow(z, 5) / 30240.0;
  SeriesValue out;
  out.remainder = integral - 0.5 * fz + d1 - d3;
  out.value = out.remainder;
  out.error_bound = 2.0 * d5;
  return out;
}

SeriesValue power_series_tail(double s, std::int64_t from, std::int64_t cutoff) {
  if (from < 1) throw std::invalid_argument("power series tail starts at 1");
  if (cutoff < from) {
    if (from == 1) return power_series_tail(s, 1, 1);
    return power_series_remainder(s, from - 1);
  }
  double explicit_sum = 0.0;
  for (std::int64_t k = cutoff; k >= from; --k) explicit_sum += std::pow(static_cast<double>(k), -s);
  SeriesValue out = power_series_remainder(s, cutoff);
  out.value = explicit_sum + out.remainder;
  return out;
}

JumpKernel::JumpKernel(double gamma, double tol, KernelOptions options)
    : gamma_(gamma), table_cutoff_(options.table_cutoff) {
  if (!(gamma > 2.0)) {
    throw std::domain_error("jump kernel requires gamma > 2 (finite variance), got " + std::to_string(gamma));
  }
  if (!(tol > 0.0)) throw std::invalid_argument("kernel tolerance must be positive");
  if (options.moment_cutoff < 16 || options.table_cutoff < 16) {
    throw std::invalid_argument("kernel cutoffs must be at least 16");
  }

  const SeriesValue mass = power_series_tail(gamma + 1.0, 1, options.moment_cutoff);
  const SeriesValue first = power_series_tail(gamma, 1, options.moment_cutoff);
  const SeriesValue second = power_series_tail(gamma - 1.0, 1, options.moment_cutoff);
  for (const SeriesValue* v : {&mass, &first, &second}) {
    if (v->error_bound / v->value > tol) {
      throw std::runtime_error("kernel series remainder bound exceeds tolerance; raise moment_cutoff");
    }
  }

  c_gamma_ = 0.5 / mass.value;
  variance_ = 2.0 * c_gamma_ * second.value;
  mean_m_ = c_gamma_ * first.value;
  // Remainder bound plus a random-walk estimate of the summation rounding.
  const double rounding = std::sqrt(static_cast<double>(options.moment_cutoff)) * 0x1.0p-52;
  normalization_error_ =
      std::abs(2.0 * c_gamma_ * mass.value - 1.0) + 2.0 * c_gamma_ * mass.error_bound + rounding;

  const std::int64_t zt = table_cutoff_;
  suffix_mass_.assign(static_cast<std::size_t>(zt) + 2, 0.0);
  suffix_first_.assign(static_cast<std::size_t>(zt) + 2, 0.0);
  suffix_mass_[zt + 1] = power_series_remainder(gamma + 1.0, zt).remainder;
  suffix_first_[zt + 1] = power_series_remainder(gamma, zt).remainder;
  std::vector<double> weights(static_cast<std::size_t>(zt));
  for (std::int64_t k = zt; k >= 1; --k) {
    const double base = std::pow(static_cast<double>(k), -gamma - 1.0);
    weights[k - 1] = base;
    suffix_mass_[k] = suffix_mass_[k + 1] + base;
    suffix_first_[k] = suffix_first_[k + 1] + base * static_cast<double>(k);
  }
  magnitude_table_ = AliasTable(weights);
  beyond_table_share_ = suffix_mass_[zt + 1] / suffix_mass_[1];
}

double JumpKernel::prob(std::int64_t z) const {
  if (z == 0) return 0.0;
  const double a = static_cast<double>(z < 0 ? -z : z);
  return c_gamma_ * std::pow(a, -gamma_ - 1.0);
}

double JumpKernel::upper_tail(std::int64_t x) const {
  if (x < 1) throw std::invalid_argument("upper_tail needs x >= 1");
  if (x <= table_cutoff_ + 1) {
    // Ratio form keeps Sum_{y>=1} p(y) = 1/2 exact.
    return 0.5 * (suffix_mass_[x] / suffix_mass_[1]);
  }
  return c_gamma_ * power_series_remainder(gamma_ + 1.0, x - 1).remainder;
}

double JumpKernel::first_moment_tail(std::int64_t x) const {
  if (x < 1) throw std::invalid_argument("first_moment_tail needs x >= 1");
  if (x <= table_cutoff_ + 1) return c_gamma_ * suffix_first_[x];
  return c_gamma_ * power_series_remainder(gamma_, x - 1).remainder;
}

void JumpKernel::check_site(std::int64_t x, std::int64_t N) const {
  if (N < 2 || x < 1 || x > N - 1) {
    throw std::invalid_argument("site " + std::to_string(x) + " outside Lambda_N for N=" + std::to_string(N));
  }
}

double JumpKernel::tail_left(std::int64_t x, std::int64_t N) const {
  check_site(x, N);
  return upper_tail(x);
}

double JumpKernel::tail_right(std::int64_t x, std::int64_t N) const {
  check_site(x, N);
  return upper_tail(N - x);
}

double JumpKernel::theta_minus(std::int64_t x, std::int64_t N) const {
  check_site(x, N);
  return first_moment_tail(x);
}

double JumpKernel::theta_plus(std::int64_t x, std::int64_t N) const {
  check_site(x, N);
  return first_moment_tail(N - x);
}

std::int64_t JumpKernel::sample_jump(Rng& rng) const {
  const std::uint64_t bits = rng();
  const bool negative = (bits >> 63) != 0;
  std::int64_t magnitude;
  if (uniform01(rng) < beyond_table_share_) {
    // Continuous Pareto tail on [Z + 1/2, inf), rounded to the nearest site.
    const double base = static_cast<double>(table_cutoff_) + 0.5;
    magnitude = std::llround(base * std::pow(uniform01(rng), -1.0 / gamma_));
    if (magnitude <= table_cutoff_) magnitude = table_cutoff_ + 1;
  } else {
    magnitude = static_cast<std::int64_t>(magnitude_table_.sample(uniform01(rng))) + 1;
  }
  return negative ? -magnitude : magnitude;
}

JumpKernel make_kernel(double gamma, double tol, KernelOptions options) {
  return JumpKernel(gamma, tol, options);
}

}  // namespace lje
