#pragma once

#include <string>
#include <string_view>

namespace lje {

/// Which boundary mechanism couples the bulk to the reservoirs.
enum class ReservoirVariant {
  Extended,  ///< infinitely extended reservoirs feeding every site through r_N^{+-}
  Case1,     ///< single Glauber dynamics with weight p(x) (left) / p(N-x) (right)
  Case2,     ///< Glauber dynamics at sites 1 and N-1 only
};

std::string_view to_string(ReservoirVariant variant);
ReservoirVariant parse_reservoir_variant(std::string_view name);

/// Everything that defines one microscopic system.
struct ModelParams {
  int N = 64;  ///< bulk is {1, ..., N-1}
  double gamma = 3.0;
  double theta = 0.0;
  double kappa = 1.0;  ///< kappa = 0 switches reservoirs off (conservation tests)
  double alpha = 0.5;
  double beta = 0.5;
  ReservoirVariant reservoir = ReservoirVariant::Extended;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace lje
