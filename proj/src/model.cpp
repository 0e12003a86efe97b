#include "lje/model.hpp"

#include <cmath>
#include <stdexcept>

namespace lje {

std::string_view to_string(ReservoirVariant variant) {
  switch (variant) {
    case ReservoirVariant::Extended: return "extended";
    case ReservoirVariant::Case1: return "case1";
    case ReservoirVariant::Case2: return "case2";
  }
  return "unknown";
}

ReservoirVariant parse_reservoir_variant(std::string_view name) {
  if (name == "extended") return ReservoirVariant::Extended;
  if (name == "case1") return ReservoirVariant::Case1;
  if (name == "case2") return ReservoirVariant::Case2;
  throw std::invalid_argument("unknown reservoir variant '" + std::string(name) +
                              "' (expected extended, case1 or case2)");
}

void ModelParams::validate() const {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  if (!(gamma > 2.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and > 2");
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be finite and >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0,1]");
}

}  // namespace lje
