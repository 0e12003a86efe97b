#include "lje/regime.hpp"

#include <cmath>
#include <stdexcept>

namespace lje {

std::string_view to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::ReactionOnly: return "reaction";
    case RegimeKind::ReactionDiffusionDirichlet: return "rd-dirichlet";
    case RegimeKind::HeatDirichlet: return "heat-dirichlet";
    case RegimeKind::HeatRobin: return "robin";
    case RegimeKind::HeatNeumann: return "neumann";
  }
  return "unknown";
}

RegimeKind parse_regime_kind(std::string_view name) {
  if (name == "reaction") return RegimeKind::ReactionOnly;
  if (name == "rd-dirichlet") return RegimeKind::ReactionDiffusionDirichlet;
  if (name == "heat-dirichlet") return RegimeKind::HeatDirichlet;
  if (name == "robin") return RegimeKind::HeatRobin;
  if (name == "neumann") return RegimeKind::HeatNeumann;
  throw std::invalid_argument("unknown regime '" + std::string(name) +
                              "' (expected reaction, rd-dirichlet, heat-dirichlet, robin or neumann)");
}

double reaction_threshold(double gamma, ReservoirVariant variant) {
  return variant == ReservoirVariant::Case1 ? 1.0 - gamma : 2.0 - gamma;
}

Regime regime_coefficients(RegimeKind kind, const JumpKernel& kernel, double kappa, ReservoirVariant variant) {
  const double gamma = kernel.gamma();
  Regime r;
  r.kind = kind;
  r.reaction_exponent = variant == ReservoirVariant::Case1 ? gamma + 1.0 : gamma;
  const double sigma = std::sqrt(kernel.variance());
  const double reaction_rate =
      variant == ReservoirVariant::Case1 ? kappa * kernel.c_gamma() : kappa * kernel.c_gamma() / gamma;
  switch (kind) {
    case RegimeKind::ReactionOnly:
      r.kappa_hat = reaction_rate;
      break;
    case RegimeKind::ReactionDiffusionDirichlet:
      r.sigma_hat = sigma;
      r.kappa_hat = reaction_rate;
      break;
    case RegimeKind::HeatDirichlet:
    case RegimeKind::HeatNeumann:
      r.sigma_hat = sigma;
      break;
    case RegimeKind::HeatRobin:
      r.sigma_hat = sigma;
      // Boundary mass seen by the left reservoir: Sum_x r_N^-(x) -> m for extended
      // reservoirs, Sum_x p(x) = 1/2 for Case 1, and the single site for Case 2.
      switch (variant) {
        case ReservoirVariant::Extended: r.m_hat = kernel.mean_m() * kappa; break;
        case ReservoirVariant::Case1: r.m_hat = 0.5 * kappa; break;
        case ReservoirVariant::Case2: r.m_hat = kappa; break;
      }
      break;
  }
  return r;
}

Regime classify_regime(double gamma, double theta, const JumpKernel& kernel, double kappa,
                       ReservoirVariant variant, double boundary_tol) {
  if (!(gamma > 2.0)) throw std::domain_error("regime classification needs gamma > 2");
  if (kernel.gamma() != gamma) throw std::invalid_argument("kernel gamma does not match");
  auto make = [&](RegimeKind kind) { return regime_coefficients(kind, kernel, kappa, variant); };
  if (std::abs(theta - 1.0) <= boundary_tol) return make(RegimeKind::HeatRobin);
  if (theta > 1.0) return make(RegimeKind::HeatNeumann);
  if (variant == ReservoirVariant::Case2) return make(RegimeKind::HeatDirichlet);
  const double threshold = reaction_threshold(gamma, variant);
  if (std::abs(theta - threshold) <= boundary_tol) return make(RegimeKind::ReactionDiffusionDirichlet);
  if (theta < threshold) return make(RegimeKind::ReactionOnly);
  return make(RegimeKind::HeatDirichlet);
}

double time_scale_exponent(double gamma, double theta, ReservoirVariant variant, double boundary_tol) {
  if (variant == ReservoirVariant::Case2) return 2.0;
  const double threshold = reaction_threshold(gamma, variant);
  if (theta >= threshold - boundary_tol) return 2.0;
  return variant == ReservoirVariant::Case1 ? gamma + 1.0 + theta : gamma + theta;
}

double time_scale(int N, double gamma, double theta, ReservoirVariant variant) {
  if (N < 2) throw std::invalid_argument("time_scale needs N >= 2");
  return std::pow(static_cast<double>(N), time_scale_exponent(gamma, theta, variant));
}

}  // namespace lje
