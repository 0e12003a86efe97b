#pragma once

#include <string>
#include <string_view>

#include "lje/kernel.hpp"
#include "lje/model.hpp"

namespace lje {

enum class RegimeKind {
  ReactionOnly,                ///< sigma_hat = 0, singular reaction only
  ReactionDiffusionDirichlet,  ///< heat + singular reaction, Dirichlet data
  HeatDirichlet,
  HeatRobin,
  HeatNeumann,
};

std::string_view to_string(RegimeKind kind);
RegimeKind parse_regime_kind(std::string_view name);

/// Limiting equation and its coefficients.
///
/// The reaction weights are V0(q) = alpha q^{-a} + beta (1-q)^{-a} and
/// V1(q) = q^{-a} + (1-q)^{-a} with a = `reaction_exponent` (gamma for the
/// extended reservoirs, gamma + 1 for the single-Glauber variant).
struct Regime {
  RegimeKind kind = RegimeKind::HeatDirichlet;
  double sigma_hat = 0.0;
  double kappa_hat = 0.0;
  double m_hat = 0.0;
  double reaction_exponent = 3.0;

  double diffusivity() const { return 0.5 * sigma_hat * sigma_hat; }
  bool has_reaction() const {
    return kind == RegimeKind::ReactionOnly || kind == RegimeKind::ReactionDiffusionDirichlet;
  }
  bool has_flux_boundary() const { return kind == RegimeKind::HeatRobin || kind == RegimeKind::HeatNeumann; }
};

/// Critical theta separating the reaction and diffusive scalings
/// (2 - gamma for extended reservoirs, 1 - gamma for the single-Glauber variant).
double reaction_threshold(double gamma, ReservoirVariant variant);

/// Coefficients of a given regime kind for this kernel and reservoir variant,
/// regardless of where (gamma, theta) lies.
Regime regime_coefficients(RegimeKind kind, const JumpKernel& kernel, double kappa,
                           ReservoirVariant variant = ReservoirVariant::Extended);

/// Partition of the (gamma, theta) plane. The lines theta = threshold and
/// theta = 1 are closed: they map to the reaction-diffusion and Robin regimes.
/// `boundary_tol` widens those lines so that swept grids land on them.
Regime classify_regime(double gamma, double theta, const JumpKernel& kernel, double kappa,
                       ReservoirVariant variant = ReservoirVariant::Extended, double boundary_tol = 1e-12);

/// Exponent e with Theta(N) = N^e.
double time_scale_exponent(double gamma, double theta, ReservoirVariant variant = ReservoirVariant::Extended,
                           double boundary_tol = 1e-12);

/// Theta(N): N^2 on the diffusive side (theta >= 2 - gamma), N^{gamma+theta} below.
double time_scale(int N, double gamma, double theta, ReservoirVariant variant = ReservoirVariant::Extended);

}  // namespace lje
