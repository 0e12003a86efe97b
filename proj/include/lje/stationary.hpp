#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lje/profile.hpp"
#include "lje/regime.hpp"

namespace lje {

enum class StationaryForm { Linear, RobinLinear, Constant, ReactionEquilibrium, NumericBvp };

std::string_view to_string(StationaryForm form);

struct StationaryProfile {
  Regime regime;
  Profile profile;
  StationaryForm form = StationaryForm::Linear;
};

/// Stationary solution of the regime's equation on an M-cell grid. The
/// Neumann case needs the initial profile `g`, whose mass it preserves.
StationaryProfile stationary_profile(const Regime& regime, double alpha, double beta, int M,
                                     const std::optional<Profile>& g = std::nullopt);

/// Robin stationary line a + b q; returns (a, a + b), the values at q = 0 and q = 1.
std::pair<double, double> robin_boundary_values(const Regime& regime, double alpha, double beta);

struct ShapeReport {
  bool degenerate = false;  ///< alpha == beta: the profile is constant and the checks are vacuous
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }
};

/// Increasing, convex on (0,1/2), concave on (1/2,1), endpoint cells within
/// one grid spacing of alpha and beta. `tol` bounds the raw second differences.
ShapeReport shape_check(const StationaryProfile& sp, double alpha, double beta, double tol);

struct AppendixNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double v1 = 0.0;
};

/// Discrete L2, H1 seminorm (forward differences) and L2(V1 dq) norm of p1 - p2,
/// with V1(q) = q^{-gamma} + (1-q)^{-gamma}.
AppendixNorms appendix_norms(const Profile& p1, const Profile& p2, double gamma);

}  // namespace lje
