#include "lje/stationary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lje/pde.hpp"

namespace lje {

std::string_view to_string(StationaryForm form) {
  switch (form) {
    case StationaryForm::Linear: return "linear";
    case StationaryForm::RobinLinear: return "robin-linear";
    case StationaryForm::Constant: return "constant";
    case StationaryForm::ReactionEquilibrium: return "V0-over-V1";
    case StationaryForm::NumericBvp: return "numeric-bvp";
  }
  return "unknown";
}

std::pair<double, double> robin_boundary_values(const Regime& regime, double alpha, double beta) {
  if (!(regime.sigma_hat > 0.0)) throw std::invalid_argument("Robin profile needs sigma_hat > 0");
  const double k = regime.m_hat / regime.diffusivity();
  if (k == 0.0) return {0.5 * (alpha + beta), 0.5 * (alpha + beta)};
  const double b = k * (beta - alpha) / (2.0 + k);
  const double a = alpha + b / k;
  return {a, a + b};
}

namespace {

Profile reaction_diffusion_bvp(const Regime& regime, double alpha, double beta, int M) {
  const double r = regime.diffusivity() * M * M;
  const auto n = static_cast<std::size_t>(M);
  std::vector<double> sub(n, -r);
  std::vector<double> sup(n, -r);
  std::vector<double> diag(n, 2.0 * r);
  std::vector<double> rhs(n, 0.0);
  for (int i = 0; i < M; ++i) {
    const double q = (i + 0.5) / M;
    const double rate = regime.kappa_hat * reaction_v1(q, regime.reaction_exponent);
    const auto u = static_cast<std::size_t>(i);
    diag[u] += rate;
    rhs[u] = rate * reaction_equilibrium(q, alpha, beta, regime.reaction_exponent);
  }
  // Dirichlet ghosts 2 alpha - rho_0 and 2 beta - rho_{M-1}.
  diag[0] += r;
  rhs[0] += 2.0 * r * alpha;
  diag[n - 1] += r;
  rhs[n - 1] += 2.0 * r * beta;
  solve_tridiagonal(sub, diag, sup, rhs);
  return Profile(std::move(rhs));
}

}  // namespace

StationaryProfile stationary_profile(const Regime& regime, double alpha, double beta, int M,
                                     const std::optional<Profile>& g) {
  if (M < 2) throw std::invalid_argument("stationary profile needs M >= 2");
  StationaryProfile sp;
  sp.regime = regime;
  switch (regime.kind) {
    case RegimeKind::HeatDirichlet:
      sp.form = StationaryForm::Linear;
      sp.profile = Profile::from_function(M, [&](double q) { return alpha + (beta - alpha) * q; });
      break;
    case RegimeKind::HeatRobin: {
      const auto [left, right] = robin_boundary_values(regime, alpha, beta);
      sp.form = StationaryForm::RobinLinear;
      sp.profile = Profile::from_function(M, [&](double q) { return left + (right - left) * q; });
      break;
    }
    case RegimeKind::HeatNeumann:
      if (!g) throw std::invalid_argument("Neumann stationary profile needs the initial profile");
      sp.form = StationaryForm::Constant;
      sp.profile = Profile::constant(M, g->integral());
      break;
    case RegimeKind::ReactionOnly:
      if (!(regime.kappa_hat > 0.0)) throw std::invalid_argument("reaction regime needs kappa_hat > 0");
      sp.form = StationaryForm::ReactionEquilibrium;
      sp.profile = Profile::from_function(
          M, [&](double q) { return reaction_equilibrium(q, alpha, beta, regime.reaction_exponent); });
      break;
    case RegimeKind::ReactionDiffusionDirichlet:
      if (!(regime.kappa_hat > 0.0) || !(regime.sigma_hat > 0.0)) {
        throw std::invalid_argument("reaction-diffusion regime needs sigma_hat > 0 and kappa_hat > 0");
      }
      sp.form = StationaryForm::NumericBvp;
      sp.profile = reaction_diffusion_bvp(regime, alpha, beta, M);
      break;
  }
  return sp;
}

ShapeReport shape_check(const StationaryProfile& sp, double alpha, double beta, double tol) {
  if (alpha > beta) throw std::invalid_argument("shape_check expects alpha <= beta");
  ShapeReport report;
  const Profile& p = sp.profile;
  const int M = p.cells();
  if (alpha == beta) {
    report.degenerate = true;
    report.notes.emplace_back("degenerate: alpha=beta");
    return report;
  }
  auto fail = [&](const std::string& what, int i, double value) {
    std::ostringstream os;
    os << what << " at q=" << p.center(i) << " (" << value << ")";
    report.violations.push_back(os.str());
  };
  for (int i = 0; i + 1 < M; ++i) {
    if (!(p[i + 1] > p[i])) fail("not increasing", i, p[i + 1] - p[i]);
  }
  for (int i = 1; i + 1 < M; ++i) {
    const double q = p.center(i);
    const double d2 = p[i - 1] - 2.0 * p[i] + p[i + 1];
    if (q < 0.5 && d2 < -tol) fail("not convex", i, d2);
    if (q > 0.5 && d2 > tol) fail("not concave", i, d2);
  }
  const double h = p.spacing();
  if (std::abs(p[0] - alpha) > h) fail("left endpoint far from alpha", 0, p[0] - alpha);
  if (std::abs(p[M - 1] - beta) > h) fail("right endpoint far from beta", M - 1, p[M - 1] - beta);
  return report;
}

AppendixNorms appendix_norms(const Profile& p1, const Profile& p2, double gamma) {
  if (p1.cells() != p2.cells()) throw std::invalid_argument("appendix_norms needs profiles on the same grid");
  const int M = p1.cells();
  const double h = p1.spacing();
  double l2 = 0.0;
  double h1 = 0.0;
  double v1 = 0.0;
  for (int i = 0; i < M; ++i) {
    const double d = p1[i] - p2[i];
    l2 += d * d;
    v1 += reaction_v1(p1.center(i), gamma) * d * d;
    if (i + 1 < M) {
      const double dd = (p1[i + 1] - p2[i + 1]) - d;
      h1 += dd * dd;
    }
  }
  return {std::sqrt(h * l2), std::sqrt(h1 / h), std::sqrt(h * v1)};
}

}  // namespace lje
