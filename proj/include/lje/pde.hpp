#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lje/kernel.hpp"
#include "lje/profile.hpp"
#include "lje/regime.hpp"

namespace lje {

/// Space-time test function G_s(q) with analytic derivatives.
struct TestFunction {
  std::string id;
  std::function<double(double, double)> value;  ///< G(s, q)
  std::function<double(double, double)> ds;     ///< d/ds G
  std::function<double(double, double)> dq;     ///< d/dq G
  std::function<double(double, double)> dqq;   ///< d^2/dq^2 G
  /// G_s vanishes for q outside [support_lo, support_hi] at every s.
  double support_lo = -std::numeric_limits<double>::infinity();
  double support_hi = std::numeric_limits<double>::infinity();

  bool compact() const { return std::isfinite(support_lo) && std::isfinite(support_hi); }

  /// Time-independent G from a function of q and its first two derivatives.
  static TestFunction stationary(std::string id, std::function<double(double)> f, std::function<double(double)> df,
                                 std::function<double(double)> d2f,
                                 double lo = -std::numeric_limits<double>::infinity(),
                                 double hi = std::numeric_limits<double>::infinity());
};

/// Smooth bump exp(-1/(1-u^2)), u = (q - center)/radius, supported on [center-radius, center+radius].
TestFunction bump_test_function(double center, double radius);

/// ((q-lo)(hi-q))^power on [lo, hi], scaled to peak 1. Finite smoothness but
/// gentle edges, so midpoint sums of it and its derivatives converge cleanly.
TestFunction polynomial_bump_test_function(double lo, double hi, int power);

/// The grid is the one of the initial profile.
struct PdeOptions {
  double dt = 0.0;  ///< 0 selects 0.25 / M^2
  /// Record every time step (needed by the weak residuals), not only the requested times.
  bool keep_all_steps = false;
};

struct PdeSolution {
  Regime regime;
  double alpha = 0.0;
  double beta = 0.0;
  int M = 0;
  double dt = 0.0;
  bool all_steps = false;
  std::vector<double> times;
  std::vector<Profile> profiles;

  /// Profile at a recorded time; throws if `t` was not recorded.
  const Profile& at_time(double t) const;
};

/// V0(q) = alpha q^{-a} + beta (1-q)^{-a}.
double reaction_v0(double q, double alpha, double beta, double exponent);
/// V1(q) = q^{-a} + (1-q)^{-a}.
double reaction_v1(double q, double exponent);
/// V0/V1 written without the singular factors.
double reaction_equilibrium(double q, double alpha, double beta, double exponent);

/// Solves a tridiagonal system in place: sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i].
/// sub[0] and sup[n-1] are ignored. Returns x in `rhs`.
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag, std::span<const double> sup,
                       std::span<double> rhs);

/// Crank-Nicolson diffusion with ghost-cell boundary closures, reaction by
/// exact exponential half steps (Strang splitting). ReactionOnly uses the
/// explicit formula. `times` must be nondecreasing and >= 0.
PdeSolution solve(const Regime& regime, const Profile& g, double alpha, double beta, std::span<const double> times,
                  PdeOptions options = {});

/// rho_t(q) = rho_bar + (g - rho_bar) exp(-kappa_hat V1(q) t) at each cell center.
Profile solve_pure_reaction(const Profile& g, double alpha, double beta, double kappa_hat, double exponent, double t);

/// F_RD(t, rho, G, g) of the reaction-diffusion weak formulation, midpoint
/// quadrature in space and time. Needs a solution recorded at every step.
double weak_residual_rd(const PdeSolution& sol, const TestFunction& G, const std::function<double(double)>& g,
                        double t);
/// F_Rob(t, rho, G, g), including the boundary flux and m_hat terms.
double weak_residual_robin(const PdeSolution& sol, const TestFunction& G, const std::function<double(double)>& g,
                           double t);

/// max_x |N^2 (K_N G)(x/N) - (sigma^2/2) G''(x/N)| over the bulk, with G taken at s = 0.
/// Compactly supported G is summed over its support exactly; otherwise symmetric
/// pairs are summed up to the kernel's table cutoff.
double discrete_generator_check(const TestFunction& G, int N, const JumpKernel& kernel);

}  // namespace lje
