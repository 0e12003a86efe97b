#include "lje/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lje {

TestFunction TestFunction::stationary(std::string id, std::function<double(double)> f,
                                      std::function<double(double)> df, std::function<double(double)> d2f,
                                      double lo, double hi) {
  TestFunction G;
  G.id = std::move(id);
  G.value = [f](double, double q) { return f(q); };
  G.ds = [](double, double) { return 0.0; };
  G.dq = [df](double, double q) { return df(q); };
  G.dqq = [d2f](double, double q) { return d2f(q); };
  G.support_lo = lo;
  G.support_hi = hi;
  return G;
}

TestFunction bump_test_function(double center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
  auto phi = [=](double q, int order) {
    const double u = (q - center) / radius;
    if (std::abs(u) >= 1.0) return 0.0;
    const double w = 1.0 - u * u;
    const double v = std::exp(-1.0 / w);
    if (order == 0) return v;
    if (order == 1) return v * (-2.0 * u / (w * w)) / radius;
    const double w2 = w * w;
    return v * (4.0 * u * u / (w2 * w2) - 2.0 / w2 - 8.0 * u * u / (w2 * w)) / (radius * radius);
  };
  std::ostringstream id;
  id << "bump(" << center << "," << radius << ")";
  return TestFunction::stationary(
      id.str(), [phi](double q) { return phi(q, 0); }, [phi](double q) { return phi(q, 1); },
      [phi](double q) { return phi(q, 2); }, center - radius, center + radius);
}

TestFunction polynomial_bump_test_function(double lo, double hi, int power) {
  if (!(hi > lo)) throw std::invalid_argument("polynomial bump needs lo < hi");
  if (power < 3) throw std::invalid_argument("polynomial bump power must be >= 3 for a C^2 test function");
  const double scale = std::pow(0.5 * (hi - lo), -2.0 * power);
  const double k = power;
  auto inside = [=](double q) { return q > lo && q < hi; };
  std::ostringstream id;
  id << "polybump(" << lo << "," << hi << "," << power << ")";
  return TestFunction::stationary(
      id.str(), [=](double q) { return inside(q) ? scale * std::pow((q - lo) * (hi - q), k) : 0.0; },
      [=](double q) {
        if (!inside(q)) return 0.0;
        const double u = (q - lo) * (hi - q);
        return scale * k * std::pow(u, k - 1) * (lo + hi - 2.0 * q);
      },
      [=](double q) {
        if (!inside(q)) return 0.0;
        const double u = (q - lo) * (hi - q);
        const double du = lo + hi - 2.0 * q;
        return scale * (k * (k - 1) * std::pow(u, k - 2) * du * du - 2.0 * k * std::pow(u, k - 1));
      },
      lo, hi);
}

const Profile& PdeSolution::at_time(double t) const {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (std::abs(times[k] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return profiles[k];
  }
  throw std::invalid_argument("time " + std::to_string(t) + " was not recorded in the solution");
}

double reaction_v0(double q, double alpha, double beta, double exponent) {
  return alpha * std::pow(q, -exponent) + beta * std::pow(1.0 - q, -exponent);
}

double reaction_v1(double q, double exponent) { return std::pow(q, -exponent) + std::pow(1.0 - q, -exponent); }

double reaction_equilibrium(double q, double alpha, double beta, double exponent) {
  const double l = std::pow(1.0 - q, exponent);
  const double r = std::pow(q, exponent);
  return (alpha * l + beta * r) / (l + r);
}

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag, std::span<const double> sup,
                       std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (sub.size() != n || sup.size() != n || rhs.size() != n) {
    throw std::invalid_argument("tridiagonal bands must have equal length");
  }
  if (n == 0) return;
  std::vector<double> c(n);
  double denom = diag[0];
  c[0] = sup[0] / denom;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - sub[i] * c[i - 1];
    c[i] = i + 1 < n ? sup[i] / denom : 0.0;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

namespace {

// ghost = slope * rho_edge + offset
struct Closure {
  double slope = 0.0;
  double offset = 0.0;
};

Closure boundary_closure(const Regime& regime, double h, double value) {
  if (regime.has_flux_boundary()) {
    const double k = regime.kind == RegimeKind::HeatRobin ? regime.m_hat / regime.diffusivity() : 0.0;
    const double hk = 0.5 * h * k;
    return {(1.0 - hk) / (1.0 + hk), 2.0 * hk * value / (1.0 + hk)};
  }
  return {-1.0, 2.0 * value};
}

// Crank-Nicolson step for D rho'' with the two ghost closures, factorised
// once per step size.
class DiffusionStepper {
 public:
  DiffusionStepper(int M, double D, Closure left, Closure right) : M_(M), left_(left), right_(right) {
    r_ = D * M * M;
  }

  void set_dt(double dt) {
    if (dt == dt_) return;
    dt_ = dt;
    const auto n = static_cast<std::size_t>(M_);
    const double a = 0.5 * dt * r_;
    std::vector<double> diag(n, 1.0 + 2.0 * a);
    diag[0] = 1.0 + a * (2.0 - left_.slope);
    diag[n - 1] = 1.0 + a * (2.0 - right_.slope);
    // Thomas elimination of the constant matrix; the sub/super bands are all -a.
    c_.assign(n, 0.0);
    inv_.assign(n, 0.0);
    inv_[0] = 1.0 / diag[0];
    c_[0] = -a * inv_[0];
    for (std::size_t i = 1; i < n; ++i) {
      inv_[i] = 1.0 / (diag[i] + a * c_[i - 1]);
      c_[i] = -a * inv_[i];
    }
    a_ = a;
  }

  void step(std::vector<double>& rho) {
    const auto n = rho.size();
    const double a = a_;
    rhs_.resize(n);
    rhs_[0] = rho[0] + a * (rho[1] - (2.0 - left_.slope) * rho[0]) + 2.0 * a * left_.offset;
    for (std::size_t i = 1; i + 1 < n; ++i) rhs_[i] = rho[i] + a * (rho[i - 1] - 2.0 * rho[i] + rho[i + 1]);
    rhs_[n - 1] = rho[n - 1] + a * (rho[n - 2] - (2.0 - right_.slope) * rho[n - 1]) + 2.0 * a * right_.offset;
    rho[0] = rhs_[0] * inv_[0];
    for (std::size_t i = 1; i < n; ++i) rho[i] = (rhs_[i] + a * rho[i - 1]) * inv_[i];
    for (std::size_t i = n - 1; i-- > 0;) rho[i] -= c_[i] * rho[i + 1];
  }

 private:
  int M_;
  Closure left_;
  Closure right_;
  double r_;
  double dt_ = -1.0;
  double a_ = 0.0;
  std::vector<double> c_;
  std::vector<double> inv_;
  std::vector<double> rhs_;
};

void check_finite(const std::vector<double>& rho, double t) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!std::isfinite(rho[i])) {
      throw std::runtime_error("non-finite density " + std::to_string(rho[i]) + " in cell " + std::to_string(i) +
                               " at t=" + std::to_string(t));
    }
  }
}

void check_initial(const Profile& g) {
  for (int i = 0; i < g.cells(); ++i) {
    if (!(g[i] >= 0.0 && g[i] <= 1.0)) {
      throw std::invalid_argument("initial density " + std::to_string(g[i]) + " in cell " + std::to_string(i) +
                                  " is outside [0,1]");
    }
  }
}

}  // namespace

Profile solve_pure_reaction(const Profile& g, double alpha, double beta, double kappa_hat, double exponent,
                            double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
  Profile out = g;
  for (int i = 0; i < g.cells(); ++i) {
    const double q = g.center(i);
    const double eq = reaction_equilibrium(q, alpha, beta, exponent);
    out[i] = eq + (g[i] - eq) * std::exp(-kappa_hat * reaction_v1(q, exponent) * t);
  }
  return out;
}

PdeSolution solve(const Regime& regime, const Profile& g, double alpha, double beta, std::span<const double> times,
                  PdeOptions options) {
  check_initial(g);
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0) || !std::isfinite(times[k])) throw std::invalid_argument("output times must be >= 0");
    if (k > 0 && times[k] < times[k - 1]) throw std::invalid_argument("output times must be nondecreasing");
  }
  const int M = g.cells();
  if (M < 2) throw std::invalid_argument("the PDE grid needs at least two cells");
  PdeSolution sol;
  sol.regime = regime;
  sol.alpha = alpha;
  sol.beta = beta;
  sol.M = M;
  sol.dt = options.dt > 0.0 ? options.dt : 0.25 / (static_cast<double>(M) * M);

  if (regime.kind == RegimeKind::ReactionOnly) {
    for (double t : times) {
      sol.times.push_back(t);
      sol.profiles.push_back(solve_pure_reaction(g, alpha, beta, regime.kappa_hat, regime.reaction_exponent, t));
    }
    return sol;
  }
  if (!(regime.sigma_hat > 0.0)) throw std::invalid_argument("diffusive regimes need sigma_hat > 0");

  const double h = 1.0 / M;
  DiffusionStepper diffusion(M, regime.diffusivity(), boundary_closure(regime, h, alpha),
                             boundary_closure(regime, h, beta));
  const bool react = regime.has_reaction() && regime.kappa_hat > 0.0;
  std::vector<double> equilibrium;
  std::vector<double> rate;
  if (react) {
    for (int i = 0; i < M; ++i) {
      const double q = g.center(i);
      equilibrium.push_back(reaction_equilibrium(q, alpha, beta, regime.reaction_exponent));
      rate.push_back(regime.kappa_hat * reaction_v1(q, regime.reaction_exponent));
    }
  }
  std::vector<double> decay(react ? static_cast<std::size_t>(M) : 0);
  double decay_dt = -1.0;
  auto half_reaction = [&](std::vector<double>& rho, double dt) {
    if (!react) return;
    if (dt != decay_dt) {
      for (std::size_t i = 0; i < decay.size(); ++i) decay[i] = std::exp(-0.5 * dt * rate[i]);
      decay_dt = dt;
    }
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = equilibrium[i] + (rho[i] - equilibrium[i]) * decay[i];
  };

  std::vector<double> rho(g.values().begin(), g.values().end());
  double now = 0.0;
  sol.all_steps = options.keep_all_steps;
  // With every step kept, output times that coincide with steps are not duplicated.
  auto record = [&](double t) {
    if (options.keep_all_steps && !sol.times.empty() && sol.times.back() == t) return;
    sol.times.push_back(t);
    sol.profiles.emplace_back(rho);
  };
  if (options.keep_all_steps) record(0.0);

  for (double target : times) {
    if (target > now) {
      const double span = target - now;
      const auto steps = static_cast<long long>(std::max(1.0, std::ceil(span / sol.dt * (1.0 - 1e-12))));
      const double dt = span / static_cast<double>(steps);
      diffusion.set_dt(dt);
      for (long long j = 1; j <= steps; ++j) {
        half_reaction(rho, dt);
        diffusion.step(rho);
        half_reaction(rho, dt);
        const double t = j == steps ? target : now + static_cast<double>(j) * dt;
        if (options.keep_all_steps) record(t);
      }
      now = target;
      check_finite(rho, now);
    }
    record(target);
  }
  return sol;
}

namespace {

double weak_residual(const PdeSolution& sol, const TestFunction& G, const std::function<double(double)>& g,
                     double t, bool robin) {
  if (!sol.all_steps || sol.times.empty() || sol.times.front() != 0.0) {
    throw std::invalid_argument("weak residuals need a solution recorded at every step from t=0");
  }
  std::size_t k = 0;
  while (k < sol.times.size() && std::abs(sol.times[k] - t) > 1e-12 * std::max(1.0, t)) ++k;
  if (k == sol.times.size()) throw std::invalid_argument("time " + std::to_string(t) + " is not a solution step");

  const Regime& reg = sol.regime;
  const int M = sol.M;
  const double h = 1.0 / M;
  const double D = reg.diffusivity();
  const bool react = !robin && reg.kappa_hat > 0.0;
  if (react && (!G.compact() || G.support_lo <= 0.0 || G.support_hi >= 1.0)) {
    throw std::invalid_argument("test function '" + G.id +
                                "' must vanish near q=0 and q=1 when the reaction term is present");
  }
  // Cells where G may be nonzero.
  int lo = 0;
  int hi = M - 1;
  if (G.compact()) {
    lo = std::clamp(static_cast<int>(std::floor(G.support_lo * M - 0.5)), 0, M - 1);
    hi = std::clamp(static_cast<int>(std::ceil(G.support_hi * M - 0.5)), 0, M - 1);
  }

  std::vector<double> q(static_cast<std::size_t>(M));
  std::vector<double> v0;
  std::vector<double> v1;
  for (int i = 0; i < M; ++i) q[static_cast<std::size_t>(i)] = (i + 0.5) * h;
  if (react) {
    for (int i = 0; i < M; ++i) {
      v0.push_back(reaction_v0(q[static_cast<std::size_t>(i)], sol.alpha, sol.beta, reg.reaction_exponent));
      v1.push_back(reaction_v1(q[static_cast<std::size_t>(i)], reg.reaction_exponent));
    }
  }

  double final_term = 0.0;
  double initial_term = 0.0;
  const Profile& rho_t = sol.profiles[k];
  for (int i = lo; i <= hi; ++i) {
    const double qi = q[static_cast<std::size_t>(i)];
    final_term += rho_t[i] * G.value(t, qi);
    initial_term += g(qi) * G.value(0.0, qi);
  }
  final_term *= h;
  initial_term *= h;

  double bulk = 0.0;
  double reaction = 0.0;
  double flux = 0.0;
  double exchange = 0.0;
  for (std::size_t n = 0; n < k; ++n) {
    const double ds = sol.times[n + 1] - sol.times[n];
    const double s = 0.5 * (sol.times[n] + sol.times[n + 1]);
    const Profile& a = sol.profiles[n];
    const Profile& b = sol.profiles[n + 1];
    double bulk_n = 0.0;
    double react_n = 0.0;
    for (int i = lo; i <= hi; ++i) {
      const double qi = q[static_cast<std::size_t>(i)];
      const double rm = 0.5 * (a[i] + b[i]);
      bulk_n += rm * (D * G.dqq(s, qi) + G.ds(s, qi));
      if (react) {
        const auto u = static_cast<std::size_t>(i);
        react_n += G.value(s, qi) * (v0[u] - v1[u] * rm);
      }
    }
    bulk += ds * h * bulk_n;
    reaction += ds * h * react_n;
    if (robin) {
      const double r0 = 0.5 * (a.left_boundary() + b.left_boundary());
      const double r1 = 0.5 * (a.right_boundary() + b.right_boundary());
      flux += ds * D * (r1 * G.dq(s, 1.0) - r0 * G.dq(s, 0.0));
      exchange += ds * reg.m_hat * (G.value(s, 0.0) * (sol.alpha - r0) + G.value(s, 1.0) * (sol.beta - r1));
    }
  }
  if (robin) return final_term - initial_term - bulk + flux - exchange;
  return final_term - initial_term - bulk - reg.kappa_hat * reaction;
}

}  // namespace

double weak_residual_rd(const PdeSolution& sol, const TestFunction& G, const std::function<double(double)>& g,
                        double t) {
  if (sol.regime.has_flux_boundary()) throw std::invalid_argument("F_RD applies to Dirichlet-type regimes");
  return weak_residual(sol, G, g, t, false);
}

double weak_residual_robin(const PdeSolution& sol, const TestFunction& G, const std::function<double(double)>& g,
                           double t) {
  if (!sol.regime.has_flux_boundary()) throw std::invalid_argument("F_Rob applies to Robin and Neumann regimes");
  return weak_residual(sol, G, g, t, true);
}

double discrete_generator_check(const TestFunction& G, int N, const JumpKernel& kernel) {
  if (N < 2) throw std::invalid_argument("discrete_generator_check needs N >= 2");
  const double D = 0.5 * kernel.variance();
  const double n2 = static_cast<double>(N) * N;
  double worst = 0.0;
  for (int x = 1; x <= N - 1; ++x) {
    const double qx = static_cast<double>(x) / N;
    const double gx = G.value(0.0, qx);
    double k = 0.0;
    if (G.compact()) {
      const auto ylo = static_cast<long long>(std::ceil(G.support_lo * N));
      const auto yhi = static_cast<long long>(std::floor(G.support_hi * N));
      double sum = 0.0;
      for (long long y = ylo; y <= yhi; ++y) {
        if (y != x) sum += kernel.prob(y - x) * G.value(0.0, static_cast<double>(y) / N);
      }
      k = sum - gx;
    } else {
      for (std::int64_t z = 1; z <= kernel.truncation_radius(); ++z) {
        const double dz = static_cast<double>(z) / N;
        k += kernel.prob(z) * ((G.value(0.0, qx + dz) - gx) + (G.value(0.0, qx - dz) - gx));
      }
    }
    worst = std::max(worst, std::abs(n2 * k - D * G.dqq(0.0, qx)));
  }
  return worst;
}

}  // namespace lje
