#include "lje/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lje/martingale.hpp"

namespace lje {

namespace {

class BinningObserver : public TrajectoryObserver {
 public:
  BinningObserver(int bins, double eps) : bins_(bins), eps_(eps) {}

  void on_observation(const Configuration& cfg, double) override {
    histograms.push_back(density_histogram(cfg, bins_));
    left.push_back(boxcar_left(cfg, eps_));
    right.push_back(boxcar_right(cfg, eps_));
  }

  std::vector<Profile> histograms;
  std::vector<double> left;
  std::vector<double> right;

 private:
  int bins_;
  double eps_;
};

struct SeedResult {
  std::vector<Profile> histograms;
  std::vector<double> left;
  std::vector<double> right;
  std::uint64_t events = 0;
  std::vector<Observation> observations;
};

}  // namespace

std::shared_ptr<const Dynamics> make_dynamics(const ModelParams& params) {
  params.validate();
  auto kernel = std::make_shared<const JumpKernel>(make_kernel(params.gamma));
  return std::make_shared<const Dynamics>(params, std::move(kernel));
}

EnsembleStats run_ensemble(const ExperimentConfig& cfg, SnapshotSet* snapshots) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto dynamics = make_dynamics(cfg.model);
  const double t_end = cfg.times.empty() ? 0.0 : cfg.times.back();
  const std::function<double(double)> g = [&](double q) { return cfg.initial(q); };

  std::vector<SeedResult> results(cfg.seeds.size());
  parallel_for(cfg.seeds.size(), cfg.workers, [&](std::size_t i) {
    try {
      Rng rng = make_stream(cfg.seeds[i]);
      Configuration state = init_from_profile(g, dynamics, rng);
      BinningObserver observer(cfg.bins, cfg.boxcar_eps);
      Trajectory traj = run(state, rng, t_end, cfg.times, &observer, snapshots != nullptr);
      results[i] = {std::move(observer.histograms), std::move(observer.left), std::move(observer.right),
                    traj.events, std::move(traj.observations)};
    } catch (const std::exception& e) {
      throw std::runtime_error("trajectory for seed " + std::to_string(cfg.seeds[i]) + " failed: " + e.what());
    }
  });

  EnsembleStats stats;
  stats.times = cfg.times;
  stats.seeds = cfg.seeds.size();
  stats.bins = cfg.bins;
  stats.time_scale = dynamics->time_scale();
  const auto n = static_cast<double>(cfg.seeds.size());
  for (std::size_t k = 0; k < cfg.times.size(); ++k) {
    std::vector<double> mean(static_cast<std::size_t>(cfg.bins), 0.0);
    double left = 0.0;
    double right = 0.0;
    for (const auto& r : results) {
      for (int b = 0; b < cfg.bins; ++b) mean[static_cast<std::size_t>(b)] += r.histograms[k][b];
      left += r.left[k];
      right += r.right[k];
    }
    for (double& m : mean) m /= n;
    std::vector<double> err(static_cast<std::size_t>(cfg.bins), 0.0);
    if (results.size() > 1) {
      for (const auto& r : results) {
        for (int b = 0; b < cfg.bins; ++b) {
          const double d = r.histograms[k][b] - mean[static_cast<std::size_t>(b)];
          err[static_cast<std::size_t>(b)] += d * d;
        }
      }
      for (double& e : err) e = std::sqrt(e / (n - 1.0) / n);
    }
    stats.mean.emplace_back(std::move(mean));
    stats.std_error.push_back(std::move(err));
    stats.boxcar_left.push_back(left / n);
    stats.boxcar_right.push_back(right / n);
  }
  for (const auto& r : results) stats.events += r.events;
  if (snapshots) {
    snapshots->seeds = cfg.seeds;
    snapshots->observations.clear();
    for (auto& r : results) snapshots->observations.push_back(std::move(r.observations));
  }
  stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

Regime config_regime(const ExperimentConfig& cfg) {
  const JumpKernel kernel = make_kernel(cfg.model.gamma);
  return classify_regime(cfg.model.gamma, cfg.model.theta, kernel, cfg.model.kappa, cfg.model.reservoir);
}

PdeSolution config_pde(const ExperimentConfig& cfg) {
  const Regime regime = config_regime(cfg);
  if (regime.kind == RegimeKind::HeatRobin && !(regime.m_hat > 0.0) && cfg.model.kappa > 0.0) {
    throw ConfigError("model: Robin regime with vanishing boundary coefficient");
  }
  if (regime.has_reaction() && !(regime.kappa_hat > 0.0)) {
    throw ConfigError("model: kappa must be positive in reaction regimes");
  }
  PdeOptions opts;
  opts.dt = cfg.pde.dt;
  return solve(regime, cfg.initial.on_grid(cfg.pde.M), cfg.model.alpha, cfg.model.beta, cfg.times, opts);
}

double binned_l1(const Profile& binned, const Profile& pde) {
  double sum = 0.0;
  for (int b = 0; b < binned.cells(); ++b) sum += std::abs(binned[b] - pde.at(binned.center(b)));
  return sum / binned.cells();
}

double binned_linf(const Profile& binned, const Profile& pde) {
  double worst = 0.0;
  for (int b = 0; b < binned.cells(); ++b) worst = std::max(worst, std::abs(binned[b] - pde.at(binned.center(b))));
  return worst;
}

ValidationReport validate(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.times.empty()) throw ConfigError("times: validate needs at least one observation time");
  ValidationReport report;
  report.pde = config_pde(cfg);
  report.regime = report.pde.regime;
  report.ensemble = run_ensemble(cfg);

  for (std::size_t k = 0; k < cfg.times.size(); ++k) {
    const Profile& rho = report.pde.profiles[k];
    const Profile& mean = report.ensemble.mean[k];
    ValidationRow row;
    row.t = cfg.times[k];
    row.l1 = binned_l1(mean, rho);
    row.linf = binned_linf(mean, rho);
    double se = 0.0;
    for (double e : report.ensemble.std_error[k]) se += e;
    row.mean_stderr = se / cfg.bins;
    row.boxcar_left = report.ensemble.boxcar_left[k];
    row.boxcar_right = report.ensemble.boxcar_right[k];
    row.pde_left = rho.left_boundary();
    row.pde_right = rho.right_boundary();
    report.rows.push_back(row);

    std::ostringstream at;
    at << "t=" << row.t << ": ";
    if (!(row.l1 < cfg.tolerance.l1)) {
      report.failures.push_back(at.str() + "L1 distance " + std::to_string(row.l1) + " >= " +
                                std::to_string(cfg.tolerance.l1));
    }
    if (cfg.tolerance.linf && !(row.linf < *cfg.tolerance.linf)) {
      report.failures.push_back(at.str() + "Linf distance " + std::to_string(row.linf) + " >= " +
                                std::to_string(*cfg.tolerance.linf));
    }
    if (cfg.tolerance.boundary) {
      const double worst = std::max(std::abs(row.boxcar_left - row.pde_left), std::abs(row.boxcar_right - row.pde_right));
      if (!(worst < *cfg.tolerance.boundary)) {
        report.failures.push_back(at.str() + "boundary mismatch " + std::to_string(worst));
      }
    }
  }
  return report;
}

std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& cfg, std::span<const int> N_list) {
  for (std::size_t i = 1; i < N_list.size(); ++i) {
    if (N_list[i] <= N_list[i - 1]) throw std::invalid_argument("N list must be ascending");
  }
  std::vector<ConvergenceRow> rows;
  for (int N : N_list) {
    ExperimentConfig c = cfg;
    c.model.N = N;
    const ValidationReport rep = validate(c);
    const ValidationRow& last = rep.rows.back();
    rows.push_back({N, last.l1, last.linf, last.mean_stderr});
  }
  return rows;
}

std::vector<SweepRow> phase_sweep(std::span<const double> gammas, std::span<const double> thetas, double kappa,
                                  ReservoirVariant variant) {
  std::vector<SweepRow> rows;
  for (double gamma : gammas) {
    const JumpKernel kernel = make_kernel(gamma);
    for (double theta : thetas) {
      SweepRow row;
      row.gamma = gamma;
      row.theta = theta;
      row.regime = classify_regime(gamma, theta, kernel, kappa, variant);
      row.time_scale_exponent = time_scale_exponent(gamma, theta, variant);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<double> range_values(double a, double b, double s) {
  if (!(s > 0.0) || !(b >= a)) throw std::invalid_argument("range needs step > 0 and end >= start");
  const auto n = static_cast<long long>(std::floor((b - a) / s + 1e-6));
  std::vector<double> out;
  for (long long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * s);
  return out;
}

}  // namespace lje
