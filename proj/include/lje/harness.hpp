#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lje/config.hpp"
#include "lje/pde.hpp"
#include "lje/profile.hpp"
#include "lje/regime.hpp"
#include "lje/simulator.hpp"

namespace lje {

struct EnsembleStats {
  std::vector<double> times;
  std::vector<Profile> mean;                   ///< binned mean density per time
  std::vector<std::vector<double>> std_error;  ///< per time, per bin
  std::vector<double> boxcar_left;             ///< ensemble mean of the left boxcar per time
  std::vector<double> boxcar_right;
  std::size_t seeds = 0;
  int bins = 0;
  double time_scale = 0.0;
  std::uint64_t events = 0;
  double wall_seconds = 0.0;
};

/// Per-seed occupancies at the observation times (snapshot output).
struct SnapshotSet {
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<Observation>> observations;  ///< [seed][time]
};

std::shared_ptr<const Dynamics> make_dynamics(const ModelParams& params);

/// Runs one trajectory per seed and reduces the binned densities in seed
/// order, so the result does not depend on `cfg.workers`.
EnsembleStats run_ensemble(const ExperimentConfig& cfg, SnapshotSet* snapshots = nullptr);

/// Regime and PDE solution matching the configuration.
Regime config_regime(const ExperimentConfig& cfg);
PdeSolution config_pde(const ExperimentConfig& cfg);

struct ValidationRow {
  double t = 0.0;
  double l1 = 0.0;
  double linf = 0.0;
  double mean_stderr = 0.0;  ///< average per-bin standard error
  double boxcar_left = 0.0;
  double boxcar_right = 0.0;
  double pde_left = 0.0;   ///< rho_t(0) extrapolated from the grid
  double pde_right = 0.0;
};

struct ValidationReport {
  Regime regime;
  EnsembleStats ensemble;
  PdeSolution pde;
  std::vector<ValidationRow> rows;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// L1 distance (mean over bins) between a binned profile and a PDE profile
/// interpolated at the bin centers.
double binned_l1(const Profile& binned, const Profile& pde);
double binned_linf(const Profile& binned, const Profile& pde);

ValidationReport validate(const ExperimentConfig& cfg);

struct ConvergenceRow {
  int N = 0;
  double l1 = 0.0;
  double linf = 0.0;
  double mean_stderr = 0.0;
};

/// Validation distance at the last observation time for each N.
std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& cfg, std::span<const int> N_list);

struct SweepRow {
  double gamma = 0.0;
  double theta = 0.0;
  Regime regime;
  double time_scale_exponent = 0.0;
};

std::vector<SweepRow> phase_sweep(std::span<const double> gammas, std::span<const double> thetas, double kappa,
                                  ReservoirVariant variant = ReservoirVariant::Extended);

/// a, a+s, ... up to b (inclusive within s/1e6).
std::vector<double> range_values(double a, double b, double s);

}  // namespace lje
