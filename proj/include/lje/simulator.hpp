#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "lje/alias_table.hpp"
#include "lje/fenwick_tree.hpp"
#include "lje/kernel.hpp"
#include "lje/model.hpp"
#include "lje/profile.hpp"
#include "lje/rng.hpp"

namespace lje {

/// Rate structure of one microscopic system: immutable, shared by all
/// trajectories of an ensemble.
class Dynamics {
 public:
  Dynamics(ModelParams params, std::shared_ptr<const JumpKernel> kernel);

  const ModelParams& params() const { return params_; }
  const JumpKernel& kernel() const { return *kernel_; }
  std::shared_ptr<const JumpKernel> kernel_ptr() const { return kernel_; }

  int N() const { return params_.N; }
  int sites() const { return params_.N - 1; }

  /// kappa / N^theta.
  double boundary_scale() const { return boundary_scale_; }
  /// Per-site reservoir weights: r_N^{-}(x/N) and r_N^{+}(x/N) for extended
  /// reservoirs, p(x) and p(N-x) for Case 1, indicators of x = 1 / x = N-1 for Case 2.
  double left_weight(int x) const { return left_weight_[static_cast<std::size_t>(x)]; }
  double right_weight(int x) const { return right_weight_[static_cast<std::size_t>(x)]; }

  /// Reservoir flip rate at x given its occupancy.
  double flip_rate(int x, bool occupied) const {
    const double a = params_.alpha;
    const double b = params_.beta;
    return boundary_scale_ * (left_weight(x) * (occupied ? 1.0 - a : a) +
                              right_weight(x) * (occupied ? 1.0 - b : b));
  }

  /// Sum over unordered bulk pairs {x < y} of p(y - x); configuration independent.
  double exchange_total_rate() const { return exchange_total_; }

  /// Draws an unordered pair (x, y), x < y, with probability p(y-x) / exchange_total_rate().
  std::pair<int, int> sample_exchange_pair(Rng& rng) const;

  /// Theta(N) for these parameters.
  double time_scale() const { return time_scale_; }

 private:
  ModelParams params_;
  std::shared_ptr<const JumpKernel> kernel_;
  double boundary_scale_;
  double time_scale_;
  std::vector<double> left_weight_;   // index 1..N-1
  std::vector<double> right_weight_;  // index 1..N-1
  double exchange_total_ = 0.0;
  AliasTable exchange_distance_;  // index d-1 for distance d = 1..N-2
};

/// Occupancy of the bulk plus incremental flip-rate bookkeeping.
class Configuration {
 public:
  /// `occupancy[x-1]` is eta_x for x = 1..N-1.
  Configuration(std::shared_ptr<const Dynamics> dynamics, std::vector<std::uint8_t> occupancy);

  const Dynamics& dynamics() const { return *dynamics_; }
  std::shared_ptr<const Dynamics> dynamics_ptr() const { return dynamics_; }
  int N() const { return dynamics_->N(); }
  int sites() const { return dynamics_->sites(); }

  bool occupied(int x) const { return occupancy_[static_cast<std::size_t>(x - 1)] != 0; }
  std::span<const std::uint8_t> occupancy() const { return occupancy_; }
  int particle_count() const { return particle_count_; }

  double flip_rate(int x) const { return flip_rate_[static_cast<std::size_t>(x - 1)]; }
  double total_flip_rate() const { return rates_.total(); }
  double total_rate() const { return dynamics_->exchange_total_rate() + rates_.total(); }

  /// Site whose flip clock rings for a uniform target in [0, total_flip_rate()).
  int find_flip_site(double target) const;

  void flip(int x);
  /// Swaps eta_x and eta_y; returns false when they are equal (no-op event).
  bool exchange(int x, int y);

  /// Largest discrepancy between the incremental tables and a from-scratch
  /// recomputation (rates, Fenwick total, particle count).
  double rate_table_error() const;

 private:
  void set_rate(int x);

  std::shared_ptr<const Dynamics> dynamics_;
  std::vector<std::uint8_t> occupancy_;
  int particle_count_ = 0;
  std::vector<double> flip_rate_;
  FenwickTree rates_;
  std::uint64_t updates_since_rebuild_ = 0;
};

/// Product Bernoulli(g(x/N)) configuration.
Configuration init_from_profile(const std::function<double(double)>& g, std::shared_ptr<const Dynamics> dynamics,
                                Rng& rng);
Configuration init_from_profile(const std::function<double(double)>& g, std::shared_ptr<const Dynamics> dynamics,
                                std::uint64_t seed);

enum class EventKind { Exchange, Flip };

struct Event {
  EventKind kind = EventKind::Exchange;
  int x = 0;
  int y = 0;             ///< second site for exchanges
  bool changed = false;  ///< false for exchanges between equal occupancies
  double dt_micro = 0.0;
};

/// One exact Gillespie step: exponential holding time at the total clock rate,
/// then an event chosen proportionally to its rate.
Event step(Configuration& cfg, Rng& rng);

/// Hooks called by `run`. Holding intervals are reported before the event
/// that ends them, so observers can integrate piecewise-constant functionals.
class TrajectoryObserver {
 public:
  virtual ~TrajectoryObserver() = default;
  virtual void on_start(const Configuration&) {}
  virtual void on_hold(const Configuration&, double /*dt_micro*/) {}
  virtual void on_event(const Configuration& /*after*/, const Event&) {}
  virtual void on_observation(const Configuration&, double /*t_macro*/) {}
};

struct Observation {
  double t = 0.0;  ///< macroscopic time
  std::vector<std::uint8_t> occupancy;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<Observation> observations;
  std::uint64_t events = 0;
  std::uint64_t effective_events = 0;  ///< events that changed the configuration
  std::vector<std::uint8_t> final_occupancy;
};

/// Advances microscopic time to t_macro * Theta(N). Observation times must be
/// strictly increasing and lie in [0, t_macro].
Trajectory run(Configuration& cfg, Rng& rng, double t_macro, std::span<const double> observation_times = {},
               TrajectoryObserver* observer = nullptr, bool keep_snapshots = true);

/// (1/(N-1)) Sum_x G(x/N) eta_x.
double empirical_pairing(const Configuration& cfg, const std::function<double(double)>& G);
double empirical_pairing(std::span<const std::uint8_t> occupancy, int N, const std::function<double(double)>& G);

/// Mean occupancy per spatial bin; site x goes to bin floor(x * bins / N).
Profile density_histogram(std::span<const std::uint8_t> occupancy, int N, int bins);
Profile density_histogram(const Configuration& cfg, int bins);

/// Mean of eta over sites 1..floor(eps N).
double boxcar_left(std::span<const std::uint8_t> occupancy, int N, double eps);
/// Mean of eta over sites N-1-floor(eps N)..N-1, normalised by the number of summed sites.
double boxcar_right(std::span<const std::uint8_t> occupancy, int N, double eps);
double boxcar_left(const Configuration& cfg, double eps);
double boxcar_right(const Configuration& cfg, double eps);

/// Dense generator matrix on {0,1}^{N-1}; state bit (x-1) holds eta_x.
/// Intended for small N (the state space has 2^{N-1} elements).
std::vector<std::vector<double>> assemble_generator(const Dynamics& dynamics);

}  // namespace lje
