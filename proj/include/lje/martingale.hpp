#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lje/simulator.hpp"

namespace lje {

/// Tracks M_t(G) = <pi_t,G> - <pi_0,G> - int_0^t Theta(N) L_N <pi_s,G> ds along
/// one trajectory, together with the time integral of its quadratic-variation
/// rate. Both integrands are piecewise constant between events and are updated
/// incrementally, O(N) per changed site.
class DynkinTracker : public TrajectoryObserver {
 public:
  DynkinTracker(const Dynamics& dynamics, std::function<double(double)> G);

  void on_start(const Configuration& cfg) override;
  void on_hold(const Configuration& cfg, double dt_micro) override;
  void on_event(const Configuration& after, const Event& ev) override;

  /// Current value of M_t(G).
  double martingale() const;
  /// int_0^t of the quadratic-variation rate in micro time; E[M_t^2] equals its mean.
  double quadratic_variation() const { return qv_integral_; }
  /// Generator applied to <pi,G> in the current configuration (micro time units).
  double drift() const { return (drift_sum_ + drift_const_) / (n_ - 1); }
  double qv_rate() const;

 private:
  void toggle(int x, bool now_occupied);

  int n_;
  std::vector<double> g_;          // G(x/N), index x-1
  std::vector<double> drift_w_;    // coefficient of eta_x in the drift
  double drift_const_ = 0.0;
  std::vector<double> pair_w_;     // (G(x)-G(y))^2 p(y-x), row-major (N-1)^2
  std::vector<double> flip_w_occ_;    // scale * G^2 * (lw(1-a) + rw(1-b))
  std::vector<double> flip_w_empty_;  // scale * G^2 * (lw a + rw b)
  std::vector<std::uint8_t> eta_;
  double pairing_ = 0.0;       // Sum_x G(x) eta_x
  double pairing0_ = 0.0;
  double drift_sum_ = 0.0;     // Sum_x drift_w_[x] eta_x
  double pair_qv_ = 0.0;       // Sum_{x<y} pair_w (eta_x - eta_y)^2
  double flip_qv_ = 0.0;
  double drift_integral_ = 0.0;
  double qv_integral_ = 0.0;
};

struct DynkinSample {
  double martingale = 0.0;
  double quadratic_variation = 0.0;
};

struct DynkinStats {
  double mean = 0.0;
  double std_error = 0.0;
  double variance = 0.0;  ///< sample variance of M_t(G) over seeds
  double mean_qv = 0.0;   ///< mean accumulated quadratic variation
  std::size_t seeds = 0;
};

/// Runs one trajectory per seed from the Bernoulli(g) product measure and
/// returns M_t(G) for each.
std::vector<DynkinSample> dynkin_samples(std::shared_ptr<const Dynamics> dynamics,
                                         const std::function<double(double)>& g,
                                         const std::function<double(double)>& G, double t_macro,
                                         std::span<const std::uint64_t> seeds, int workers = 1);

DynkinStats summarize(std::span<const DynkinSample> samples);

/// Runs `task(i)` for i in [0, count) on up to `workers` threads; exceptions
/// are rethrown on the caller for the lowest failing index.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

}  // namespace lje
