#include "lje/martingale.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace lje {

namespace {

constexpr int kMaxTrackedSites = 4096;  // pair weights are stored densely

}  // namespace

DynkinTracker::DynkinTracker(const Dynamics& dynamics, std::function<double(double)> G) : n_(dynamics.N()) {
  const int sites = dynamics.sites();
  if (sites > kMaxTrackedSites) throw std::invalid_argument("DynkinTracker supports at most 4096 sites");
  const auto S = static_cast<std::size_t>(sites);
  const JumpKernel& p = dynamics.kernel();
  const double scale = dynamics.boundary_scale();
  const double a = dynamics.params().alpha;
  const double b = dynamics.params().beta;

  g_.resize(S);
  for (int x = 1; x <= sites; ++x) g_[static_cast<std::size_t>(x - 1)] = G(static_cast<double>(x) / n_);

  drift_w_.assign(S, 0.0);
  pair_w_.assign(S * S, 0.0);
  flip_w_occ_.resize(S);
  flip_w_empty_.resize(S);
  for (int x = 1; x <= sites; ++x) {
    const auto i = static_cast<std::size_t>(x - 1);
    double lap = 0.0;
    for (int y = 1; y <= sites; ++y) {
      if (y == x) continue;
      const auto j = static_cast<std::size_t>(y - 1);
      const double pxy = p.prob(y - x);
      const double diff = g_[j] - g_[i];
      lap += pxy * diff;
      pair_w_[i * S + j] = pxy * diff * diff;
    }
    const double lw = dynamics.left_weight(x);
    const double rw = dynamics.right_weight(x);
    drift_w_[i] = lap - scale * g_[i] * (lw + rw);
    drift_const_ += scale * g_[i] * (a * lw + b * rw);
    const double g2 = g_[i] * g_[i];
    flip_w_occ_[i] = scale * g2 * (lw * (1.0 - a) + rw * (1.0 - b));
    flip_w_empty_[i] = scale * g2 * (lw * a + rw * b);
  }
}

void DynkinTracker::on_start(const Configuration& cfg) {
  const auto occ = cfg.occupancy();
  eta_.assign(occ.begin(), occ.end());
  const std::size_t S = eta_.size();
  pairing_ = drift_sum_ = pair_qv_ = flip_qv_ = 0.0;
  drift_integral_ = qv_integral_ = 0.0;
  for (std::size_t i = 0; i < S; ++i) {
    if (eta_[i]) {
      pairing_ += g_[i];
      drift_sum_ += drift_w_[i];
      flip_qv_ += flip_w_occ_[i];
    } else {
      flip_qv_ += flip_w_empty_[i];
    }
    for (std::size_t j = i + 1; j < S; ++j) {
      if (eta_[i] != eta_[j]) pair_qv_ += pair_w_[i * S + j];
    }
  }
  pairing0_ = pairing_;
}

void DynkinTracker::on_hold(const Configuration&, double dt_micro) {
  drift_integral_ += drift() * dt_micro;
  qv_integral_ += qv_rate() * dt_micro;
}

void DynkinTracker::toggle(int x, bool now_occupied) {
  const auto i = static_cast<std::size_t>(x - 1);
  const std::size_t S = eta_.size();
  // Every pair indicator [eta_x != eta_y] flips when eta_x does.
  const double* row = &pair_w_[i * S];
  for (std::size_t j = 0; j < S; ++j) {
    if (j == i) continue;
    const bool was_different = eta_[i] != eta_[j];
    pair_qv_ += was_different ? -row[j] : row[j];
  }
  const double sign = now_occupied ? 1.0 : -1.0;
  pairing_ += sign * g_[i];
  drift_sum_ += sign * drift_w_[i];
  flip_qv_ += sign * (flip_w_occ_[i] - flip_w_empty_[i]);
  eta_[i] = now_occupied ? 1 : 0;
}

void DynkinTracker::on_event(const Configuration& after, const Event& ev) {
  if (!ev.changed) return;
  toggle(ev.x, after.occupied(ev.x));
  if (ev.kind == EventKind::Exchange) toggle(ev.y, after.occupied(ev.y));
}

double DynkinTracker::martingale() const { return (pairing_ - pairing0_) / (n_ - 1) - drift_integral_; }

double DynkinTracker::qv_rate() const {
  const double norm = static_cast<double>(n_ - 1) * (n_ - 1);
  return (pair_qv_ + flip_qv_) / norm;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  const auto threads = static_cast<std::size_t>(std::clamp(workers, 1, 256));
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<DynkinSample> dynkin_samples(std::shared_ptr<const Dynamics> dynamics,
                                         const std::function<double(double)>& g,
                                         const std::function<double(double)>& G, double t_macro,
                                         std::span<const std::uint64_t> seeds, int workers) {
  std::vector<DynkinSample> out(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t i) {
    Rng rng = make_stream(seeds[i]);
    Configuration cfg = init_from_profile(g, dynamics, rng);
    DynkinTracker tracker(*dynamics, G);
    run(cfg, rng, t_macro, {}, &tracker, false);
    out[i] = {tracker.martingale(), tracker.quadratic_variation()};
  });
  return out;
}

DynkinStats summarize(std::span<const DynkinSample> samples) {
  DynkinStats s;
  s.seeds = samples.size();
  if (samples.empty()) return s;
  const auto n = static_cast<double>(samples.size());
  for (const auto& x : samples) {
    s.mean += x.martingale;
    s.mean_qv += x.quadratic_variation;
  }
  s.mean /= n;
  s.mean_qv /= n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (const auto& x : samples) ss += (x.martingale - s.mean) * (x.martingale - s.mean);
    s.variance = ss / (n - 1.0);
    s.std_error = std::sqrt(s.variance / n);
  }
  return s;
}

}  // namespace lje
