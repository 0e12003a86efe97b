#include "lje/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lje/regime.hpp"

namespace lje {

namespace {

// Fenwick partial sums drift by rounding under long update sequences; a
// periodic O(N) rebuild keeps the total within a few ulps of the direct sum.
constexpr std::uint64_t kRebuildInterval = std::uint64_t{1} << 20;

}  // namespace

Dynamics::Dynamics(ModelParams params, std::shared_ptr<const JumpKernel> kernel)
    : params_(params), kernel_(std::move(kernel)) {
  params_.validate();
  if (!kernel_) throw std::invalid_argument("dynamics needs a jump kernel");
  if (kernel_->gamma() != params_.gamma) {
    throw std::invalid_argument("kernel gamma does not match model gamma");
  }
  const int N = params_.N;
  boundary_scale_ = params_.kappa * std::pow(static_cast<double>(N), -params_.theta);
  time_scale_ = lje::time_scale(N, params_.gamma, params_.theta, params_.reservoir);

  left_weight_.assign(static_cast<std::size_t>(N), 0.0);
  right_weight_.assign(static_cast<std::size_t>(N), 0.0);
  for (int x = 1; x <= N - 1; ++x) {
    double lw = 0.0;
    double rw = 0.0;
    switch (params_.reservoir) {
      case ReservoirVariant::Extended:
        lw = kernel_->tail_left(x, N);
        rw = kernel_->tail_right(x, N);
        break;
      case ReservoirVariant::Case1:
        lw = kernel_->prob(x);
        rw = kernel_->prob(N - x);
        break;
      case ReservoirVariant::Case2:
        lw = x == 1 ? 1.0 : 0.0;
        rw = x == N - 1 ? 1.0 : 0.0;
        break;
    }
    left_weight_[static_cast<std::size_t>(x)] = lw;
    right_weight_[static_cast<std::size_t>(x)] = rw;
  }

  if (N >= 3) {
    std::vector<double> weights(static_cast<std::size_t>(N - 2));
    for (int d = 1; d <= N - 2; ++d) {
      weights[static_cast<std::size_t>(d - 1)] = static_cast<double>(N - 1 - d) * kernel_->prob(d);
    }
    exchange_distance_ = AliasTable(weights);
    exchange_total_ = exchange_distance_.total_weight();
  }
}

std::pair<int, int> Dynamics::sample_exchange_pair(Rng& rng) const {
  if (exchange_distance_.empty()) throw std::logic_error("no bulk pairs for N < 3");
  const int d = static_cast<int>(exchange_distance_.sample(uniform01(rng))) + 1;
  const int x = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(params_.N - 1 - d)));
  return {x, x + d};
}

Configuration::Configuration(std::shared_ptr<const Dynamics> dynamics, std::vector<std::uint8_t> occupancy)
    : dynamics_(std::move(dynamics)), occupancy_(std::move(occupancy)) {
  if (!dynamics_) throw std::invalid_argument("configuration needs dynamics");
  const int n = dynamics_->sites();
  if (static_cast<int>(occupancy_.size()) != n) {
    throw std::invalid_argument("occupancy has " + std::to_string(occupancy_.size()) + " entries, expected " +
                                std::to_string(n));
  }
  flip_rate_.resize(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    const std::uint8_t v = occupancy_[static_cast<std::size_t>(x - 1)];
    if (v > 1) throw std::invalid_argument("occupancy values must be 0 or 1");
    particle_count_ += v;
    flip_rate_[static_cast<std::size_t>(x - 1)] = dynamics_->flip_rate(x, v != 0);
  }
  rates_ = FenwickTree(static_cast<std::size_t>(n));
  rates_.assign(flip_rate_);
}

void Configuration::set_rate(int x) {
  const auto i = static_cast<std::size_t>(x - 1);
  const double updated = dynamics_->flip_rate(x, occupancy_[i] != 0);
  rates_.add(static_cast<std::size_t>(x), updated - flip_rate_[i]);
  flip_rate_[i] = updated;
  if (++updates_since_rebuild_ >= kRebuildInterval) {
    rates_.assign(flip_rate_);
    updates_since_rebuild_ = 0;
  }
}

int Configuration::find_flip_site(double target) const {
  int x = static_cast<int>(rates_.find(target));
  if (flip_rate(x) > 0.0) return x;
  // Rounding put the target on a zero-rate site; take the nearest live one.
  for (int y = x - 1; y >= 1; --y) {
    if (flip_rate(y) > 0.0) return y;
  }
  for (int y = x + 1; y <= sites(); ++y) {
    if (flip_rate(y) > 0.0) return y;
  }
  throw std::logic_error("flip selected with every flip rate zero");
}

void Configuration::flip(int x) {
  auto& v = occupancy_[static_cast<std::size_t>(x - 1)];
  v ^= 1;
  particle_count_ += v ? 1 : -1;
  set_rate(x);
}

bool Configuration::exchange(int x, int y) {
  auto& a = occupancy_[static_cast<std::size_t>(x - 1)];
  auto& b = occupancy_[static_cast<std::size_t>(y - 1)];
  if (a == b) return false;
  std::swap(a, b);
  set_rate(x);
  set_rate(y);
  return true;
}

double Configuration::rate_table_error() const {
  double err = 0.0;
  double direct_total = 0.0;
  int count = 0;
  for (int x = 1; x <= sites(); ++x) {
    const bool occ = occupied(x);
    count += occ ? 1 : 0;
    const double fresh = dynamics_->flip_rate(x, occ);
    direct_total += fresh;
    err = std::max(err, std::abs(fresh - flip_rate(x)));
  }
  err = std::max(err, std::abs(direct_total - rates_.total()));
  if (count != particle_count_) err = std::max(err, 1.0);
  return err;
}

Configuration init_from_profile(const std::function<double(double)>& g, std::shared_ptr<const Dynamics> dynamics,
                                Rng& rng) {
  if (!dynamics) throw std::invalid_argument("init_from_profile needs dynamics");
  const int N = dynamics->N();
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(N - 1));
  for (int x = 1; x <= N - 1; ++x) {
    const double rho = g(static_cast<double>(x) / N);
    if (!(rho >= 0.0 && rho <= 1.0)) {
      throw std::invalid_argument("initial profile value " + std::to_string(rho) + " at q=" +
                                  std::to_string(static_cast<double>(x) / N) + " is outside [0,1]");
    }
    occ[static_cast<std::size_t>(x - 1)] = uniform01(rng) < rho ? 1 : 0;
  }
  return Configuration(std::move(dynamics), std::move(occ));
}

Configuration init_from_profile(const std::function<double(double)>& g, std::shared_ptr<const Dynamics> dynamics,
                                std::uint64_t seed) {
  Rng rng = make_stream(seed);
  return init_from_profile(g, std::move(dynamics), rng);
}

namespace {

Event apply_random_event(Configuration& cfg, Rng& rng, double total) {
  const Dynamics& dyn = cfg.dynamics();
  const double exchange_rate = dyn.exchange_total_rate();
  const double u = uniform01(rng) * total;
  Event ev;
  if (u < exchange_rate) {
    const auto [x, y] = dyn.sample_exchange_pair(rng);
    ev.kind = EventKind::Exchange;
    ev.x = x;
    ev.y = y;
    ev.changed = cfg.exchange(x, y);
  } else {
    const double target = std::min(u - exchange_rate, std::nextafter(cfg.total_flip_rate(), 0.0));
    ev.kind = EventKind::Flip;
    ev.x = cfg.find_flip_site(std::max(target, 0.0));
    ev.y = ev.x;
    cfg.flip(ev.x);
    ev.changed = true;
  }
  return ev;
}

double checked_total_rate(const Configuration& cfg) {
  const double total = cfg.total_rate();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::runtime_error("total event rate is " + std::to_string(total) + "; the chain cannot advance");
  }
  return total;
}

}  // namespace

Event step(Configuration& cfg, Rng& rng) {
  const double total = checked_total_rate(cfg);
  const double dt = exponential(rng, total);
  Event ev = apply_random_event(cfg, rng, total);
  ev.dt_micro = dt;
  return ev;
}

Trajectory run(Configuration& cfg, Rng& rng, double t_macro, std::span<const double> observation_times,
               TrajectoryObserver* observer, bool keep_snapshots) {
  if (!(t_macro >= 0.0) || !std::isfinite(t_macro)) throw std::invalid_argument("t_macro must be finite and >= 0");
  for (std::size_t i = 0; i < observation_times.size(); ++i) {
    const double t = observation_times[i];
    if (!(t >= 0.0) || t > t_macro) throw std::invalid_argument("observation times must lie in [0, t_macro]");
    if (i > 0 && !(t > observation_times[i - 1])) {
      throw std::invalid_argument("observation times must be strictly increasing");
    }
  }

  const double scale = cfg.dynamics().time_scale();
  const double horizon = t_macro * scale;
  Trajectory traj;
  std::size_t next_obs = 0;
  double now = 0.0;
  if (observer) observer->on_start(cfg);

  auto observe_until = [&](double limit) {
    while (next_obs < observation_times.size() && observation_times[next_obs] * scale < limit) {
      const double t_obs = observation_times[next_obs] * scale;
      if (observer) observer->on_hold(cfg, t_obs - now);
      now = t_obs;
      if (observer) observer->on_observation(cfg, observation_times[next_obs]);
      Observation obs;
      obs.t = observation_times[next_obs];
      if (keep_snapshots) obs.occupancy.assign(cfg.occupancy().begin(), cfg.occupancy().end());
      traj.observations.push_back(std::move(obs));
      ++next_obs;
    }
  };

  while (true) {
    const double total = checked_total_rate(cfg);
    const double t_event = now + exponential(rng, total);
    if (t_event > horizon) {
      observe_until(std::nextafter(horizon, INFINITY));
      if (observer) observer->on_hold(cfg, horizon - now);
      now = horizon;
      break;
    }
    observe_until(t_event);
    if (observer) observer->on_hold(cfg, t_event - now);
    now = t_event;
    Event ev = apply_random_event(cfg, rng, total);
    ++traj.events;
    if (ev.changed) ++traj.effective_events;
    if (observer) observer->on_event(cfg, ev);
  }

  traj.final_occupancy.assign(cfg.occupancy().begin(), cfg.occupancy().end());
  return traj;
}

double empirical_pairing(std::span<const std::uint8_t> occupancy, int N, const std::function<double(double)>& G) {
  double sum = 0.0;
  for (int x = 1; x <= N - 1; ++x) {
    if (occupancy[static_cast<std::size_t>(x - 1)]) sum += G(static_cast<double>(x) / N);
  }
  return sum / (N - 1);
}

double empirical_pairing(const Configuration& cfg, const std::function<double(double)>& G) {
  return empirical_pairing(cfg.occupancy(), cfg.N(), G);
}

Profile density_histogram(std::span<const std::uint8_t> occupancy, int N, int bins) {
  if (bins < 1 || bins > N - 1) throw std::invalid_argument("bins must lie in [1, N-1]");
  std::vector<double> sum(static_cast<std::size_t>(bins), 0.0);
  std::vector<int> count(static_cast<std::size_t>(bins), 0);
  for (int x = 1; x <= N - 1; ++x) {
    const auto b = static_cast<std::size_t>(static_cast<long long>(x) * bins / N);
    sum[b] += occupancy[static_cast<std::size_t>(x - 1)];
    ++count[b];
  }
  for (std::size_t b = 0; b < sum.size(); ++b) sum[b] /= count[b];
  return Profile(std::move(sum));
}

Profile density_histogram(const Configuration& cfg, int bins) {
  return density_histogram(cfg.occupancy(), cfg.N(), bins);
}

double boxcar_left(std::span<const std::uint8_t> occupancy, int N, double eps) {
  const auto width = static_cast<int>(std::floor(eps * N));
  if (!(eps > 0.0) || width < 1) throw std::invalid_argument("boxcar window floor(eps*N) must be >= 1");
  if (width > N - 1) throw std::invalid_argument("boxcar window exceeds the bulk");
  double sum = 0.0;
  for (int y = 1; y <= width; ++y) sum += occupancy[static_cast<std::size_t>(y - 1)];
  return sum / width;
}

double boxcar_right(std::span<const std::uint8_t> occupancy, int N, double eps) {
  const auto width = static_cast<int>(std::floor(eps * N));
  if (!(eps > 0.0) || width < 1) throw std::invalid_argument("boxcar window floor(eps*N) must be >= 1");
  const int first = N - 1 - width;
  if (first < 1) throw std::invalid_argument("boxcar window exceeds the bulk");
  double sum = 0.0;
  for (int y = first; y <= N - 1; ++y) sum += occupancy[static_cast<std::size_t>(y - 1)];
  return sum / (N - first);
}

double boxcar_left(const Configuration& cfg, double eps) { return boxcar_left(cfg.occupancy(), cfg.N(), eps); }
double boxcar_right(const Configuration& cfg, double eps) { return boxcar_right(cfg.occupancy(), cfg.N(), eps); }

std::vector<std::vector<double>> assemble_generator(const Dynamics& dynamics) {
  const int n = dynamics.sites();
  if (n > 16) throw std::invalid_argument("assemble_generator is limited to N <= 17");
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::vector<double>> L(states, std::vector<double>(states, 0.0));
  for (std::size_t s = 0; s < states; ++s) {
    for (int x = 1; x <= n; ++x) {
      const std::size_t bx = std::size_t{1} << (x - 1);
      for (int y = x + 1; y <= n; ++y) {
        const std::size_t by = std::size_t{1} << (y - 1);
        if (((s & bx) != 0) == ((s & by) != 0)) continue;
        const double rate = dynamics.kernel().prob(y - x);
        L[s][s ^ bx ^ by] += rate;
        L[s][s] -= rate;
      }
      const double rate = dynamics.flip_rate(x, (s & bx) != 0);
      L[s][s ^ bx] += rate;
      L[s][s] -= rate;
    }
  }
  return L;
}

}  // namespace lje
