#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "lje/simulator.hpp"

namespace {

std::shared_ptr<const lje::JumpKernel> kernel3() {
  static const auto k = std::make_shared<const lje::JumpKernel>(lje::make_kernel(3.0));
  return k;
}

std::shared_ptr<const lje::Dynamics> dynamics(int N, double theta, double kappa, double alpha, double beta,
                                              lje::ReservoirVariant v = lje::ReservoirVariant::Extended) {
  lje::ModelParams p;
  p.N = N;
  p.gamma = 3.0;
  p.theta = theta;
  p.kappa = kappa;
  p.alpha = alpha;
  p.beta = beta;
  p.reservoir = v;
  return std::make_shared<const lje::Dynamics>(p, kernel3());
}

auto constant(double v) {
  return [v](double) { return v; };
}

TEST(Init, ConstantProfiles) {
  const auto d = dynamics(50, 0, 1, 0.5, 0.5);
  const auto full = lje::init_from_profile(constant(1.0), d, std::uint64_t{1});
  EXPECT_EQ(full.particle_count(), 49);
  const auto empty = lje::init_from_profile(constant(0.0), d, std::uint64_t{1});
  EXPECT_EQ(empty.particle_count(), 0);
  EXPECT_THROW(lje::init_from_profile(constant(1.5), d, std::uint64_t{1}), std::invalid_argument);
  EXPECT_THROW(lje::init_from_profile([](double q) { return q - 0.5; }, d, std::uint64_t{1}), std::invalid_argument);
}

TEST(Init, BernoulliMeanDensity) {
  const auto d = dynamics(1001, 0, 1, 0.5, 0.5);
  long long total = 0;
  const int seeds = 500;
  for (int s = 0; s < seeds; ++s) total += lje::init_from_profile(constant(0.5), d, std::uint64_t(s)).particle_count();
  const double mean = static_cast<double>(total) / (seeds * 1000.0);
  EXPECT_LT(std::abs(mean - 0.5), 3.0 * 0.5 / std::sqrt(seeds * 1000.0));
}

TEST(Rates, FlipRateExamples) {
  const auto& k = *kernel3();
  EXPECT_EQ(dynamics(10, 0, 1, 1.0, 1.0)->flip_rate(3, true), 0.0);

  const auto d = dynamics(4, 0, 1, 0.2, 0.8);
  // r^+(1/4) = Sum_{y <= -3} p(y) = 1/2 - p(1) - p(2).
  const double right_tail = 0.5 - k.prob(1) - k.prob(2);
  EXPECT_NEAR(d->flip_rate(1, false), 0.2 * 0.5 + 0.8 * right_tail, 1e-15);

  const auto c2 = dynamics(5, 0.3, 2.0, 0.2, 0.8, lje::ReservoirVariant::Case2);
  EXPECT_EQ(c2->flip_rate(2, false), 0.0);
  EXPECT_EQ(c2->flip_rate(2, true), 0.0);
  EXPECT_NEAR(c2->flip_rate(1, false), 2.0 * std::pow(5.0, -0.3) * 0.2, 1e-15);
  EXPECT_NEAR(c2->flip_rate(4, true), 2.0 * std::pow(5.0, -0.3) * 0.2, 1e-15);

  const auto c1 = dynamics(6, 0, 1, 0.3, 0.6, lje::ReservoirVariant::Case1);
  EXPECT_NEAR(c1->flip_rate(2, false), k.prob(2) * 0.3 + k.prob(4) * 0.6, 1e-15);
}

TEST(Rates, ExchangeTotal) {
  const auto& k = *kernel3();
  EXPECT_NEAR(dynamics(3, 0, 1, .5, .5)->exchange_total_rate(), k.prob(1), 1e-15);
  EXPECT_NEAR(dynamics(4, 0, 1, .5, .5)->exchange_total_rate(), 2 * k.prob(1) + k.prob(2), 1e-15);
  EXPECT_NEAR(dynamics(4, 0, 1, .5, .5)->exchange_total_rate(), 0.952811, 1e-6);
  for (int N : {10, 100, 1000}) EXPECT_LT(dynamics(N, 0, 1, .5, .5)->exchange_total_rate(), (N - 1) / 2.0);
}

TEST(Rates, ExchangePairSampler) {
  const int N = 6;
  const auto d = dynamics(N, 0, 1, .5, .5);
  const auto& k = *kernel3();
  std::vector<std::vector<int>> counts(N, std::vector<int>(N, 0));
  auto rng = lje::make_stream(3);
  const int draws = 500'000;
  for (int i = 0; i < draws; ++i) {
    const auto [x, y] = d->sample_exchange_pair(rng);
    ASSERT_GE(x, 1);
    ASSERT_LT(x, y);
    ASSERT_LE(y, N - 1);
    ++counts[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }
  for (int x = 1; x < N; ++x) {
    for (int y = x + 1; y < N; ++y) {
      const double p = k.prob(y - x) / d->exchange_total_rate();
      EXPECT_LT(std::abs(counts[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] - draws * p),
                4.0 * std::sqrt(draws * p * (1 - p)));
    }
  }
}

TEST(Configuration, IncrementalTablesMatchRecomputation) {
  for (auto v : {lje::ReservoirVariant::Extended, lje::ReservoirVariant::Case1, lje::ReservoirVariant::Case2}) {
    const auto d = dynamics(64, -0.5, 1.7, 0.3, 0.9, v);
    auto rng = lje::make_stream(11);
    auto cfg = lje::init_from_profile(constant(0.4), d, rng);
    for (int i = 0; i < 100'000; ++i) {
      lje::step(cfg, rng);
      if (i % 10'000 == 0) {
        ASSERT_LE(cfg.rate_table_error(), 1e-12);
      }
    }
    EXPECT_LE(cfg.rate_table_error(), 1e-12);
    const auto occ = cfg.occupancy();
    EXPECT_EQ(cfg.particle_count(), std::accumulate(occ.begin(), occ.end(), 0));
    for (auto e : occ) ASSERT_LE(e, 1);
  }
}

TEST(Configuration, ConservationWithoutReservoirs) {
  const auto d = dynamics(64, 0, 0.0, 0.3, 0.9);
  auto rng = lje::make_stream(5);
  auto cfg = lje::init_from_profile(constant(0.5), d, rng);
  const int n0 = cfg.particle_count();
  for (int i = 0; i < 50'000; ++i) {
    const auto ev = lje::step(cfg, rng);
    ASSERT_EQ(ev.kind, lje::EventKind::Exchange);
    ASSERT_EQ(cfg.particle_count(), n0);
  }
}

TEST(Step, EventTypeFrequencies) {
  // With alpha = beta = 1/2 every site flips at rate scale*(lw+rw)/2 whatever its
  // occupancy, so the event-type split is a fixed multinomial.
  const auto d = dynamics(20, -1.5, 1.0, 0.5, 0.5);
  auto rng = lje::make_stream(9);
  auto cfg = lje::init_from_profile(constant(0.5), d, rng);
  const double p_ex = d->exchange_total_rate() / cfg.total_rate();
  const int steps = 1'000'000;
  long long exchanges = 0;
  for (int i = 0; i < steps; ++i) exchanges += lje::step(cfg, rng).kind == lje::EventKind::Exchange ? 1 : 0;
  EXPECT_LT(std::abs(exchanges - steps * p_ex), 4.0 * std::sqrt(steps * p_ex * (1 - p_ex)));
}

// Hand-coded generator entries for N = 4 straight from the rate definitions.
std::vector<std::vector<double>> hand_generator(const lje::JumpKernel& k, double theta, double kappa, double a,
                                                double b, lje::ReservoirVariant v) {
  const int N = 4;
  const double p1 = k.prob(1);
  const double p2 = k.prob(2);
  const double scale = kappa * std::pow(N, -theta);
  // Sum_{y >= x} p(y) = 1/2 - Sum_{1 <= y < x} p(y).
  const double r[4] = {0, 0.5, 0.5 - p1, 0.5 - p1 - p2};
  auto weights = [&](int x) -> std::pair<double, double> {
    switch (v) {
      case lje::ReservoirVariant::Extended: return {r[x], r[N - x]};
      case lje::ReservoirVariant::Case1: return {k.prob(x), k.prob(N - x)};
      case lje::ReservoirVariant::Case2: return {x == 1 ? 1.0 : 0.0, x == 3 ? 1.0 : 0.0};
    }
    return {0, 0};
  };
  std::vector<std::vector<double>> L(8, std::vector<double>(8, 0.0));
  for (int s = 0; s < 8; ++s) {
    auto eta = [&](int x) { return (s >> (x - 1)) & 1; };
    const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (const auto& pr : pairs) {
      if (eta(pr[0]) == eta(pr[1])) continue;
      const int t = s ^ (1 << (pr[0] - 1)) ^ (1 << (pr[1] - 1));
      const double rate = pr[1] - pr[0] == 1 ? p1 : p2;
      L[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] += rate;
    }
    for (int x = 1; x <= 3; ++x) {
      const auto [lw, rw] = weights(x);
      const double ca = eta(x) ? 1 - a : a;
      const double cb = eta(x) ? 1 - b : b;
      L[static_cast<std::size_t>(s)][static_cast<std::size_t>(s ^ (1 << (x - 1)))] += scale * (lw * ca + rw * cb);
    }
    double out = 0;
    for (int t = 0; t < 8; ++t) out += L[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
    L[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = -out;
  }
  return L;
}

TEST(Generator, MatchesHandCodedRatesAtNFour) {
  for (auto v : {lje::ReservoirVariant::Extended, lje::ReservoirVariant::Case1, lje::ReservoirVariant::Case2}) {
    const auto d = dynamics(4, 0.7, 1.3, 0.2, 0.7, v);
    const auto L = lje::assemble_generator(*d);
    const auto H = hand_generator(*kernel3(), 0.7, 1.3, 0.2, 0.7, v);
    for (int s = 0; s < 8; ++s) {
      for (int t = 0; t < 8; ++t) {
        EXPECT_NEAR(L[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)],
                    H[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)], 1e-14)
            << to_string(v) << " " << s << "->" << t;
      }
    }
  }
}

TEST(Generator, BernoulliProductIsStationaryForEqualReservoirs) {
  for (auto v : {lje::ReservoirVariant::Extended, lje::ReservoirVariant::Case1, lje::ReservoirVariant::Case2}) {
    const double rho = 0.35;
    const auto L = lje::assemble_generator(*dynamics(4, -0.4, 2.0, rho, rho, v));
    std::vector<double> pi(8);
    for (int s = 0; s < 8; ++s) {
      const int n = __builtin_popcount(static_cast<unsigned>(s));
      pi[static_cast<std::size_t>(s)] = std::pow(rho, n) * std::pow(1 - rho, 3 - n);
    }
    for (int t = 0; t < 8; ++t) {
      double flow = 0;
      for (int s = 0; s < 8; ++s) flow += pi[static_cast<std::size_t>(s)] * L[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
      EXPECT_NEAR(flow, 0.0, 1e-12) << to_string(v);
    }
  }
  // Unequal reservoirs break it.
  const auto L = lje::assemble_generator(*dynamics(4, 0, 1, 0.2, 0.8));
  double worst = 0;
  for (int t = 0; t < 8; ++t) {
    double flow = 0;
    for (int s = 0; s < 8; ++s) {
      flow += 0.125 * L[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
    }
    worst = std::max(worst, std::abs(flow));
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(Run, ZeroTimeLeavesConfigurationUnchanged) {
  const auto d = dynamics(30, 0, 1, 0.2, 0.8);
  auto rng = lje::make_stream(2);
  auto cfg = lje::init_from_profile(constant(0.5), d, rng);
  const std::vector<std::uint8_t> before(cfg.occupancy().begin(), cfg.occupancy().end());
  const std::vector<double> times{0.0};
  const auto traj = lje::run(cfg, rng, 0.0, times);
  EXPECT_EQ(traj.events, 0u);
  ASSERT_EQ(traj.observations.size(), 1u);
  EXPECT_EQ(traj.observations[0].occupancy, before);
  EXPECT_EQ(traj.final_occupancy, before);
}

TEST(Run, TimeScales) {
  EXPECT_DOUBLE_EQ(dynamics(100, 0, 1, .5, .5)->time_scale(), 1e4);
  EXPECT_DOUBLE_EQ(dynamics(100, -1, 1, .5, .5)->time_scale(), 1e4);
  EXPECT_NEAR(dynamics(100, -2, 1, .5, .5)->time_scale(), 100.0, 1e-9);
  EXPECT_DOUBLE_EQ(dynamics(100, -5, 1, .5, .5, lje::ReservoirVariant::Case2)->time_scale(), 1e4);
}

TEST(Run, ObservationTimesAndValidation) {
  const auto d = dynamics(32, 0, 1, 0.2, 0.8);
  auto rng = lje::make_stream(4);
  auto cfg = lje::init_from_profile(constant(0.5), d, rng);
  const std::vector<double> times{0.0, 0.01, 0.02};
  const auto traj = lje::run(cfg, rng, 0.02, times);
  ASSERT_EQ(traj.observations.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(traj.observations[i].t, times[i]);
  EXPECT_EQ(traj.observations[2].occupancy, traj.final_occupancy);
  EXPECT_GT(traj.events, 0u);
  const std::vector<double> bad{0.02, 0.01};
  EXPECT_THROW(lje::run(cfg, rng, 0.02, bad), std::invalid_argument);
  const std::vector<double> late{0.5};
  EXPECT_THROW(lje::run(cfg, rng, 0.02, late), std::invalid_argument);
}

TEST(Run, Deterministic) {
  const auto d = dynamics(40, 0.5, 1, 0.2, 0.8);
  auto once = [&] {
    auto rng = lje::make_stream(77);
    auto cfg = lje::init_from_profile(constant(0.5), d, rng);
    const std::vector<double> times{0.005, 0.01};
    return lje::run(cfg, rng, 0.01, times);
  };
  const auto a = once();
  const auto b = once();
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.final_occupancy, b.final_occupancy);
  EXPECT_EQ(a.observations[0].occupancy, b.observations[0].occupancy);
}

TEST(Run, EqualReservoirsKeepBernoulliDensity) {
  const int N = 64;
  const double rho = 0.3;
  const auto d = dynamics(N, 0, 1, rho, rho);
  const int seeds = 200;
  long long total = 0;
  for (int s = 0; s < seeds; ++s) {
    auto rng = lje::make_stream(1000 + s);
    auto cfg = lje::init_from_profile(constant(rho), d, rng);
    lje::run(cfg, rng, 0.05, {}, nullptr, false);
    total += cfg.particle_count();
  }
  const double n = static_cast<double>(seeds) * (N - 1);
  EXPECT_LT(std::abs(total / n - rho), 3.0 * std::sqrt(rho * (1 - rho) / n));
}

TEST(Empirical, Pairing) {
  const std::vector<std::uint8_t> eta{1, 0, 1, 0};
  EXPECT_NEAR(lje::empirical_pairing(eta, 5, [](double q) { return q; }), 0.2, 1e-15);
  const std::vector<std::uint8_t> ones(9, 1);
  EXPECT_DOUBLE_EQ(lje::empirical_pairing(ones, 10, [](double) { return 1.0; }), 1.0);
  const std::vector<std::uint8_t> zeros(9, 0);
  EXPECT_EQ(lje::empirical_pairing(zeros, 10, [](double q) { return std::exp(q); }), 0.0);
}

TEST(Empirical, Histogram) {
  const std::vector<std::uint8_t> ones(63, 1);
  const auto h1 = lje::density_histogram(ones, 64, 16);
  for (int b = 0; b < 16; ++b) EXPECT_EQ(h1[b], 1.0);
  // N = 65: sites 1..64, bins of 4 consecutive sites each.
  std::vector<std::uint8_t> alt65(64);
  for (std::size_t i = 0; i < alt65.size(); ++i) alt65[i] = i % 2;
  const auto h2 = lje::density_histogram(alt65, 65, 16);
  for (int b = 0; b < 16; ++b) EXPECT_EQ(h2[b], 0.5);

  // Random configuration against a direct recount.
  auto rng = lje::make_stream(8);
  std::vector<std::uint8_t> eta(99);
  for (auto& e : eta) e = lje::uniform01(rng) < 0.4;
  const auto h = lje::density_histogram(eta, 100, 7);
  for (int b = 0; b < 7; ++b) {
    double s = 0;
    int c = 0;
    for (int x = 1; x <= 99; ++x) {
      if (x * 7 / 100 == b) {
        s += eta[static_cast<std::size_t>(x - 1)];
        ++c;
      }
    }
    EXPECT_DOUBLE_EQ(h[b], s / c);
  }
  EXPECT_THROW(lje::density_histogram(eta, 100, 0), std::invalid_argument);
  EXPECT_THROW(lje::density_histogram(eta, 100, 100), std::invalid_argument);
}

TEST(Empirical, Boxcars) {
  const std::vector<std::uint8_t> ones(99, 1);
  EXPECT_EQ(lje::boxcar_left(ones, 100, 0.1), 1.0);
  EXPECT_EQ(lje::boxcar_right(ones, 100, 0.1), 1.0);
  std::vector<std::uint8_t> eta(99, 0);
  eta[0] = 1;
  EXPECT_EQ(lje::boxcar_left(eta, 100, 0.01), 1.0);
  auto rng = lje::make_stream(12);
  for (auto& e : eta) e = lje::uniform01(rng) < 0.5;
  double l = 0, r = 0;
  for (int y = 1; y <= 10; ++y) l += eta[static_cast<std::size_t>(y - 1)];
  for (int y = 89; y <= 99; ++y) r += eta[static_cast<std::size_t>(y - 1)];
  EXPECT_DOUBLE_EQ(lje::boxcar_left(eta, 100, 0.1), l / 10);
  EXPECT_DOUBLE_EQ(lje::boxcar_right(eta, 100, 0.1), r / 11);
  EXPECT_THROW(lje::boxcar_left(eta, 100, 0.001), std::invalid_argument);
}

}  // namespace
