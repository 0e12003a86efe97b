#include "lje/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lje {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_ensemble_csv(std::ostream& out, const EnsembleStats& stats) {
  out << "t,q,value,stderr\n";
  for (std::size_t k = 0; k < stats.times.size(); ++k) {
    const Profile& mean = stats.mean[k];
    for (int b = 0; b < mean.cells(); ++b) {
      out << format_double(stats.times[k]) << ',' << format_double(mean.center(b)) << ',' << format_double(mean[b])
          << ',' << format_double(stats.std_error[k][static_cast<std::size_t>(b)]) << '\n';
    }
  }
}

void write_pde_csv(std::ostream& out, const PdeSolution& sol) {
  out << "t,q,rho\n";
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const Profile& p = sol.profiles[k];
    for (int i = 0; i < p.cells(); ++i) {
      out << format_double(sol.times[k]) << ',' << format_double(p.center(i)) << ',' << format_double(p[i]) << '\n';
    }
  }
}

void write_snapshots_csv(std::ostream& out, const SnapshotSet& snapshots) {
  out << "seed,t,x,eta\n";
  for (std::size_t s = 0; s < snapshots.seeds.size(); ++s) {
    for (const Observation& obs : snapshots.observations[s]) {
      for (std::size_t i = 0; i < obs.occupancy.size(); ++i) {
        out << snapshots.seeds[s] << ',' << format_double(obs.t) << ',' << i + 1 << ',' << int{obs.occupancy[i]}
            << '\n';
      }
    }
  }
}

void write_stationary_csv(std::ostream& out, const StationaryProfile& sp) {
  out << "q,rho_bar\n";
  for (int i = 0; i < sp.profile.cells(); ++i) {
    out << format_double(sp.profile.center(i)) << ',' << format_double(sp.profile[i]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "gamma,theta,regime,sigma_hat,kappa_hat,m_hat,time_scale_exponent\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.gamma) << ',' << format_double(r.theta) << ',' << to_string(r.regime.kind) << ','
        << format_double(r.regime.sigma_hat) << ',' << format_double(r.regime.kappa_hat) << ','
        << format_double(r.regime.m_hat) << ',' << format_double(r.time_scale_exponent) << '\n';
  }
}

void write_validation_csv(std::ostream& out, const ValidationReport& report) {
  out << "t,l1,linf,mean_stderr,boxcar_left,pde_left,boxcar_right,pde_right\n";
  for (const ValidationRow& r : report.rows) {
    out << format_double(r.t) << ',' << format_double(r.l1) << ',' << format_double(r.linf) << ','
        << format_double(r.mean_stderr) << ',' << format_double(r.boxcar_left) << ',' << format_double(r.pde_left)
        << ',' << format_double(r.boxcar_right) << ',' << format_double(r.pde_right) << '\n';
  }
}

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
  out << "N,l1,linf,mean_stderr\n";
  for (const ConvergenceRow& r : rows) {
    out << r.N << ',' << format_double(r.l1) << ',' << format_double(r.linf) << ',' << format_double(r.mean_stderr)
        << '\n';
  }
}

nlohmann::json regime_json(const Regime& regime) {
  return {{"kind", std::string(to_string(regime.kind))},
          {"sigma_hat", regime.sigma_hat},
          {"kappa_hat", regime.kappa_hat},
          {"m_hat", regime.m_hat},
          {"reaction_exponent", regime.reaction_exponent}};
}

nlohmann::json kernel_info_json(const JumpKernel& kernel, int N) {
  nlohmann::json tails = nlohmann::json::array();
  for (int x : {1, 2, N / 4, N / 2, N - 1}) {
    if (x < 1 || x > N - 1) continue;
    tails.push_back({{"x", x},
                     {"tail_left", kernel.tail_left(x, N)},
                     {"tail_right", kernel.tail_right(x, N)},
                     {"theta_minus", kernel.theta_minus(x, N)},
                     {"theta_plus", kernel.theta_plus(x, N)}});
  }
  return {{"gamma", kernel.gamma()},
          {"c_gamma", kernel.c_gamma()},
          {"sigma_sq", kernel.variance()},
          {"m", kernel.mean_m()},
          {"normalization_error", kernel.normalization_error()},
          {"truncation_radius", kernel.truncation_radius()},
          {"N", N},
          {"tails", tails}};
}

nlohmann::json shape_report_json(const ShapeReport& report) {
  return {{"passed", report.passed()},
          {"degenerate", report.degenerate},
          {"violations", report.violations},
          {"notes", report.notes}};
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace lje
