// Command-line front end: simulate, pde, stationary, validate, sweep,
// convergence and kernel-info.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "lje/config.hpp"
#include "lje/harness.hpp"
#include "lje/output.hpp"
#include "lje/stationary.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

using nlohmann::json;

json manifest(const lje::ExperimentConfig& cfg, std::string_view command) {
  return {{"command", std::string(command)}, {"config", lje::to_json(cfg)}, {"version", "1.0.0"}};
}

void write_json(const std::filesystem::path& path, const json& j) { lje::write_text_file(path, j.dump(2) + "\n"); }

template <class Writer>
std::string render(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

std::vector<double> parse_range(const std::string& spec, const std::string& name) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw lje::ConfigError(name + ": cannot parse '" + item + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw lje::ConfigError(name + ": expected a:b:s or a single value");
  try {
    return lje::range_values(parts[0], parts[1], parts[2]);
  } catch (const std::invalid_argument& e) {
    throw lje::ConfigError(name + ": " + e.what());
  }
}

struct Overrides {
  std::string output_dir;
  int workers = 0;
};

lje::ExperimentConfig load(const std::string& path, const Overrides& o) {
  lje::ExperimentConfig cfg = lje::load_config(path);
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  if (o.workers > 0) cfg.workers = o.workers;
  cfg.validate();
  return cfg;
}

int cmd_simulate(const std::string& path, const Overrides& o) {
  const auto cfg = load(path, o);
  lje::SnapshotSet snaps;
  const auto stats = lje::run_ensemble(cfg, cfg.snapshots ? &snaps : nullptr);
  lje::write_text_file(cfg.output_dir / "ensemble.csv", render([&](auto& os) { lje::write_ensemble_csv(os, stats); }));
  if (cfg.snapshots) {
    lje::write_text_file(cfg.output_dir / "snapshots.csv", render([&](auto& os) { lje::write_snapshots_csv(os, snaps); }));
  }
  json m = manifest(cfg, "simulate");
  m["time_scale"] = stats.time_scale;
  m["events"] = stats.events;
  m["wall_seconds"] = stats.wall_seconds;
  write_json(cfg.output_dir / "manifest.json", m);
  std::cout << "wrote " << (cfg.output_dir / "ensemble.csv").string() << " (" << stats.seeds << " seeds, "
            << stats.events << " events)\n";
  return kExitPass;
}

int cmd_pde(const std::string& path, const Overrides& o) {
  const auto cfg = load(path, o);
  const auto sol = lje::config_pde(cfg);
  lje::write_text_file(cfg.output_dir / "pde.csv", render([&](auto& os) { lje::write_pde_csv(os, sol); }));
  json m = manifest(cfg, "pde");
  m["regime"] = lje::regime_json(sol.regime);
  m["dt"] = sol.dt;
  write_json(cfg.output_dir / "manifest.json", m);
  std::cout << "wrote " << (cfg.output_dir / "pde.csv").string() << " (" << lje::to_string(sol.regime.kind) << ")\n";
  return kExitPass;
}

int cmd_validate(const std::string& path, const Overrides& o, double tolerance) {
  auto cfg = load(path, o);
  if (tolerance > 0.0) cfg.tolerance.l1 = tolerance;
  const auto report = lje::validate(cfg);
  lje::write_text_file(cfg.output_dir / "ensemble.csv",
                       render([&](auto& os) { lje::write_ensemble_csv(os, report.ensemble); }));
  lje::write_text_file(cfg.output_dir / "pde.csv", render([&](auto& os) { lje::write_pde_csv(os, report.pde); }));
  lje::write_text_file(cfg.output_dir / "validation.csv",
                       render([&](auto& os) { lje::write_validation_csv(os, report); }));
  json m = manifest(cfg, "validate");
  m["regime"] = lje::regime_json(report.regime);
  m["passed"] = report.passed();
  m["failures"] = report.failures;
  m["events"] = report.ensemble.events;
  m["wall_seconds"] = report.ensemble.wall_seconds;
  write_json(cfg.output_dir / "manifest.json", m);
  for (const auto& row : report.rows) {
    std::cout << "t=" << row.t << " L1=" << row.l1 << " Linf=" << row.linf << " stderr=" << row.mean_stderr << '\n';
  }
  for (const auto& f : report.failures) std::cout << "FAIL " << f << '\n';
  std::cout << (report.passed() ? "PASS" : "FAIL") << " (" << lje::to_string(report.regime.kind) << ")\n";
  return report.passed() ? kExitPass : kExitFail;
}

int cmd_convergence(const std::string& path, const Overrides& o, const std::vector<int>& Ns) {
  const auto cfg = load(path, o);
  const auto rows = lje::convergence_table(cfg, Ns);
  const std::string csv = render([&](auto& os) { lje::write_convergence_csv(os, rows); });
  lje::write_text_file(cfg.output_dir / "convergence.csv", csv);
  std::cout << csv;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exclusion process with long jumps and reservoirs: simulation, PDE limits, validation"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "experiment configuration (JSON)")->required();
    sub->add_option("-o,--output-dir", overrides.output_dir, "override output_dir");
    sub->add_option("-w,--workers", overrides.workers, "override worker count")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "run the particle ensemble and write binned densities");
  add_config(simulate);
  auto* pde = app.add_subcommand("pde", "solve the limiting equation for the configured regime");
  add_config(pde);
  double tolerance = 0.0;
  auto* validate = app.add_subcommand("validate", "compare the ensemble with the PDE solution");
  add_config(validate);
  validate->add_option("-t,--tolerance", tolerance, "override the L1 tolerance");
  std::vector<int> Ns{64, 128, 256};
  auto* convergence = app.add_subcommand("convergence", "validation distance for a list of N");
  add_config(convergence);
  convergence->add_option("--N-list", Ns, "ascending system sizes")->delimiter(',');

  std::string regime_name;
  double gamma = 3.0;
  double kappa = 1.0;
  double alpha = 0.2;
  double beta = 0.8;
  double mass = 0.5;
  int M = 200;
  std::string reservoir = "extended";
  std::string output_path;
  bool with_shape = false;
  auto* stationary = app.add_subcommand("stationary", "stationary profile of a regime");
  stationary->add_option("-r,--regime", regime_name, "reaction, rd-dirichlet, heat-dirichlet, robin or neumann")
      ->required();
  stationary->add_option("-g,--gamma", gamma, "tail exponent (> 2)");
  stationary->add_option("--kappa", kappa, "reservoir strength");
  stationary->add_option("--alpha", alpha, "left reservoir density");
  stationary->add_option("--beta", beta, "right reservoir density");
  stationary->add_option("--mass", mass, "initial mass (Neumann)");
  stationary->add_option("-M,--cells", M, "grid cells");
  stationary->add_option("--reservoir", reservoir, "extended, case1 or case2");
  stationary->add_option("--output", output_path, "CSV path (default stdout)");
  stationary->add_flag("--shape", with_shape, "print the shape report as JSON on stderr");

  std::string gamma_range = "2.25:5:0.25";
  std::string theta_range = "-3:3:0.25";
  auto* sweep = app.add_subcommand("sweep", "regime map over a (gamma, theta) grid");
  sweep->add_option("--gamma-range", gamma_range, "a:b:s");
  sweep->add_option("--theta-range", theta_range, "a:b:s");
  sweep->add_option("--kappa", kappa, "reservoir strength");
  sweep->add_option("--reservoir", reservoir, "extended, case1 or case2");
  sweep->add_option("--output", output_path, "CSV path (default stdout)");

  int kernel_N = 100;
  auto* kernel_info = app.add_subcommand("kernel-info", "kernel constants and tails as JSON");
  kernel_info->add_option("-g,--gamma", gamma, "tail exponent (> 2)")->required();
  kernel_info->add_option("-N", kernel_N, "system size for the tail samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, overrides);
    if (*pde) return cmd_pde(config_path, overrides);
    if (*validate) return cmd_validate(config_path, overrides, tolerance);
    if (*convergence) return cmd_convergence(config_path, overrides, Ns);
    if (*stationary) {
      lje::Regime regime;
      try {
        const auto kernel = lje::make_kernel(gamma);
        regime = lje::regime_coefficients(lje::parse_regime_kind(regime_name), kernel, kappa,
                                          lje::parse_reservoir_variant(reservoir));
      } catch (const std::exception& e) {
        throw lje::ConfigError(e.what());
      }
      const auto sp = lje::stationary_profile(regime, alpha, beta, M, lje::Profile::constant(M, mass));
      const std::string csv = render([&](auto& os) { lje::write_stationary_csv(os, sp); });
      if (output_path.empty()) {
        std::cout << csv;
      } else {
        lje::write_text_file(output_path, csv);
      }
      if (with_shape) {
        const double tol = sp.form == lje::StationaryForm::NumericBvp ? 1e-6 : 1e-10;
        std::cerr << lje::shape_report_json(lje::shape_check(sp, std::min(alpha, beta), std::max(alpha, beta), tol))
                         .dump(2)
                  << '\n';
      }
      return kExitPass;
    }
    if (*sweep) {
      lje::ReservoirVariant variant;
      try {
        variant = lje::parse_reservoir_variant(reservoir);
      } catch (const std::invalid_argument& e) {
        throw lje::ConfigError(e.what());
      }
      const auto rows = lje::phase_sweep(parse_range(gamma_range, "gamma-range"),
                                         parse_range(theta_range, "theta-range"), kappa, variant);
      const std::string csv = render([&](auto& os) { lje::write_sweep_csv(os, rows); });
      if (output_path.empty()) {
        std::cout << csv;
      } else {
        lje::write_text_file(output_path, csv);
      }
      return kExitPass;
    }
    if (*kernel_info) {
      const auto kernel = lje::make_kernel(gamma);
      std::cout << lje::kernel_info_json(kernel, kernel_N).dump(2) << '\n';
      return kExitPass;
    }
  } catch (const lje::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitConfig;
}
