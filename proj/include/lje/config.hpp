#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lje/model.hpp"
#include "lje/profile.hpp"

namespace lje {

/// Schema or semantic error in an experiment configuration; `what()` names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { Simulate, Pde, Stationary, Validate, Sweep };

std::string_view to_string(RunMode mode);
RunMode parse_run_mode(std::string_view name);

/// Initial density g on [0, 1].
struct InitialSpec {
  enum class Type { Constant, Linear, Table };
  Type type = Type::Constant;
  double value = 0.5;              ///< Constant
  double left = 0.5, right = 0.5;  ///< Linear: g(0), g(1)
  std::vector<double> table;       ///< Table: nodes at q = j/(n-1), linear in between

  double operator()(double q) const;
  Profile on_grid(int M) const;
};

struct PdeConfig {
  int M = 200;
  double dt = 0.0;  ///< 0 selects 0.25 / M^2
};

struct Tolerances {
  double l1 = 0.05;
  std::optional<double> linf;
  std::optional<double> boundary;  ///< |boxcar - rho_t(0 or 1)|
};

struct ExperimentConfig {
  ModelParams model;
  InitialSpec initial;
  std::vector<double> times;
  std::vector<std::uint64_t> seeds;
  int bins = 16;
  double boxcar_eps = 0.05;
  PdeConfig pde;
  std::filesystem::path output_dir = "out";
  RunMode mode = RunMode::Validate;
  int workers = 1;
  bool snapshots = false;  ///< also write per-seed occupancies (simulate mode)
  Tolerances tolerance;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace lje
