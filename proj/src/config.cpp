#include "lje/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace lje {

using nlohmann::json;

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Simulate: return "simulate";
    case RunMode::Pde: return "pde";
    case RunMode::Stationary: return "stationary";
    case RunMode::Validate: return "validate";
    case RunMode::Sweep: return "sweep";
  }
  return "unknown";
}

RunMode parse_run_mode(std::string_view name) {
  if (name == "simulate") return RunMode::Simulate;
  if (name == "pde") return RunMode::Pde;
  if (name == "stationary") return RunMode::Stationary;
  if (name == "validate") return RunMode::Validate;
  if (name == "sweep") return RunMode::Sweep;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

double InitialSpec::operator()(double q) const {
  switch (type) {
    case Type::Constant: return value;
    case Type::Linear: return left + (right - left) * q;
    case Type::Table: {
      const auto n = table.size();
      if (n == 1) return table[0];
      const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(n - 1);
      const auto j = std::min(static_cast<std::size_t>(pos), n - 2);
      const double w = pos - static_cast<double>(j);
      return (1.0 - w) * table[j] + w * table[j + 1];
    }
  }
  return value;
}

Profile InitialSpec::on_grid(int M) const {
  return Profile::from_function(M, [this](double q) { return (*this)(q); });
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_object(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError((path.empty() ? "config" : path) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(join(path, key) + ": unknown key");
  }
}

const json* find(const json& obj, const std::string& path, const std::string& key, bool required) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ConfigError(join(path, key) + ": missing required field");
    return nullptr;
  }
  return &*it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
  return x;
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<long long>();
}

std::string string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

void read_number(const json& obj, const std::string& path, const std::string& key, double& out, bool required) {
  if (const json* v = find(obj, path, key, required)) out = number(*v, join(path, key));
}

void read_int(const json& obj, const std::string& path, const std::string& key, int& out, bool required) {
  if (const json* v = find(obj, path, key, required)) {
    const long long x = integer(*v, join(path, key));
    if (x < INT32_MIN || x > INT32_MAX) throw ConfigError(join(path, key) + ": out of range");
    out = static_cast<int>(x);
  }
}

ModelParams parse_model(const json& j) {
  const std::string path = "model";
  check_object(j, path, {"N", "gamma", "theta", "kappa", "alpha", "beta", "reservoir"});
  ModelParams m;
  read_int(j, path, "N", m.N, true);
  read_number(j, path, "gamma", m.gamma, true);
  read_number(j, path, "theta", m.theta, true);
  read_number(j, path, "kappa", m.kappa, false);
  read_number(j, path, "alpha", m.alpha, true);
  read_number(j, path, "beta", m.beta, true);
  if (const json* v = find(j, path, "reservoir", false)) {
    try {
      m.reservoir = parse_reservoir_variant(string(*v, "model.reservoir"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("model.reservoir: ") + e.what());
    }
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  return m;
}

InitialSpec parse_initial(const json& j) {
  const std::string path = "initial";
  if (!j.is_object()) throw ConfigError("initial: expected an object");
  InitialSpec s;
  const std::string type = string(*find(j, path, "type", true), "initial.type");
  if (type == "constant") {
    check_object(j, path, {"type", "value"});
    s.type = InitialSpec::Type::Constant;
    read_number(j, path, "value", s.value, true);
  } else if (type == "linear") {
    check_object(j, path, {"type", "left", "right"});
    s.type = InitialSpec::Type::Linear;
    read_number(j, path, "left", s.left, true);
    read_number(j, path, "right", s.right, true);
  } else if (type == "table") {
    check_object(j, path, {"type", "values"});
    s.type = InitialSpec::Type::Table;
    const json& values = *find(j, path, "values", true);
    if (!values.is_array() || values.empty()) throw ConfigError("initial.values: expected a non-empty array");
    for (std::size_t i = 0; i < values.size(); ++i) {
      s.table.push_back(number(values[i], "initial.values[" + std::to_string(i) + "]"));
    }
  } else {
    throw ConfigError("initial.type: expected constant, linear or table, got '" + type + "'");
  }
  const std::vector<double> probes = s.type == InitialSpec::Type::Table ? s.table
                                     : s.type == InitialSpec::Type::Linear ? std::vector<double>{s.left, s.right}
                                                                           : std::vector<double>{s.value};
  for (double v : probes) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("initial: densities must lie in [0,1]");
  }
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0)) throw ConfigError("times: must be >= 0");
    if (k > 0 && !(times[k] > times[k - 1])) throw ConfigError("times: must be strictly increasing");
  }
  if (seeds.empty()) throw ConfigError("seeds: need at least one seed");
  if (bins < 1 || bins > model.N - 1) throw ConfigError("bins: must lie in [1, N-1]");
  if (!(boxcar_eps > 0.0) || std::floor(boxcar_eps * model.N) < 1.0 ||
      std::floor(boxcar_eps * model.N) > model.N - 2) {
    throw ConfigError("boxcar_eps: window floor(eps*N) must lie in [1, N-2]");
  }
  if (pde.M < 2) throw ConfigError("pde.M: must be >= 2");
  if (pde.dt < 0.0) throw ConfigError("pde.dt: must be >= 0");
  if (workers < 1) throw ConfigError("workers: must be >= 1");
  if (!(tolerance.l1 > 0.0)) throw ConfigError("tolerance.l1: must be positive");
}

ExperimentConfig parse_config(const json& j) {
  check_object(j, "", {"model", "initial", "times", "seeds", "bins", "boxcar_eps", "pde", "output_dir", "mode",
                       "workers", "snapshots", "tolerance"});
  ExperimentConfig cfg;
  cfg.model = parse_model(*find(j, "", "model", true));
  if (const json* v = find(j, "", "initial", false)) cfg.initial = parse_initial(*v);
  if (const json* v = find(j, "", "times", false)) {
    if (!v->is_array()) throw ConfigError("times: expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) cfg.times.push_back(number((*v)[i], "times[" + std::to_string(i) + "]"));
  }
  if (const json* v = find(j, "", "seeds", false)) {
    if (v->is_number_integer()) {
      const long long count = v->get<long long>();
      if (count < 1) throw ConfigError("seeds: count must be >= 1");
      for (long long s = 1; s <= count; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    } else if (v->is_array()) {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& s = (*v)[i];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
          throw ConfigError("seeds[" + std::to_string(i) + "]: expected a non-negative integer");
        }
        cfg.seeds.push_back(s.get<std::uint64_t>());
      }
    } else {
      throw ConfigError("seeds: expected a count or a list of integers");
    }
  } else {
    cfg.seeds = {1};
  }
  read_int(j, "", "bins", cfg.bins, false);
  read_number(j, "", "boxcar_eps", cfg.boxcar_eps, false);
  if (const json* v = find(j, "", "pde", false)) {
    check_object(*v, "pde", {"M", "dt"});
    read_int(*v, "pde", "M", cfg.pde.M, false);
    read_number(*v, "pde", "dt", cfg.pde.dt, false);
  }
  if (const json* v = find(j, "", "output_dir", false)) cfg.output_dir = string(*v, "output_dir");
  if (const json* v = find(j, "", "mode", false)) {
    try {
      cfg.mode = parse_run_mode(string(*v, "mode"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("mode: ") + e.what());
    }
  }
  read_int(j, "", "workers", cfg.workers, false);
  if (const json* v = find(j, "", "snapshots", false)) {
    if (!v->is_boolean()) throw ConfigError("snapshots: expected a boolean");
    cfg.snapshots = v->get<bool>();
  }
  if (const json* v = find(j, "", "tolerance", false)) {
    check_object(*v, "tolerance", {"l1", "linf", "boundary"});
    read_number(*v, "tolerance", "l1", cfg.tolerance.l1, false);
    if (const json* x = find(*v, "tolerance", "linf", false)) cfg.tolerance.linf = number(*x, "tolerance.linf");
    if (const json* x = find(*v, "tolerance", "boundary", false)) {
      cfg.tolerance.boundary = number(*x, "tolerance.boundary");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["model"] = {{"N", cfg.model.N},
                {"gamma", cfg.model.gamma},
                {"theta", cfg.model.theta},
                {"kappa", cfg.model.kappa},
                {"alpha", cfg.model.alpha},
                {"beta", cfg.model.beta},
                {"reservoir", std::string(to_string(cfg.model.reservoir))}};
  switch (cfg.initial.type) {
    case InitialSpec::Type::Constant: j["initial"] = {{"type", "constant"}, {"value", cfg.initial.value}}; break;
    case InitialSpec::Type::Linear:
      j["initial"] = {{"type", "linear"}, {"left", cfg.initial.left}, {"right", cfg.initial.right}};
      break;
    case InitialSpec::Type::Table: j["initial"] = {{"type", "table"}, {"values", cfg.initial.table}}; break;
  }
  j["times"] = cfg.times;
  j["seeds"] = cfg.seeds;
  j["bins"] = cfg.bins;
  j["boxcar_eps"] = cfg.boxcar_eps;
  j["pde"] = {{"M", cfg.pde.M}, {"dt", cfg.pde.dt}};
  j["output_dir"] = cfg.output_dir.string();
  j["mode"] = std::string(to_string(cfg.mode));
  j["workers"] = cfg.workers;
  j["snapshots"] = cfg.snapshots;
  json tol = {{"l1", cfg.tolerance.l1}};
  if (cfg.tolerance.linf) tol["linf"] = *cfg.tolerance.linf;
  if (cfg.tolerance.boundary) tol["boundary"] = *cfg.tolerance.boundary;
  j["tolerance"] = tol;
  return j;
}

}  // namespace lje
