#include "lsiib/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lsiib {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

/// Flat key/value view of a config file with consumed-key bookkeeping so
/// typos surface as "unknown config key" instead of being ignored.
class KeyValues {
 public:
  KeyValues(const std::string& text, std::string source)
      : source_(std::move(source)) {
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
      ++line_number;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        fail("line " + std::to_string(line_number) +
             " is not a 'key = value' pair");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) {
        fail("line " + std::to_string(line_number) + " has an empty key");
      }
      if (value.empty()) {
        fail("key '" + key + "' has an empty value");
      }
      if (values_.count(key) != 0) {
        fail("duplicate config key '" + key + "'");
      }
      values_[key] = value;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw config_error(source_ + ": " + msg);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string require(const std::string& key) {
    if (!has(key)) fail("missing required config key '" + key + "'");
    consumed_.insert(key);
    return values_.at(key);
  }

  std::string get_or(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    consumed_.insert(key);
    return values_.at(key);
  }

  double require_double(const std::string& key) {
    return to_double(key, require(key));
  }

  double get_double_or(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return to_double(key, require(key));
  }

  int get_int_or(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const std::string raw = require(key);
    try {
      size_t pos = 0;
      const int value = std::stoi(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument(raw);
      return value;
    } catch (const std::exception&) {
      fail("key '" + key + "' must be an integer, got '" + raw + "'");
    }
  }

  double to_double(const std::string& key, const std::string& raw) const {
    try {
      size_t pos = 0;
      const double value = std::stod(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument(raw);
      return value;
    } catch (const std::exception&) {
      fail("key '" + key + "' must be a number, got '" + raw + "'");
    }
  }

  const std::map<std::string, std::string>& raw() const { return values_; }

  bool consumed(const std::string& key) const {
    return consumed_.count(key) != 0;
  }

 private:
  std::string source_;
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::single_atom_5lvl: return "single-atom-5lvl";
    case Scenario::collective_6lvl: return "collective-6lvl";
    case Scenario::effective_3lvl: return "effective-3lvl";
    case Scenario::full_ensemble_oracle: return "full-ensemble-oracle";
    case Scenario::oracle_compare: return "oracle-compare";
    case Scenario::sweep: return "sweep";
  }
  throw std::invalid_argument("unknown scenario");
}

std::string to_string(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}

RunConfig parse_run_config(const std::string& text,
                           const std::string& source_name) {
  KeyValues kv(text, source_name);
  RunConfig cfg;

  const std::string scenario = kv.require("scenario");
  if (scenario == "single-atom-5lvl") cfg.scenario = Scenario::single_atom_5lvl;
  else if (scenario == "collective-6lvl") cfg.scenario = Scenario::collective_6lvl;
  else if (scenario == "effective-3lvl") cfg.scenario = Scenario::effective_3lvl;
  else if (scenario == "full-ensemble-oracle") cfg.scenario = Scenario::full_ensemble_oracle;
  else if (scenario == "oracle-compare") cfg.scenario = Scenario::oracle_compare;
  else if (scenario == "sweep") cfg.scenario = Scenario::sweep;
  else kv.fail("unknown scenario '" + scenario + "'");

  // --- params ---
  const double omega1 = kv.require_double("params.omega1");
  const double omega2 = kv.require_double("params.omega2");
  const int n_atoms = kv.get_int_or("params.n_atoms", 1);

  double delta = 0.0;
  double big_delta = 0.0;
  bool resonance = false;
  if (kv.has("params.delta1") || kv.has("params.delta2")) {
    if (kv.has("params.delta") || kv.has("params.big_delta")) {
      kv.fail("give either params.delta1/params.delta2 or "
              "params.delta/params.big_delta, not both");
    }
    const double delta1 = kv.require_double("params.delta1");
    const double delta2 = kv.require_double("params.delta2");
    cfg.params = DriveParams::from_legs(omega1, omega2, delta1, delta2, n_atoms);
  } else {
    delta = kv.require_double("params.delta");
    const std::string bd = kv.get_or("params.big_delta", "0");
    if (bd == "resonance") {
      resonance = true;
    } else {
      big_delta = kv.to_double("params.big_delta", bd);
    }
    cfg.params = DriveParams::from_detunings(omega1, omega2, delta, big_delta,
                                             n_atoms);
  }

  // --- propagation ---
  const std::string t_max = kv.get_or("propagation.t_max", "auto");
  if (t_max == "auto") {
    cfg.propagation.t_max = 0.0;  // resolved by the runner
  } else {
    cfg.propagation.t_max = kv.to_double("propagation.t_max", t_max);
    if (!(cfg.propagation.t_max > 0.0)) {
      kv.fail("propagation.t_max must be positive or 'auto'");
    }
  }
  cfg.propagation.n_steps = kv.get_int_or("propagation.n_steps", 2000);
  if (cfg.propagation.n_steps < 2) {
    kv.fail("propagation.n_steps must be >= 2");
  }
  const std::string method =
      kv.get_or("propagation.method", "eigendecomposition");
  if (method == "eigendecomposition") {
    cfg.propagation.method = PropagationConfig::Method::eigendecomposition;
  } else if (method == "scaled_expm") {
    cfg.propagation.method = PropagationConfig::Method::scaled_expm;
  } else {
    kv.fail("propagation.method must be 'eigendecomposition' or 'scaled_expm'");
  }

  // --- scenario-specific options ---
  if (cfg.scenario == Scenario::effective_3lvl) {
    const std::string mode =
        kv.get_or("effective.mode", n_atoms > 1 ? "collective" : "single");
    if (mode == "single") cfg.effective_mode = ResonanceMode::single_atom;
    else if (mode == "collective") cfg.effective_mode = ResonanceMode::collective;
    else kv.fail("effective.mode must be 'single' or 'collective'");

    const std::string form = kv.get_or("effective.form", "shifted");
    if (form == "shifted") cfg.effective_form = SingleEffectiveForm::shifted;
    else if (form == "unshifted") cfg.effective_form = SingleEffectiveForm::unshifted;
    else kv.fail("effective.form must be 'shifted' or 'unshifted'");

    const std::string coupling = kv.get_or("effective.coupling", "large-n");
    if (coupling == "large-n") cfg.effective_coupling = CollectiveCoupling::large_n;
    else if (coupling == "exact") cfg.effective_coupling = CollectiveCoupling::exact;
    else kv.fail("effective.coupling must be 'large-n' or 'exact'");
  }

  const bool oracle_scenario = cfg.scenario == Scenario::full_ensemble_oracle ||
                               cfg.scenario == Scenario::oracle_compare;
  if (oracle_scenario) {
    cfg.oracle_cap = kv.get_int_or("oracle.cap", 8);
    if (cfg.oracle_cap < 1) kv.fail("oracle.cap must be >= 1");
    if (n_atoms < 3) {
      kv.fail("oracle scenarios need params.n_atoms >= 3");
    }
    if (n_atoms > cfg.oracle_cap) {
      kv.fail("params.n_atoms exceeds oracle.cap (" +
              std::to_string(cfg.oracle_cap) + ")");
    }
  }

  if (cfg.scenario == Scenario::sweep) {
    const std::string model = kv.require("sweep.model");
    if (model == "five-level") cfg.sweep_model = SweepModel::five_level;
    else if (model == "collective-six") cfg.sweep_model = SweepModel::collective_six;
    else if (model == "effective-single") cfg.sweep_model = SweepModel::effective_single;
    else if (model == "effective-collective") cfg.sweep_model = SweepModel::effective_collective;
    else kv.fail("sweep.model must be one of five-level, collective-six, "
                 "effective-single, effective-collective");

    cfg.sweep_axis = kv.require("sweep.axis");
    static const std::set<std::string> kAxes = {"omega1", "omega2", "delta",
                                                "big_delta", "n_atoms"};
    if (kAxes.count(cfg.sweep_axis) == 0) {
      kv.fail("sweep.axis must be one of omega1, omega2, delta, big_delta, "
              "n_atoms");
    }
    const std::string values = kv.require("sweep.values");
    std::istringstream vs(values);
    std::string token;
    while (std::getline(vs, token, ',')) {
      token = trim(token);
      if (token.empty()) kv.fail("sweep.values contains an empty entry");
      cfg.sweep_values.push_back(kv.to_double("sweep.values", token));
    }
    if (cfg.sweep_values.empty()) kv.fail("sweep.values is empty");
    if (cfg.sweep_axis == "n_atoms") {
      for (double v : cfg.sweep_values) {
        if (v < 1.0 || v != std::floor(v)) {
          kv.fail("sweep.values for n_atoms must be positive integers");
        }
      }
    }
  }

  // --- output ---
  cfg.output_dir = kv.get_or("output.dir", "out");
  const std::string format = kv.get_or("output.format", "csv");
  if (format == "csv") cfg.output_format = OutputFormat::csv;
  else if (format == "json") cfg.output_format = OutputFormat::json;
  else kv.fail("output.format must be 'csv' or 'json'");

  // --- reject leftovers with a scenario hint where it helps ---
  for (const auto& [key, value] : kv.raw()) {
    if (kv.consumed(key)) continue;
    if (key.rfind("sweep.", 0) == 0 && cfg.scenario != Scenario::sweep) {
      kv.fail("key '" + key + "' is only valid for the sweep scenario");
    }
    if (key.rfind("effective.", 0) == 0 &&
        cfg.scenario != Scenario::effective_3lvl) {
      kv.fail("key '" + key + "' is only valid for the effective-3lvl scenario");
    }
    if (key.rfind("oracle.", 0) == 0 && !oracle_scenario) {
      kv.fail("key '" + key + "' is only valid for the oracle scenarios");
    }
    kv.fail("unknown config key '" + key + "'");
  }

  // --- resolve the resonance keyword (sweeps re-resolve per point) ---
  cfg.resonance_big_delta = resonance;
  if (resonance) {
    ResonanceMode mode = ResonanceMode::collective;
    if (cfg.scenario == Scenario::single_atom_5lvl ||
        (cfg.scenario == Scenario::effective_3lvl &&
         cfg.effective_mode == ResonanceMode::single_atom) ||
        (cfg.scenario == Scenario::sweep &&
         (cfg.sweep_model == SweepModel::five_level ||
          cfg.sweep_model == SweepModel::effective_single))) {
      mode = ResonanceMode::single_atom;
    }
    const double resolved = resonance_detuning(cfg.params, mode);
    cfg.params = DriveParams::from_detunings(omega1, omega2, delta, resolved,
                                             n_atoms);
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw config_error("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_run_config(buffer.str(), path);
}

}  // namespace lsiib
