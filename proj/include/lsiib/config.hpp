#pragma once

#include <map>
#include <string>
#include <vector>

#include "lsiib/analysis.hpp"
#include "lsiib/core.hpp"
#include "lsiib/dynamics.hpp"
#include "lsiib/reduction.hpp"

namespace lsiib {

/// What a run config asks for. See the README for the config-file schema.
enum class Scenario {
  single_atom_5lvl,
  collective_6lvl,
  effective_3lvl,
  full_ensemble_oracle,
  oracle_compare,
  sweep,
};

std::string to_string(Scenario s);

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat f);

/// Fully-resolved run request. `propagation.t_max <= 0` means "auto": three
/// Raman periods of the scenario's own Raman-Rabi frequency.
struct RunConfig {
  Scenario scenario = Scenario::single_atom_5lvl;
  DriveParams params;
  /// True when the config asked for `params.big_delta = resonance`; the
  /// stored params already carry the resolved value, but sweeps re-resolve
  /// it per grid point.
  bool resonance_big_delta = false;

  PropagationConfig propagation;

  // effective-3lvl options
  ResonanceMode effective_mode = ResonanceMode::single_atom;
  SingleEffectiveForm effective_form = SingleEffectiveForm::shifted;
  CollectiveCoupling effective_coupling = CollectiveCoupling::large_n;

  // oracle scenarios
  int oracle_cap = 8;

  // sweep scenario
  SweepModel sweep_model = SweepModel::five_level;
  std::string sweep_axis;
  std::vector<double> sweep_values;

  std::string output_dir = "out";
  OutputFormat output_format = OutputFormat::csv;
};

/// Parse the flat `key = value` config text (comments start with '#').
/// Unknown, duplicate, missing, or ill-typed keys raise config_error with a
/// message naming the key. `source_name` is used in error messages only.
RunConfig parse_run_config(const std::string& text,
                           const std::string& source_name = "<config>");

/// Read and parse a config file; raises config_error when unreadable.
RunConfig load_run_config(const std::string& path);

}  // namespace lsiib
