#include "lsiib/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <json.hpp>

#include "lsiib/analysis.hpp"
#include "lsiib/collective.hpp"
#include "lsiib/dynamics.hpp"
#include "lsiib/hamiltonians.hpp"
#include "lsiib/reduction.hpp"

namespace lsiib {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_significant(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

/// Trajectory as CSV: header `t,p_<label>,...`, 12-significant-digit floats.
std::string render_trajectory_csv(const Trajectory& traj) {
  std::string out = "t";
  for (const auto& label : traj.basis_labels) {
    out += ",p_" + label;
  }
  out += "\n";
  for (Eigen::Index t = 0; t < traj.times.size(); ++t) {
    out += format_significant(traj.times(t));
    for (Eigen::Index j = 0; j < traj.populations.cols(); ++j) {
      out += ",";
      out += format_significant(traj.populations(t, j));
    }
    out += "\n";
  }
  return out;
}

/// Trajectory as JSON with the same fixed number formatting as the CSV.
std::string render_trajectory_json(const Trajectory& traj) {
  std::string out = "{\n  \"labels\": [";
  for (size_t i = 0; i < traj.basis_labels.size(); ++i) {
    if (i > 0) out += ", ";
    out += json(traj.basis_labels[i]).dump();
  }
  out += "],\n  \"times\": [";
  for (Eigen::Index t = 0; t < traj.times.size(); ++t) {
    if (t > 0) out += ", ";
    out += format_significant(traj.times(t));
  }
  out += "],\n  \"populations\": [\n";
  for (Eigen::Index t = 0; t < traj.populations.rows(); ++t) {
    out += "    [";
    for (Eigen::Index j = 0; j < traj.populations.cols(); ++j) {
      if (j > 0) out += ", ";
      out += format_significant(traj.populations(t, j));
    }
    out += t + 1 < traj.populations.rows() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

void add_params(json& report, const DriveParams& p) {
  report["omega1"] = p.omega1;
  report["omega2"] = p.omega2;
  report["delta1"] = p.delta1;
  report["delta2"] = p.delta2;
  report["delta"] = p.delta;
  report["big_delta"] = p.big_delta;
  report["n_atoms"] = p.n_atoms;
}

void add_derived(json& report, const DriveParams& p) {
  const LightShiftSet s = light_shifts_first_order(p);
  report["eps1"] = s.eps1;
  report["eps2"] = s.eps2;
  report["eps_a"] = s.eps_a;
  report["eps_c1"] = s.eps_c1;
  report["eps_c2"] = s.eps_c2;
  report["omega_r"] = s.omega_r;
  report["omega_ro"] = s.omega_ro;
  report["delta_b"] = s.delta_b;
  report["resonance_single_atom"] =
      resonance_detuning(p, ResonanceMode::single_atom);
  report["resonance_collective"] =
      resonance_detuning(p, ResonanceMode::collective);
}

void add_blockade_metrics(json& report, const BlockadeReport& b) {
  report["max_leak_excited"] = b.max_leak_excited;
  report["max_leak_blocked"] = b.max_leak_blocked;
  report["transfer_fidelity"] = b.transfer_fidelity;
  if (b.rabi_frequency_fit.has_value()) {
    report["rabi_frequency_fit"] = *b.rabi_frequency_fit;
  } else {
    report["rabi_frequency_fit"] = nullptr;
  }
  report["regime_adiabatic"] = b.regime_adiabatic;
  report["regime_blockade"] = b.regime_blockade;
}

/// Three Raman periods of the scenario's own Raman-Rabi frequency.
double auto_t_max(const DriveParams& p, bool collective) {
  const LightShiftSet s = light_shifts_first_order(p);
  const double raman = collective ? s.omega_ro : s.omega_r;
  if (raman == 0.0) {
    throw regime_error(
        "cannot infer propagation.t_max: Raman-Rabi frequency is zero");
  }
  return 3.0 * 2.0 * std::numbers::pi / std::abs(raman);
}

/// Write every (name, content) pair atomically: temp file then rename. If
/// anything fails, all outputs written so far are removed.
void write_outputs(const fs::path& dir,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  try {
    for (const auto& [name, content] : files) {
      const fs::path final_path = dir / name;
      const fs::path tmp_path = dir / (name + ".tmp");
      {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) {
          throw std::runtime_error("cannot write output file '" +
                                   tmp_path.string() + "'");
        }
        out << content;
        if (!out.flush()) {
          throw std::runtime_error("failed writing output file '" +
                                   tmp_path.string() + "'");
        }
      }
      fs::rename(tmp_path, final_path);
      written.push_back(final_path);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& path : written) fs::remove(path, ec);
    for (const auto& [name, content] : files) {
      fs::remove(dir / (name + ".tmp"), ec);
    }
    throw;
  }
}

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

json make_manifest(const RunConfig& cfg, const CliOverrides& overrides,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  json manifest;
  manifest["generator"] = std::string(kToolName) + " " + kToolVersion;
  manifest["created_utc"] = iso_utc_now();
  manifest["scenario"] = to_string(cfg.scenario);
  manifest["format"] = to_string(cfg.output_format);
  if (!overrides.config_path.empty()) {
    manifest["config_path"] = overrides.config_path;
  }
  json names = json::array();
  for (const auto& [name, content] : files) names.push_back(name);
  manifest["files"] = names;
  return manifest;
}

std::string trajectory_file_name(const std::string& stem, OutputFormat format) {
  return stem + (format == OutputFormat::csv ? ".csv" : ".json");
}

std::string render_trajectory(const Trajectory& traj, OutputFormat format) {
  return format == OutputFormat::csv ? render_trajectory_csv(traj)
                                     : render_trajectory_json(traj);
}

/// Sweep table as CSV. Optional cells are left empty; error text has commas
/// replaced so the row stays parseable.
std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "index,omega1,omega2,delta,big_delta,n_atoms,eps1,eps2,omega_r,omega_ro,"
      "delta_b,delta_b_numeric,max_leak_excited,max_leak_blocked,"
      "transfer_fidelity,rabi_frequency_fit,regime_adiabatic,regime_blockade,"
      "error\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    out += std::to_string(i);
    const double base[5] = {row.params.omega1, row.params.omega2,
                            row.params.delta, row.params.big_delta,
                            static_cast<double>(row.params.n_atoms)};
    for (double v : base) out += "," + format_significant(v);
    if (row.shifts_ok) {
      const double derived[5] = {row.shifts.eps1, row.shifts.eps2,
                                 row.shifts.omega_r, row.shifts.omega_ro,
                                 row.shifts.delta_b};
      for (double v : derived) out += "," + format_significant(v);
    } else {
      out += ",,,,,";
    }
    out += ",";
    if (row.delta_b_numeric.has_value()) {
      out += format_significant(*row.delta_b_numeric);
    }
    if (row.report.has_value()) {
      out += "," + format_significant(row.report->max_leak_excited);
      out += "," + format_significant(row.report->max_leak_blocked);
      out += "," + format_significant(row.report->transfer_fidelity);
      out += ",";
      if (row.report->rabi_frequency_fit.has_value()) {
        out += format_significant(*row.report->rabi_frequency_fit);
      }
      out += row.report->regime_adiabatic ? ",true" : ",false";
      out += row.report->regime_blockade ? ",true" : ",false";
    } else {
      out += ",,,,,,";
    }
    std::string error = row.error;
    std::replace(error.begin(), error.end(), ',', ';');
    out += "," + error + "\n";
  }
  return out;
}

json sweep_row_json(const SweepRow& row, size_t index) {
  json entry;
  entry["index"] = index;
  add_params(entry, row.params);
  if (row.shifts_ok) {
    entry["eps1"] = row.shifts.eps1;
    entry["eps2"] = row.shifts.eps2;
    entry["omega_r"] = row.shifts.omega_r;
    entry["omega_ro"] = row.shifts.omega_ro;
    entry["delta_b"] = row.shifts.delta_b;
  }
  if (row.delta_b_numeric.has_value()) {
    entry["delta_b_numeric"] = *row.delta_b_numeric;
  }
  if (row.report.has_value()) add_blockade_metrics(entry, *row.report);
  if (!row.error.empty()) entry["error"] = row.error;
  return entry;
}

/// All dynamics scenarios funnel through here; returns the list of output
/// files (data files only; the manifest is appended by execute_run).
std::vector<std::pair<std::string, std::string>> run_scenario(
    const RunConfig& cfg, unsigned threads) {
  std::vector<std::pair<std::string, std::string>> files;
  const DriveParams& p = cfg.params;
  json report;
  report["scenario"] = to_string(cfg.scenario);

  switch (cfg.scenario) {
    case Scenario::single_atom_5lvl:
    case Scenario::collective_6lvl:
    case Scenario::effective_3lvl: {
      const bool collective =
          cfg.scenario == Scenario::collective_6lvl ||
          (cfg.scenario == Scenario::effective_3lvl &&
           cfg.effective_mode == ResonanceMode::collective);
      HamiltonianMatrix h;
      RoleMap roles;
      if (cfg.scenario == Scenario::single_atom_5lvl) {
        h = build_five_level(p);
        roles = default_role_map(SweepModel::five_level);
      } else if (cfg.scenario == Scenario::collective_6lvl) {
        h = build_collective_six(p);
        roles = default_role_map(SweepModel::collective_six);
      } else if (cfg.effective_mode == ResonanceMode::collective) {
        h = effective_three_level_collective(p, cfg.effective_coupling);
        roles = default_role_map(SweepModel::effective_collective);
      } else {
        h = effective_three_level_single(p, cfg.effective_form);
        roles = default_role_map(SweepModel::effective_single);
      }
      PropagationConfig prop = cfg.propagation;
      if (!(prop.t_max > 0.0)) prop.t_max = auto_t_max(p, collective);
      const QuantumState psi0 = make_basis_state(h.basis_labels, 0);
      const Trajectory traj = propagate(h, psi0, prop);
      files.emplace_back(trajectory_file_name("trajectory", cfg.output_format),
                         render_trajectory(traj, cfg.output_format));
      add_params(report, p);
      add_derived(report, p);
      add_blockade_metrics(report, blockade_report(traj, roles, &p));
      report["t_max"] = prop.t_max;
      report["n_steps"] = prop.n_steps;
      break;
    }

    case Scenario::full_ensemble_oracle:
    case Scenario::oracle_compare: {
      PropagationConfig prop = cfg.propagation;
      if (!(prop.t_max > 0.0)) prop.t_max = auto_t_max(p, true);
      prop.record_amplitudes = true;

      const HamiltonianMatrix h_full = build_full_ensemble(p, cfg.oracle_cap);
      const QuantumState psi0 = make_basis_state(h_full.basis_labels, 0);
      const Trajectory full_traj = propagate(h_full, psi0, prop);

      std::vector<CollectiveState> states;
      for (CollectiveLabel label : all_collective_labels()) {
        states.push_back(build_collective_state(label, p.n_atoms, cfg.oracle_cap));
      }
      const Trajectory projected = project_trajectory(full_traj, states);

      const Eigen::VectorXd symmetric =
          symmetric_subspace_population(full_traj, p.n_atoms);
      const double symmetry_residual = (1.0 - symmetric.array()).abs().maxCoeff();

      // Couplings from kept states to states the truncated model drops;
      // reported so the truncation error is visible, not silently zeroed.
      const auto state_of = [&states](CollectiveLabel label) -> const CollectiveState& {
        for (const auto& st : states) {
          if (st.label == label) return st;
        }
        throw std::logic_error("collective state not built");
      };
      const auto dropped = [&](CollectiveLabel a, CollectiveLabel b) {
        return std::abs(coupling_matrix_element(h_full, state_of(a), state_of(b)));
      };

      add_params(report, p);
      add_derived(report, p);
      report["t_max"] = prop.t_max;
      report["n_steps"] = prop.n_steps;
      report["max_symmetry_residual"] = symmetry_residual;
      report["dropped_coupling_g1_g2"] = dropped(CollectiveLabel::G2, CollectiveLabel::G1);
      report["dropped_coupling_g11_g2"] = dropped(CollectiveLabel::G2, CollectiveLabel::G11);
      report["dropped_coupling_g11_g21"] = dropped(CollectiveLabel::G21, CollectiveLabel::G11);
      report["dropped_coupling_g12_g21"] = dropped(CollectiveLabel::G21, CollectiveLabel::G12);

      if (cfg.scenario == Scenario::full_ensemble_oracle) {
        files.emplace_back(trajectory_file_name("trajectory", cfg.output_format),
                           render_trajectory(projected, cfg.output_format));
        RoleMap roles;
        roles.initial_index = 0;  // A
        roles.target_index = 2;   // C1
        roles.eliminated_indices = {1, 5, 7};  // G1, G11, G12
        roles.blocked_indices = {4};           // C2
        add_blockade_metrics(report, blockade_report(projected, roles, &p));
      } else {
        const HamiltonianMatrix h_six = build_collective_six(p);
        PropagationConfig prop_six = prop;
        prop_six.record_amplitudes = false;
        const QuantumState psi0_six = make_basis_state(h_six.basis_labels, 0);
        const Trajectory truncated = propagate(h_six, psi0_six, prop_six);

        files.emplace_back(
            trajectory_file_name("trajectory_full", cfg.output_format),
            render_trajectory(projected, cfg.output_format));
        files.emplace_back(
            trajectory_file_name("trajectory_truncated", cfg.output_format),
            render_trajectory(truncated, cfg.output_format));

        // Per-label max |P_full - P_truncated| over the shared labels, plus
        // how much of the full dynamics the kept six states capture at all.
        double min_kept = 1.0;
        for (Eigen::Index t = 0; t < projected.populations.rows(); ++t) {
          double kept = 0.0;
          for (const std::string& label : h_six.basis_labels) {
            for (size_t k = 0; k < projected.basis_labels.size(); ++k) {
              if (projected.basis_labels[k] == label) {
                kept += projected.populations(t, static_cast<Eigen::Index>(k));
              }
            }
          }
          min_kept = std::min(min_kept, kept);
        }
        report["min_kept_population"] = min_kept;
        for (size_t j = 0; j < h_six.basis_labels.size(); ++j) {
          const std::string& label = h_six.basis_labels[j];
          Eigen::Index proj_col = -1;
          for (size_t k = 0; k < projected.basis_labels.size(); ++k) {
            if (projected.basis_labels[k] == label) {
              proj_col = static_cast<Eigen::Index>(k);
            }
          }
          const double diff =
              (projected.populations.col(proj_col) -
               truncated.populations.col(static_cast<Eigen::Index>(j)))
                  .cwiseAbs()
                  .maxCoeff();
          std::string key = label;
          std::transform(key.begin(), key.end(), key.begin(), ::tolower);
          report["diff_max_p_" + key] = diff;
        }
      }
      break;
    }

    case Scenario::sweep: {
      std::vector<DriveParams> grid;
      grid.reserve(cfg.sweep_values.size());
      for (double value : cfg.sweep_values) {
        double omega1 = p.omega1;
        double omega2 = p.omega2;
        double delta = p.delta;
        double big_delta = p.big_delta;
        int n_atoms = p.n_atoms;
        if (cfg.sweep_axis == "omega1") omega1 = value;
        else if (cfg.sweep_axis == "omega2") omega2 = value;
        else if (cfg.sweep_axis == "delta") delta = value;
        else if (cfg.sweep_axis == "big_delta") big_delta = value;
        else if (cfg.sweep_axis == "n_atoms") n_atoms = static_cast<int>(value);
        DriveParams point = DriveParams::from_detunings(omega1, omega2, delta,
                                                        big_delta, n_atoms);
        if (cfg.resonance_big_delta && cfg.sweep_axis != "big_delta") {
          const ResonanceMode mode =
              cfg.sweep_model == SweepModel::five_level ||
                      cfg.sweep_model == SweepModel::effective_single
                  ? ResonanceMode::single_atom
                  : ResonanceMode::collective;
          point = DriveParams::from_detunings(
              omega1, omega2, delta, resonance_detuning(point, mode), n_atoms);
        }
        grid.push_back(point);
      }

      SweepOptions opts;
      opts.propagation = cfg.propagation;
      opts.auto_t_max = !(cfg.propagation.t_max > 0.0);
      opts.threads = threads;
      const std::vector<SweepRow> rows = sweep(grid, cfg.sweep_model, opts);

      if (cfg.output_format == OutputFormat::csv) {
        files.emplace_back("sweep.csv", render_sweep_csv(rows));
      } else {
        json table = json::array();
        for (size_t i = 0; i < rows.size(); ++i) {
          table.push_back(sweep_row_json(rows[i], i));
        }
        files.emplace_back("sweep.json", table.dump(2) + "\n");
      }

      size_t n_errors = 0;
      for (const auto& row : rows) {
        if (!row.error.empty()) ++n_errors;
      }
      report["axis"] = cfg.sweep_axis;
      report["n_points"] = rows.size();
      report["n_errors"] = n_errors;
      add_params(report, p);
      break;
    }
  }

  files.emplace_back("report.json", report.dump(2) + "\n");
  return files;
}

}  // namespace

int execute_run(const RunConfig& cfg0, const CliOverrides& overrides) {
  RunConfig cfg = cfg0;
  if (!overrides.out_dir.empty()) cfg.output_dir = overrides.out_dir;
  if (!overrides.format.empty()) {
    if (overrides.format == "csv") cfg.output_format = OutputFormat::csv;
    else if (overrides.format == "json") cfg.output_format = OutputFormat::json;
    else throw config_error("--format must be 'csv' or 'json'");
  }

  auto files = run_scenario(cfg, overrides.threads);
  files.emplace_back("manifest.json",
                     make_manifest(cfg, overrides, files).dump(2) + "\n");
  write_outputs(cfg.output_dir, files);
  return 0;
}

int execute_derive(const RunConfig& cfg, std::ostream& out) {
  json derived;
  derived["scenario"] = to_string(cfg.scenario);
  add_params(derived, cfg.params);
  add_derived(derived, cfg.params);
  out << derived.dump(2) << "\n";
  return 0;
}

int guarded_main(const std::function<int()>& body) {
  try {
    return body();
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const regime_error& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lsiib
