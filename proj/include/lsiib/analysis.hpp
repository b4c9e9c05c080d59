#pragma once

#include "lsiib/core.hpp"
#include "lsiib/dynamics.hpp"
#include "lsiib/reduction.hpp"

namespace lsiib {

/// Maximum |omega_ro / delta_b| for the blockade-regime flag.
inline constexpr double kBlockadeRatioMax = 0.2;

/// Which basis index plays which role when a trajectory is summarized:
/// the initially populated state, the Raman-transfer target whose
/// oscillation is fitted, the adiabatically eliminated states (excited-state
/// leakage), and the blockaded states beyond the target.
struct RoleMap {
  Eigen::Index initial_index = 0;
  Eigen::Index target_index = 0;
  std::vector<Eigen::Index> eliminated_indices;
  std::vector<Eigen::Index> blocked_indices;
};

/// Quantitative summary of a blockade trajectory.
struct BlockadeReport {
  double max_leak_excited = 0.0;  ///< max over t of the eliminated-state population sum.
  double max_leak_blocked = 0.0;  ///< max over t of the blocked-state population sum.
  double transfer_fidelity = 0.0; ///< max over t of the target population.
  std::optional<double> rabi_frequency_fit;  ///< absent when the target is flat.
  bool regime_adiabatic = false;  ///< |delta| >= kAdiabaticRatio * max(omega1, omega2).
  bool regime_blockade = false;   ///< |omega_ro| <= kBlockadeRatioMax * |delta_b|.
};

/// Dominant nonzero angular frequency of `series` on the uniform grid
/// `times`: discrete spectral peak of the mean-removed data, refined by
/// local quadratic interpolation of the magnitude spectrum. Returns nullopt
/// for flat series (peak-to-peak < 1e-9) or grids too short to resolve a
/// peak.
std::optional<double> fit_dominant_frequency(const Eigen::VectorXd& times,
                                             const Eigen::VectorXd& series);

/// Summarize a trajectory under a role assignment. When `params` is given,
/// the regime flags are filled from it; otherwise they stay false. Pure:
/// identical inputs give identical reports.
BlockadeReport blockade_report(const Trajectory& traj, const RoleMap& roles,
                               const DriveParams* params = nullptr);

/// Which model a sweep point runs: the two ladder Hamiltonians or the two
/// closed-form effective three-level Hamiltonians.
enum class SweepModel { five_level, collective_six, effective_single, effective_collective };

/// The conventional role assignment for each sweep model (initial state is
/// the top of the ladder, target is the second ground/collective state).
RoleMap default_role_map(SweepModel model);

/// One sweep result row. `report` is present when the dynamics ran; the
/// numeric blockade shift is attempted for collective models with
/// n_atoms >= 3. Any per-point failures are recorded in `error` (semicolon
/// separated) instead of aborting the sweep.
struct SweepRow {
  DriveParams params;
  bool shifts_ok = false;
  LightShiftSet shifts;  ///< valid only when shifts_ok.
  std::optional<double> delta_b_numeric;
  std::optional<BlockadeReport> report;
  std::string error;
};

/// Propagation settings for sweep points. With auto_t_max (default), each
/// point runs for `periods` Raman periods of its own omega_r (single-atom
/// models) or omega_ro (collective models); otherwise propagation.t_max is
/// used verbatim.
struct SweepOptions {
  PropagationConfig propagation;
  bool auto_t_max = true;
  double periods = 3.0;
  unsigned threads = 0;  ///< 0 = hardware concurrency.
};

/// Run one model over a parameter grid. Rows come back in input order
/// regardless of thread count; points are independent and run in parallel.
std::vector<SweepRow> sweep(const std::vector<DriveParams>& grid,
                            SweepModel model, const SweepOptions& opts = {});

}  // namespace lsiib
