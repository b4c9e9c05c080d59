#include "lsiib/analysis.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "lsiib/hamiltonians.hpp"

namespace lsiib {

namespace {

double column_sum_max(const Eigen::MatrixXd& populations,
                      const std::vector<Eigen::Index>& columns) {
  if (columns.empty()) return 0.0;
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(populations.rows());
  for (Eigen::Index col : columns) {
    if (col < 0 || col >= populations.cols()) {
      throw std::invalid_argument("blockade_report: role index out of range");
    }
    sums += populations.col(col);
  }
  return sums.maxCoeff();
}

}  // namespace

std::optional<double> fit_dominant_frequency(const Eigen::VectorXd& times,
                                             const Eigen::VectorXd& series) {
  const Eigen::Index n = series.size();
  if (times.size() != n) {
    throw std::invalid_argument(
        "fit_dominant_frequency: times and series lengths differ");
  }
  if (n < 8) return std::nullopt;
  if (series.maxCoeff() - series.minCoeff() < 1e-9) return std::nullopt;

  const Eigen::VectorXd x = series.array() - series.mean();
  const double dt = times(1) - times(0);
  const double total = static_cast<double>(n) * dt;

  // Magnitude spectrum up to the folding bin; the peak is searched strictly
  // inside so both quadratic-interpolation neighbors exist.
  const Eigen::Index k_max = n / 2;
  Eigen::VectorXd magnitude(k_max + 1);
  magnitude(0) = std::abs(x.sum());
  for (Eigen::Index k = 1; k <= k_max; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    const std::complex<double> w(std::cos(angle), std::sin(angle));
    std::complex<double> acc(0.0, 0.0);
    std::complex<double> cur(1.0, 0.0);
    for (Eigen::Index j = 0; j < n; ++j) {
      acc += x(j) * cur;
      cur *= w;
    }
    magnitude(k) = std::abs(acc);
  }

  Eigen::Index k0 = 1;
  for (Eigen::Index k = 2; k < k_max; ++k) {
    if (magnitude(k) > magnitude(k0)) k0 = k;
  }
  if (k_max < 2) return std::nullopt;

  const double a = magnitude(k0 - 1);
  const double b = magnitude(k0);
  const double c = magnitude(k0 + 1);
  const double denom = a - 2.0 * b + c;
  double shift = denom == 0.0 ? 0.0 : 0.5 * (a - c) / denom;
  shift = std::clamp(shift, -0.5, 0.5);
  return 2.0 * std::numbers::pi * (static_cast<double>(k0) + shift) / total;
}

BlockadeReport blockade_report(const Trajectory& traj, const RoleMap& roles,
                               const DriveParams* params) {
  const Eigen::Index n_cols = traj.populations.cols();
  if (traj.populations.rows() < 2 || n_cols < 1) {
    throw std::invalid_argument("blockade_report: trajectory too short");
  }
  if (roles.target_index < 0 || roles.target_index >= n_cols ||
      roles.initial_index < 0 || roles.initial_index >= n_cols) {
    throw std::invalid_argument("blockade_report: role index out of range");
  }

  BlockadeReport report;
  report.max_leak_excited =
      column_sum_max(traj.populations, roles.eliminated_indices);
  report.max_leak_blocked =
      column_sum_max(traj.populations, roles.blocked_indices);
  report.transfer_fidelity = traj.populations.col(roles.target_index).maxCoeff();
  report.rabi_frequency_fit =
      fit_dominant_frequency(traj.times, traj.populations.col(roles.target_index));

  if (params != nullptr) {
    const double max_omega = std::max(params->omega1, params->omega2);
    report.regime_adiabatic =
        params->delta != 0.0 &&
        (max_omega == 0.0 || std::abs(params->delta) >= kAdiabaticRatio * max_omega);
    if (params->delta != 0.0) {
      const LightShiftSet s = light_shifts_first_order(*params);
      report.regime_blockade =
          s.delta_b != 0.0 &&
          std::abs(s.omega_ro) <= kBlockadeRatioMax * std::abs(s.delta_b);
    }
  }
  return report;
}

RoleMap default_role_map(SweepModel model) {
  switch (model) {
    case SweepModel::five_level:
      return {.initial_index = 0, .target_index = 2,
              .eliminated_indices = {1, 3}, .blocked_indices = {4}};
    case SweepModel::collective_six:
      return {.initial_index = 0, .target_index = 2,
              .eliminated_indices = {1, 3, 5}, .blocked_indices = {4}};
    case SweepModel::effective_single:
    case SweepModel::effective_collective:
      return {.initial_index = 0, .target_index = 1,
              .eliminated_indices = {}, .blocked_indices = {2}};
  }
  throw std::invalid_argument("default_role_map: unknown model");
}

namespace {

SweepRow run_sweep_point(const DriveParams& p, SweepModel model,
                         const SweepOptions& opts) {
  SweepRow row;
  row.params = p;
  auto note = [&row](const std::string& msg) {
    if (!row.error.empty()) row.error += "; ";
    row.error += msg;
  };

  try {
    row.shifts = light_shifts_first_order(p);
    row.shifts_ok = true;
  } catch (const std::exception& e) {
    note(e.what());
  }

  const bool collective = model == SweepModel::collective_six ||
                          model == SweepModel::effective_collective;
  if (collective && p.n_atoms >= 3) {
    try {
      row.delta_b_numeric = blockade_shift_numeric(p);
    } catch (const std::exception& e) {
      note(e.what());
    }
  }

  try {
    HamiltonianMatrix h;
    switch (model) {
      case SweepModel::five_level:
        h = build_five_level(p);
        break;
      case SweepModel::collective_six:
        h = build_collective_six(p);
        break;
      case SweepModel::effective_single:
        h = effective_three_level_single(p);
        break;
      case SweepModel::effective_collective:
        h = effective_three_level_collective(p);
        break;
    }
    PropagationConfig cfg = opts.propagation;
    if (opts.auto_t_max) {
      if (!row.shifts_ok) {
        throw regime_error("sweep: cannot infer t_max without light shifts");
      }
      const double raman = collective ? row.shifts.omega_ro : row.shifts.omega_r;
      if (raman == 0.0) {
        throw regime_error(
            "sweep: cannot infer t_max (Raman-Rabi frequency is zero)");
      }
      cfg.t_max = opts.periods * 2.0 * std::numbers::pi / std::abs(raman);
    }
    const QuantumState psi0 = make_basis_state(h.basis_labels, 0);
    const Trajectory traj = propagate(h, psi0, cfg);
    row.report = blockade_report(traj, default_role_map(model), &p);
  } catch (const std::exception& e) {
    note(e.what());
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<DriveParams>& grid,
                            SweepModel model, const SweepOptions& opts) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep: parameter grid is empty");
  }
  std::vector<SweepRow> rows(grid.size());

  unsigned threads = opts.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));

  if (threads <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) {
      rows[i] = run_sweep_point(grid[i], model, opts);
    }
    return rows;
  }

  // Independent points, deterministic placement: workers pull the next index
  // from a shared counter and write only their own row.
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
        rows[i] = run_sweep_point(grid[i], model, opts);
      }
    });
  }
  for (auto& worker : pool) worker.join();
  return rows;
}

}  // namespace lsiib
