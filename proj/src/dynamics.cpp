#include "lsiib/dynamics.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace lsiib {

Trajectory propagate(const HamiltonianMatrix& h, const QuantumState& psi0,
                     const PropagationConfig& cfg) {
  const Eigen::Index dim = h.dim();
  if (h.entries.cols() != dim ||
      static_cast<Eigen::Index>(h.basis_labels.size()) != dim) {
    throw std::invalid_argument("propagate: malformed Hamiltonian");
  }
  if (psi0.basis_labels != h.basis_labels) {
    throw std::invalid_argument(
        "propagate: state and Hamiltonian bases do not match");
  }
  if (psi0.amplitudes.size() != dim) {
    throw std::invalid_argument("propagate: state dimension mismatch");
  }
  if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("propagate: initial state is not normalized");
  }
  if (!is_hermitian(h)) {
    throw std::invalid_argument("propagate: Hamiltonian is not Hermitian");
  }
  if (!(cfg.t_max > 0.0)) {
    throw std::invalid_argument("propagate: t_max must be positive");
  }
  if (cfg.n_steps < 2) {
    throw std::invalid_argument("propagate: n_steps must be >= 2");
  }

  const Eigen::Index nt = cfg.n_steps;
  Trajectory traj;
  traj.basis_labels = h.basis_labels;
  traj.times = Eigen::VectorXd::LinSpaced(nt, 0.0, cfg.t_max);

  Eigen::MatrixXcd amps(nt, dim);
  const std::complex<double> minus_i(0.0, -1.0);

  if (cfg.method == PropagationConfig::Method::eigendecomposition) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("propagate: eigendecomposition failed");
    }
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXcd& evecs = solver.eigenvectors();
    const Eigen::VectorXcd c0 = evecs.adjoint() * psi0.amplitudes;
    // Row t of `phases` is exp(-i*lambda*t) .* c0; one dense product then
    // rotates all rows back to the computational basis at once.
    Eigen::MatrixXcd phases(nt, dim);
    for (Eigen::Index t = 0; t < nt; ++t) {
      phases.row(t) =
          ((minus_i * traj.times(t) * evals.array().cast<std::complex<double>>())
               .exp() *
           c0.array())
              .matrix()
              .transpose();
    }
    amps.noalias() = phases * evecs.transpose();
  } else {
    const double dt = cfg.t_max / static_cast<double>(nt - 1);
    const Eigen::MatrixXcd u = (minus_i * dt * h.entries).exp();
    Eigen::VectorXcd psi = psi0.amplitudes;
    amps.row(0) = psi.transpose();
    for (Eigen::Index t = 1; t < nt; ++t) {
      psi = u * psi;
      amps.row(t) = psi.transpose();
    }
  }

  traj.populations = amps.cwiseAbs2();
  const double norm_dev =
      (traj.populations.rowwise().sum().array() - 1.0).abs().maxCoeff();
  if (norm_dev > 1e-9) {
    throw std::runtime_error(
        "propagate: norm conservation violated (max deviation " +
        std::to_string(norm_dev) + ")");
  }
  if (cfg.record_amplitudes) {
    traj.amplitudes = std::move(amps);
  }
  return traj;
}

Eigen::VectorXd populations_at(const Trajectory& traj, double t) {
  const Eigen::Index nt = traj.times.size();
  if (nt < 1 || traj.populations.rows() != nt) {
    throw std::invalid_argument("populations_at: malformed trajectory");
  }
  const double t0 = traj.times(0);
  const double t1 = traj.times(nt - 1);
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  if (t < t0 - slack || t > t1 + slack) {
    throw std::invalid_argument("populations_at: time outside trajectory range");
  }
  const double tc = std::clamp(t, t0, t1);

  // Find k with times[k] <= tc <= times[k+1].
  Eigen::Index lo = 0;
  Eigen::Index hi = nt - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = lo + (hi - lo) / 2;
    if (traj.times(mid) <= tc) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (tc == traj.times(lo)) return traj.populations.row(lo);
  if (tc == traj.times(hi)) return traj.populations.row(hi);
  const double span = traj.times(hi) - traj.times(lo);
  const double frac = (tc - traj.times(lo)) / span;
  return (1.0 - frac) * traj.populations.row(lo).transpose() +
         frac * traj.populations.row(hi).transpose();
}

}  // namespace lsiib
