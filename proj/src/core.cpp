#include "lsiib/core.hpp"

namespace lsiib {

namespace {

void validate_common(double omega1, double omega2, int n_atoms) {
  if (!(omega1 >= 0.0)) {
    throw std::invalid_argument("DriveParams: omega1 must be >= 0 (couplings are real)");
  }
  if (!(omega2 >= 0.0)) {
    throw std::invalid_argument("DriveParams: omega2 must be >= 0 (couplings are real)");
  }
  if (n_atoms < 1) {
    throw std::invalid_argument("DriveParams: n_atoms must be >= 1");
  }
}

}  // namespace

DriveParams DriveParams::from_legs(double omega1, double omega2, double delta1,
                                   double delta2, int n_atoms) {
  validate_common(omega1, omega2, n_atoms);
  DriveParams p;
  p.omega1 = omega1;
  p.omega2 = omega2;
  p.delta1 = delta1;
  p.delta2 = delta2;
  p.delta = 0.5 * (delta1 + delta2);
  p.big_delta = delta1 - delta2;
  p.n_atoms = n_atoms;
  return p;
}

DriveParams DriveParams::from_detunings(double omega1, double omega2,
                                        double delta, double big_delta,
                                        int n_atoms) {
  validate_common(omega1, omega2, n_atoms);
  DriveParams p;
  p.omega1 = omega1;
  p.omega2 = omega2;
  p.delta = delta;
  p.big_delta = big_delta;
  p.delta1 = delta + 0.5 * big_delta;
  p.delta2 = delta - 0.5 * big_delta;
  p.n_atoms = n_atoms;
  return p;
}

std::pair<double, double> derived_detunings(const DriveParams& p) {
  return {p.delta, p.big_delta};
}

bool is_hermitian(const HamiltonianMatrix& h, double rtol) {
  const Eigen::Index n = h.entries.rows();
  if (h.entries.cols() != n) return false;
  if (static_cast<Eigen::Index>(h.basis_labels.size()) != n) return false;
  if (n == 0) return false;
  const double scale = std::max(1.0, h.entries.cwiseAbs().maxCoeff());
  const double dev = (h.entries - h.entries.adjoint()).cwiseAbs().maxCoeff();
  return dev <= rtol * scale;
}

QuantumState make_basis_state(std::vector<std::string> labels,
                              Eigen::Index index) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (index < 0 || index >= n) {
    throw std::invalid_argument("make_basis_state: index out of range");
  }
  QuantumState psi;
  psi.basis_labels = std::move(labels);
  psi.amplitudes = Eigen::VectorXcd::Zero(n);
  psi.amplitudes(index) = 1.0;
  return psi;
}

}  // namespace lsiib
