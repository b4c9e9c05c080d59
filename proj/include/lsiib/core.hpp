#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lsiib {

/// Thrown when an input configuration is malformed or inconsistent.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the requested parameters fall outside the validity regime of a
/// numerical method (adiabatic elimination, dressed-state tracking, ...).
class regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical drive parameters: the Rabi frequencies of the two Raman legs,
/// the one-photon detunings, and the ensemble size. All frequencies are
/// angular and share one arbitrary reference unit (hbar = 1 throughout;
/// only ratios matter physically).
///
/// Both detuning conventions are stored explicitly so that whichever pair a
/// factory received is read back bit-exactly: the per-leg pair (delta1,
/// delta2), or the mean detuning delta = (delta1+delta2)/2 together with the
/// two-photon detuning big_delta = delta1-delta2. The other pair is derived
/// once, inside the factory, and downstream code never re-derives it.
struct DriveParams {
  double omega1 = 0.0;     ///< Rabi frequency of leg 1 (>= 0; couplings are real).
  double omega2 = 0.0;     ///< Rabi frequency of leg 2 (>= 0; couplings are real).
  double delta1 = 0.0;     ///< One-photon detuning of leg 1.
  double delta2 = 0.0;     ///< One-photon detuning of leg 2.
  double delta = 0.0;      ///< Mean one-photon detuning (delta1+delta2)/2.
  double big_delta = 0.0;  ///< Two-photon detuning delta1-delta2.
  int n_atoms = 1;         ///< Ensemble size N (used by the collective builders).

  /// Build from per-leg detunings; delta and big_delta are derived here once.
  static DriveParams from_legs(double omega1, double omega2, double delta1,
                               double delta2, int n_atoms = 1);

  /// Build from (delta, big_delta); the per-leg detunings are derived here
  /// once, so delta1 == delta + big_delta/2 and delta2 == delta - big_delta/2
  /// hold bit-exactly for params constructed this way.
  static DriveParams from_detunings(double omega1, double omega2, double delta,
                                    double big_delta, int n_atoms = 1);
};

/// The (delta, big_delta) pair of `p` — stored values, never re-derived.
std::pair<double, double> derived_detunings(const DriveParams& p);

/// Dense Hermitian Hamiltonian over a named basis, in angular-frequency
/// units (hbar = 1). Builders in this library produce exactly real-symmetric
/// matrices; the complex scalar type keeps downstream algebra general.
struct HamiltonianMatrix {
  std::vector<std::string> basis_labels;
  Eigen::MatrixXcd entries;

  Eigen::Index dim() const { return entries.rows(); }
};

/// True if `h` is square, label count matches the dimension, and the matrix
/// is Hermitian within `rtol` relative to its largest entry magnitude.
bool is_hermitian(const HamiltonianMatrix& h, double rtol = 1e-12);

/// Normalized complex amplitude vector over a named basis.
struct QuantumState {
  std::vector<std::string> basis_labels;
  Eigen::VectorXcd amplitudes;
};

/// Unit basis state |index> over the given labels.
QuantumState make_basis_state(std::vector<std::string> labels,
                              Eigen::Index index);

/// Time grid plus per-time populations (row t holds |amplitude|^2 for every
/// basis state at times[t]); full amplitudes are kept only when requested.
struct Trajectory {
  std::vector<std::string> basis_labels;
  Eigen::VectorXd times;
  Eigen::MatrixXd populations;
  std::optional<Eigen::MatrixXcd> amplitudes;
};

/// First-order light shifts, Raman-Rabi frequencies, and the blockade shift
/// for a given set of drive parameters.
struct LightShiftSet {
  double eps1 = 0.0;      ///< Single-atom shift of leg 1: omega1^2/(4*delta).
  double eps2 = 0.0;      ///< Single-atom shift of leg 2: omega2^2/(4*delta).
  double eps_a = 0.0;     ///< Collective ground-ladder shift: N*eps1.
  double eps_c1 = 0.0;    ///< One-excitation shift: (N-1)*eps1 + eps2.
  double eps_c2 = 0.0;    ///< Two-excitation shift: (N-2)*eps1 + 2*eps2.
  double omega_r = 0.0;   ///< Raman-Rabi frequency omega1*omega2/(2*delta).
  double omega_ro = 0.0;  ///< Collective Raman-Rabi frequency sqrt(N)*omega_r.
  double delta_b = 0.0;   ///< Blockade shift -(omega1^4+omega2^4)/(8*delta^3).
};

}  // namespace lsiib
