#pragma once

#include "lsiib/core.hpp"

namespace lsiib {

/// How to integrate the Schrödinger equation and on what grid. The grid has
/// n_steps sample points including both endpoints, so dt = t_max/(n_steps-1).
struct PropagationConfig {
  enum class Method { eigendecomposition, scaled_expm };

  double t_max = 0.0;
  int n_steps = 2000;
  Method method = Method::eigendecomposition;
  bool record_amplitudes = false;
};

/// Evolve psi0 under the time-independent Hermitian `h` and sample the
/// populations on a uniform grid. Both methods are exactly unitary up to
/// round-off: `eigendecomposition` applies exp(-iHt) through the spectral
/// decomposition (no step-size error at any t); `scaled_expm` builds the
/// one-step propagator exp(-iH dt) once by scaling-and-squaring and applies
/// it repeatedly. Norm is checked to stay within 1e-9 of 1 over the run.
Trajectory propagate(const HamiltonianMatrix& h, const QuantumState& psi0,
                     const PropagationConfig& cfg);

/// Populations at an arbitrary time inside the trajectory's range, linearly
/// interpolated between grid points. Throws std::invalid_argument when t is
/// outside [times.front(), times.back()].
Eigen::VectorXd populations_at(const Trajectory& traj, double t);

}  // namespace lsiib
