#pragma once

#include "lsiib/core.hpp"

namespace lsiib {

/// Minimum |delta| / max(omega1, omega2) ratio for the static elimination
/// formulas to be meaningful; used by preconditions and regime flags.
inline constexpr double kAdiabaticRatio = 5.0;

/// Which basis states to keep and which to fold away, plus the fold order:
/// Order::first keeps only the eliminated states' diagonal (independent
/// energy denominators), Order::second inverts the full eliminated block
/// (Schur complement). The two coincide whenever the eliminated block is
/// diagonal, which holds for every ladder Hamiltonian in this library.
struct EliminationSpec {
  enum class Order { first, second };

  std::vector<Eigen::Index> kept_indices;
  std::vector<Eigen::Index> eliminated_indices;
  Order order = Order::second;
  /// Warn (not fail) when min |H_ee| < dominance_ratio * max coupling.
  double dominance_ratio = kAdiabaticRatio;
};

/// First-order light shifts, Raman-Rabi frequencies, and the blockade shift.
/// Throws regime_error when delta == 0 (elimination denominators vanish).
LightShiftSet light_shifts_first_order(const DriveParams& p);

/// Static adiabatic elimination: H_eff = H_kk - H_ke * H_ee^-1 * H_ek on the
/// kept states. The result is explicitly symmetrized so it stays Hermitian
/// under floating point. When the eliminated diagonal fails to dominate the
/// couplings by spec.dominance_ratio, a human-readable note is appended to
/// `warnings` (if given) and the computation proceeds — callers probe regime
/// boundaries on purpose. Throws regime_error if the eliminated block is not
/// invertible.
HamiltonianMatrix eliminate(const HamiltonianMatrix& h,
                            const EliminationSpec& spec,
                            std::vector<std::string>* warnings = nullptr);

/// Closed-form single-atom effective three-level Hamiltonian on {1, 3, 5}.
/// `shifted` returns the resonance form valid at big_delta = eps2 with the
/// common energy (big_delta/2 + eps1) subtracted: diag(0, 0, -(eps1+eps2))
/// with couplings omega_r/2. `unshifted` keeps the general-big_delta form:
/// diag(D/2 + eps1, -D/2 + eps1 + eps2, -3D/2 + eps2).
enum class SingleEffectiveForm { shifted, unshifted };
HamiltonianMatrix effective_three_level_single(
    const DriveParams& p, SingleEffectiveForm form = SingleEffectiveForm::shifted);

/// Closed-form collective effective three-level Hamiltonian on {A, C1, C2}
/// at the collective resonance, zero of energy shifted to the A/C1 pair:
/// diag(0, 0, delta_b) with couplings omega_ro/2 on (A,C1) and, on (C1,C2),
/// either the large-N value omega_ro/sqrt(2) or the exact finite-N value
/// sqrt(2(N-1)/N)*omega_ro/2. Requires n_atoms >= 3.
enum class CollectiveCoupling { large_n, exact };
HamiltonianMatrix effective_three_level_collective(
    const DriveParams& p, CollectiveCoupling coupling = CollectiveCoupling::large_n);

/// Two-photon detuning big_delta that makes the first Raman step resonant at
/// first order: eps2 for the single-atom ladder, eps2 - eps1 for the
/// collective ladder (zeroes the dressed A/C1 splitting).
enum class ResonanceMode { single_atom, collective };
double resonance_detuning(const DriveParams& p, ResonanceMode mode);

/// Second-order blockade shift (eps_C2 - eps_C1) - (eps_C1 - eps_A) computed
/// numerically from exact 2x2 dressed-state eigenvalues of the six-level
/// ladder, one eliminated neighbor at a time. Converges to the analytic
/// delta_b as delta grows at fixed couplings. Throws regime_error when the
/// adiabatic precondition |delta| >= kAdiabaticRatio * max(omega) fails or
/// when a level gap is too small to track the dressed branch.
double blockade_shift_numeric(const DriveParams& p);

}  // namespace lsiib
