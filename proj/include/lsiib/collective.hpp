#pragma once

#include "lsiib/core.hpp"
#include "lsiib/hamiltonians.hpp"

namespace lsiib {

/// The named symmetric (Dicke) states of the collective ladder. G2 and G21
/// are not part of the truncated six-level model but are built anyway so the
/// couplings the truncation drops can be measured rather than assumed small.
enum class CollectiveLabel { A, G1, C1, G2, C2, G11, G21, G12 };

std::string to_string(CollectiveLabel label);

/// All eight labels, in ladder order A, G1, C1, G2, C2, G11, G21, G12.
std::vector<CollectiveLabel> all_collective_labels();

/// Numbers of atoms moved to |g> and |c> in the label's occupation pattern
/// (every remaining atom sits in |a>).
std::pair<int, int> collective_occupation(CollectiveLabel label);

/// A symmetric collective state expanded over the full 3^N product basis:
/// equal real amplitude 1/sqrt(multiplicity) on every product state of its
/// occupation class, zero elsewhere.
struct CollectiveState {
  CollectiveLabel label;
  int n_atoms = 0;
  Eigen::VectorXcd amplitudes;
};

/// Build the normalized symmetric superposition for `label` over n_atoms
/// three-level atoms. Requires n_atoms >= (flipped atom count of the label)
/// and n_atoms <= max_atoms (memory guard).
CollectiveState build_collective_state(CollectiveLabel label, int n_atoms,
                                       int max_atoms = 8);

/// <bra| h_full |ket> for a pre-built full-ensemble Hamiltonian.
std::complex<double> coupling_matrix_element(const HamiltonianMatrix& h_full,
                                             const CollectiveState& bra,
                                             const CollectiveState& ket);

/// Convenience overload that builds the full-ensemble Hamiltonian for `p`
/// internally. Prefer the pre-built overload inside loops: the matrix is
/// dense and large (3^N square).
std::complex<double> coupling_matrix_element(const CollectiveState& bra,
                                             const CollectiveState& ket,
                                             const DriveParams& p);

/// Project a full-ensemble trajectory (with recorded amplitudes) onto the
/// given collective states. The result has one population column per state,
/// in input order, plus a trailing "residual" column holding the population
/// outside the listed states; columns sum to 1 like any trajectory.
Trajectory project_trajectory(const Trajectory& full_traj,
                              const std::vector<CollectiveState>& states);

/// Per-time population inside the permutation-symmetric subspace of the
/// full-ensemble trajectory (requires recorded amplitudes). The symmetric
/// drive Hamiltonian preserves this sector, so a symmetric initial state
/// should keep the returned values at 1 up to round-off.
Eigen::VectorXd symmetric_subspace_population(const Trajectory& full_traj,
                                              int n_atoms);

}  // namespace lsiib
