#pragma once

#include "lsiib/core.hpp"

namespace lsiib {

/// Basis labels "1".."5" of the single-atom five-level Raman ladder, in the
/// row/column order used by build_five_level.
std::vector<std::string> five_level_labels();

/// Basis labels of the truncated collective ladder, in the row/column order
/// used by build_collective_six: A, G1, C1, G11, C2, G12.
std::vector<std::string> collective_six_labels();

/// Per-atom levels of the lambda system underlying the ensemble builder:
/// ground |a>, optically excited |g>, second ground |c>.
enum class AtomLevel { a = 0, g = 1, c = 2 };

/// Dimension 3^n of the n-atom product basis.
Eigen::Index full_ensemble_dimension(int n_atoms);

/// Label of product state `index`: one character per atom ('a'/'g'/'c'),
/// atom 0 leftmost. Indices enumerate labels lexicographically, i.e. base-3
/// with atom 0 as the most significant digit.
std::string full_ensemble_label(int n_atoms, Eigen::Index index);

/// All 3^n product-state labels in index order.
std::vector<std::string> full_ensemble_labels(int n_atoms);

/// Level of `atom` (0-based) in product state `index`.
AtomLevel atom_level(int n_atoms, Eigen::Index index, int atom);

/// Single-atom five-level Hamiltonian in the rotating frame: diagonal
/// (D/2, -d, -D/2, -(d+D), -3D/2) with d = delta, D = big_delta, and
/// tridiagonal couplings omega1/2 on (1,2),(3,4) and omega2/2 on (2,3),(4,5).
HamiltonianMatrix build_five_level(const DriveParams& p);

/// Truncated six-level collective Hamiltonian: diagonal (D/2, -d, -D/2,
/// -(d+D), -3D/2, -(d+2D)) and tridiagonal couplings sqrt(N)*omega1/2,
/// omega2/2, sqrt(N-1)*omega1/2, sqrt(2)*omega2/2, sqrt(N-2)*omega1/2.
/// Requires n_atoms >= 3 (the last coupling references N-2).
HamiltonianMatrix build_collective_six(const DriveParams& p);

/// Brute-force N-atom Hamiltonian: the sum over atoms of a three-level
/// lambda Hamiltonian embedded by identity on all other atoms, with per-atom
/// couplings omega1/2 on a<->g and omega2/2 on g<->c. The per-atom level
/// energies are chosen so that the restriction to the symmetric excitation
/// ladder reproduces build_collective_six's diagonal entrywise (the additive
/// constant is fixed by <all-a|H|all-a> = big_delta/2).
/// Requires 1 <= n_atoms <= max_atoms (memory guard; the dimension is 3^N).
HamiltonianMatrix build_full_ensemble(const DriveParams& p, int max_atoms = 8);

}  // namespace lsiib
