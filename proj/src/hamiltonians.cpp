#include "lsiib/hamiltonians.hpp"

#include <cmath>

namespace lsiib {

namespace {

void require_atom_count(int n_atoms, int minimum, const char* who) {
  if (n_atoms < minimum) {
    throw std::invalid_argument(std::string(who) + ": n_atoms must be >= " +
                                std::to_string(minimum));
  }
}

}  // namespace

std::vector<std::string> five_level_labels() {
  return {"1", "2", "3", "4", "5"};
}

std::vector<std::string> collective_six_labels() {
  return {"A", "G1", "C1", "G11", "C2", "G12"};
}

Eigen::Index full_ensemble_dimension(int n_atoms) {
  require_atom_count(n_atoms, 1, "full_ensemble_dimension");
  Eigen::Index dim = 1;
  for (int i = 0; i < n_atoms; ++i) dim *= 3;
  return dim;
}

std::string full_ensemble_label(int n_atoms, Eigen::Index index) {
  const Eigen::Index dim = full_ensemble_dimension(n_atoms);
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("full_ensemble_label: index out of range");
  }
  static const char kLevelChar[3] = {'a', 'g', 'c'};
  std::string label(static_cast<size_t>(n_atoms), 'a');
  Eigen::Index rem = index;
  for (int atom = n_atoms - 1; atom >= 0; --atom) {
    label[static_cast<size_t>(atom)] = kLevelChar[rem % 3];
    rem /= 3;
  }
  return label;
}

std::vector<std::string> full_ensemble_labels(int n_atoms) {
  const Eigen::Index dim = full_ensemble_dimension(n_atoms);
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    labels.push_back(full_ensemble_label(n_atoms, i));
  }
  return labels;
}

AtomLevel atom_level(int n_atoms, Eigen::Index index, int atom) {
  const Eigen::Index dim = full_ensemble_dimension(n_atoms);
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("atom_level: index out of range");
  }
  if (atom < 0 || atom >= n_atoms) {
    throw std::invalid_argument("atom_level: atom out of range");
  }
  Eigen::Index stride = 1;
  for (int i = 0; i < n_atoms - 1 - atom; ++i) stride *= 3;
  return static_cast<AtomLevel>((index / stride) % 3);
}

HamiltonianMatrix build_five_level(const DriveParams& p) {
  const double d = p.delta;
  const double bd = p.big_delta;
  HamiltonianMatrix h;
  h.basis_labels = five_level_labels();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  m.diagonal() << 0.5 * bd, -d, -0.5 * bd, -(d + bd), -1.5 * bd;
  const double coupling[4] = {0.5 * p.omega1, 0.5 * p.omega2, 0.5 * p.omega1,
                              0.5 * p.omega2};
  for (int i = 0; i < 4; ++i) {
    m(i, i + 1) = coupling[i];
    m(i + 1, i) = coupling[i];
  }
  h.entries = m.cast<std::complex<double>>();
  return h;
}

HamiltonianMatrix build_collective_six(const DriveParams& p) {
  require_atom_count(p.n_atoms, 3, "build_collective_six");
  const double d = p.delta;
  const double bd = p.big_delta;
  const double n = static_cast<double>(p.n_atoms);
  HamiltonianMatrix h;
  h.basis_labels = collective_six_labels();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
  m.diagonal() << 0.5 * bd, -d, -0.5 * bd, -(d + bd), -1.5 * bd, -(d + 2.0 * bd);
  const double coupling[5] = {
      std::sqrt(n) * 0.5 * p.omega1,       // A <-> G1
      0.5 * p.omega2,                      // G1 <-> C1 (N-independent)
      std::sqrt(n - 1.0) * 0.5 * p.omega1, // C1 <-> G11
      std::sqrt(2.0) * 0.5 * p.omega2,     // G11 <-> C2
      std::sqrt(n - 2.0) * 0.5 * p.omega1, // C2 <-> G12
  };
  for (int i = 0; i < 5; ++i) {
    m(i, i + 1) = coupling[i];
    m(i + 1, i) = coupling[i];
  }
  h.entries = m.cast<std::complex<double>>();
  return h;
}

HamiltonianMatrix build_full_ensemble(const DriveParams& p, int max_atoms) {
  const int n = p.n_atoms;
  require_atom_count(n, 1, "build_full_ensemble");
  if (n > max_atoms) {
    throw std::invalid_argument(
        "build_full_ensemble: n_atoms=" + std::to_string(n) +
        " exceeds the dimension cap (max_atoms=" + std::to_string(max_atoms) +
        ", dimension is 3^N)");
  }
  const Eigen::Index dim = full_ensemble_dimension(n);
  const double d = p.delta;
  const double bd = p.big_delta;
  // Per-atom level energies. The common offset distributes the ladder
  // diagonal evenly over atoms so that k-excitation symmetric states land
  // exactly on the truncated collective model's diagonal.
  const double e_a = 0.5 * bd / n;
  const double e_g = -d - 0.5 * bd * (n - 1) / n;
  const double e_c = -0.5 * bd - 0.5 * bd * (n - 1) / n;
  const double level_energy[3] = {e_a, e_g, e_c};

  HamiltonianMatrix h;
  h.basis_labels = full_ensemble_labels(n);
  h.entries = Eigen::MatrixXcd::Zero(dim, dim);

  std::vector<Eigen::Index> stride(static_cast<size_t>(n));
  Eigen::Index s = 1;
  for (int atom = n - 1; atom >= 0; --atom) {
    stride[static_cast<size_t>(atom)] = s;
    s *= 3;
  }

  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    double diag = 0.0;
    for (int atom = 0; atom < n; ++atom) {
      const Eigen::Index st = stride[static_cast<size_t>(atom)];
      const int level = static_cast<int>((idx / st) % 3);
      diag += level_energy[level];
      // Add each coupled pair once, from its lower level's side.
      if (level == 0) {  // a -> g on this atom
        const Eigen::Index j = idx + st;
        h.entries(idx, j) += 0.5 * p.omega1;
        h.entries(j, idx) += 0.5 * p.omega1;
      } else if (level == 1) {  // g -> c on this atom
        const Eigen::Index j = idx + st;
        h.entries(idx, j) += 0.5 * p.omega2;
        h.entries(j, idx) += 0.5 * p.omega2;
      }
    }
    h.entries(idx, idx) = diag;
  }
  return h;
}

}  // namespace lsiib
