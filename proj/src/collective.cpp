#include "lsiib/collective.hpp"

#include <array>
#include <cmath>

namespace lsiib {

namespace {

struct LabelInfo {
  CollectiveLabel label;
  const char* name;
  int n_g;
  int n_c;
};

constexpr std::array<LabelInfo, 8> kLabelTable{{
    {CollectiveLabel::A, "A", 0, 0},
    {CollectiveLabel::G1, "G1", 1, 0},
    {CollectiveLabel::C1, "C1", 0, 1},
    {CollectiveLabel::G2, "G2", 2, 0},
    {CollectiveLabel::C2, "C2", 0, 2},
    {CollectiveLabel::G11, "G11", 1, 1},
    {CollectiveLabel::G21, "G21", 2, 1},
    {CollectiveLabel::G12, "G12", 1, 2},
}};

const LabelInfo& info_for(CollectiveLabel label) {
  for (const auto& info : kLabelTable) {
    if (info.label == label) return info;
  }
  throw std::invalid_argument("unknown collective label");
}

// Count of product states with the given numbers of g- and c-atoms:
// C(n, n_g) * C(n - n_g, n_c).
double occupation_multiplicity(int n, int n_g, int n_c) {
  auto binom = [](int a, int b) {
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r *= static_cast<double>(a - b + i) / i;
    return r;
  };
  return binom(n, n_g) * binom(n - n_g, n_c);
}

}  // namespace

std::string to_string(CollectiveLabel label) { return info_for(label).name; }

std::vector<CollectiveLabel> all_collective_labels() {
  std::vector<CollectiveLabel> labels;
  labels.reserve(kLabelTable.size());
  for (const auto& info : kLabelTable) labels.push_back(info.label);
  return labels;
}

std::pair<int, int> collective_occupation(CollectiveLabel label) {
  const LabelInfo& info = info_for(label);
  return {info.n_g, info.n_c};
}

CollectiveState build_collective_state(CollectiveLabel label, int n_atoms,
                                       int max_atoms) {
  const LabelInfo& info = info_for(label);
  const int flipped = info.n_g + info.n_c;
  if (n_atoms < flipped) {
    throw std::invalid_argument(
        std::string("build_collective_state: ") + info.name + " needs at least " +
        std::to_string(flipped) + " atoms, got " + std::to_string(n_atoms));
  }
  if (n_atoms < 1) {
    throw std::invalid_argument("build_collective_state: n_atoms must be >= 1");
  }
  if (n_atoms > max_atoms) {
    throw std::invalid_argument(
        "build_collective_state: n_atoms=" + std::to_string(n_atoms) +
        " exceeds the dimension cap (max_atoms=" + std::to_string(max_atoms) + ")");
  }
  const Eigen::Index dim = full_ensemble_dimension(n_atoms);
  const double amplitude =
      1.0 / std::sqrt(occupation_multiplicity(n_atoms, info.n_g, info.n_c));

  CollectiveState state;
  state.label = label;
  state.n_atoms = n_atoms;
  state.amplitudes = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    int count_g = 0;
    int count_c = 0;
    Eigen::Index rem = idx;
    for (int atom = 0; atom < n_atoms; ++atom) {
      const int level = static_cast<int>(rem % 3);
      rem /= 3;
      if (level == 1) ++count_g;
      if (level == 2) ++count_c;
    }
    if (count_g == info.n_g && count_c == info.n_c) {
      state.amplitudes(idx) = amplitude;
    }
  }
  return state;
}

std::complex<double> coupling_matrix_element(const HamiltonianMatrix& h_full,
                                             const CollectiveState& bra,
                                             const CollectiveState& ket) {
  if (bra.n_atoms != ket.n_atoms) {
    throw std::invalid_argument(
        "coupling_matrix_element: states have different atom counts");
  }
  if (h_full.dim() != bra.amplitudes.size() ||
      h_full.entries.cols() != ket.amplitudes.size()) {
    throw std::invalid_argument(
        "coupling_matrix_element: Hamiltonian and state dimensions differ");
  }
  return bra.amplitudes.dot(h_full.entries * ket.amplitudes);
}

std::complex<double> coupling_matrix_element(const CollectiveState& bra,
                                             const CollectiveState& ket,
                                             const DriveParams& p) {
  if (p.n_atoms != bra.n_atoms) {
    throw std::invalid_argument(
        "coupling_matrix_element: params and states have different atom counts");
  }
  const HamiltonianMatrix h = build_full_ensemble(p, bra.n_atoms);
  return coupling_matrix_element(h, bra, ket);
}

Trajectory project_trajectory(const Trajectory& full_traj,
                              const std::vector<CollectiveState>& states) {
  if (!full_traj.amplitudes.has_value()) {
    throw std::invalid_argument(
        "project_trajectory: trajectory lacks recorded amplitudes");
  }
  const Eigen::MatrixXcd& amps = *full_traj.amplitudes;
  const Eigen::Index nt = amps.rows();
  const Eigen::Index dim = amps.cols();
  const auto n_states = static_cast<Eigen::Index>(states.size());

  Eigen::MatrixXcd basis(dim, n_states);
  for (Eigen::Index k = 0; k < n_states; ++k) {
    const auto& st = states[static_cast<size_t>(k)];
    if (st.amplitudes.size() != dim) {
      throw std::invalid_argument(
          "project_trajectory: state dimension does not match the trajectory");
    }
    basis.col(k) = st.amplitudes;
  }

  Trajectory out;
  out.times = full_traj.times;
  out.basis_labels.reserve(static_cast<size_t>(n_states) + 1);
  for (const auto& st : states) out.basis_labels.push_back(to_string(st.label));
  out.basis_labels.push_back("residual");

  out.populations.resize(nt, n_states + 1);
  if (n_states > 0) {
    const Eigen::MatrixXcd overlaps = amps * basis.conjugate();
    out.populations.leftCols(n_states) = overlaps.cwiseAbs2();
  }
  for (Eigen::Index t = 0; t < nt; ++t) {
    double residual = 1.0 - out.populations.row(t).head(n_states).sum();
    if (residual < 0.0 && residual >= -1e-12) residual = 0.0;
    out.populations(t, n_states) = residual;
  }
  return out;
}

Eigen::VectorXd symmetric_subspace_population(const Trajectory& full_traj,
                                              int n_atoms) {
  if (!full_traj.amplitudes.has_value()) {
    throw std::invalid_argument(
        "symmetric_subspace_population: trajectory lacks recorded amplitudes");
  }
  const Eigen::MatrixXcd& amps = *full_traj.amplitudes;
  const Eigen::Index dim = amps.cols();
  if (dim != full_ensemble_dimension(n_atoms)) {
    throw std::invalid_argument(
        "symmetric_subspace_population: trajectory dimension does not match n_atoms");
  }

  // Occupation class of each product state: (count_g, count_c). The
  // symmetric subspace is spanned by one equal-weight vector per class, so
  // the projection reduces to per-class amplitude sums.
  const int n_classes = (n_atoms + 1) * (n_atoms + 1);
  std::vector<int> class_of(static_cast<size_t>(dim));
  std::vector<double> multiplicity(static_cast<size_t>(n_classes), 0.0);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    int count_g = 0;
    int count_c = 0;
    Eigen::Index rem = idx;
    for (int atom = 0; atom < n_atoms; ++atom) {
      const int level = static_cast<int>(rem % 3);
      rem /= 3;
      if (level == 1) ++count_g;
      if (level == 2) ++count_c;
    }
    const int cls = count_g * (n_atoms + 1) + count_c;
    class_of[static_cast<size_t>(idx)] = cls;
    multiplicity[static_cast<size_t>(cls)] += 1.0;
  }

  const Eigen::Index nt = amps.rows();
  Eigen::VectorXd population(nt);
  std::vector<std::complex<double>> acc(static_cast<size_t>(n_classes));
  for (Eigen::Index t = 0; t < nt; ++t) {
    std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      acc[static_cast<size_t>(class_of[static_cast<size_t>(idx)])] += amps(t, idx);
    }
    double total = 0.0;
    for (int cls = 0; cls < n_classes; ++cls) {
      const double m = multiplicity[static_cast<size_t>(cls)];
      if (m > 0.0) total += std::norm(acc[static_cast<size_t>(cls)]) / m;
    }
    population(t) = total;
  }
  return population;
}

}  // namespace lsiib
