#include "lsiib/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsiib/hamiltonians.hpp"

namespace lsiib {

namespace {

void require_nonzero_delta(const DriveParams& p, const char* who) {
  if (p.delta == 0.0) {
    throw regime_error(std::string(who) +
                       ": delta = 0 is outside the adiabatic regime "
                       "(elimination denominators vanish)");
  }
}

}  // namespace

LightShiftSet light_shifts_first_order(const DriveParams& p) {
  require_nonzero_delta(p, "light_shifts_first_order");
  const double n = static_cast<double>(p.n_atoms);
  LightShiftSet s;
  s.eps1 = p.omega1 * p.omega1 / (4.0 * p.delta);
  s.eps2 = p.omega2 * p.omega2 / (4.0 * p.delta);
  s.eps_a = n * s.eps1;
  s.eps_c1 = (n - 1.0) * s.eps1 + s.eps2;
  s.eps_c2 = (n - 2.0) * s.eps1 + 2.0 * s.eps2;
  s.omega_r = p.omega1 * p.omega2 / (2.0 * p.delta);
  s.omega_ro = std::sqrt(n) * s.omega_r;
  const double om1_sq = p.omega1 * p.omega1;
  const double om2_sq = p.omega2 * p.omega2;
  s.delta_b = -(om1_sq * om1_sq + om2_sq * om2_sq) /
              (8.0 * p.delta * p.delta * p.delta);
  return s;
}

HamiltonianMatrix eliminate(const HamiltonianMatrix& h,
                            const EliminationSpec& spec,
                            std::vector<std::string>* warnings) {
  const Eigen::Index dim = h.dim();
  if (h.entries.cols() != dim ||
      static_cast<Eigen::Index>(h.basis_labels.size()) != dim) {
    throw std::invalid_argument("eliminate: malformed Hamiltonian");
  }
  const auto& kept = spec.kept_indices;
  const auto& gone = spec.eliminated_indices;
  if (static_cast<Eigen::Index>(kept.size() + gone.size()) != dim) {
    throw std::invalid_argument(
        "eliminate: kept and eliminated indices must partition the basis");
  }
  std::vector<char> seen(static_cast<size_t>(dim), 0);
  for (const auto list : {&kept, &gone}) {
    for (Eigen::Index idx : *list) {
      if (idx < 0 || idx >= dim || seen[static_cast<size_t>(idx)]) {
        throw std::invalid_argument(
            "eliminate: kept and eliminated indices must partition the basis");
      }
      seen[static_cast<size_t>(idx)] = 1;
    }
  }
  if (gone.empty()) {
    HamiltonianMatrix out;
    out.basis_labels = h.basis_labels;
    out.entries = h.entries;
    return out;
  }

  const auto nk = static_cast<Eigen::Index>(kept.size());
  const auto ne = static_cast<Eigen::Index>(gone.size());
  Eigen::MatrixXcd hkk(nk, nk), hke(nk, ne), hek(ne, nk), hee(ne, ne);
  for (Eigen::Index i = 0; i < nk; ++i) {
    for (Eigen::Index j = 0; j < nk; ++j) hkk(i, j) = h.entries(kept[i], kept[j]);
    for (Eigen::Index j = 0; j < ne; ++j) hke(i, j) = h.entries(kept[i], gone[j]);
  }
  for (Eigen::Index i = 0; i < ne; ++i) {
    for (Eigen::Index j = 0; j < nk; ++j) hek(i, j) = h.entries(gone[i], kept[j]);
    for (Eigen::Index j = 0; j < ne; ++j) hee(i, j) = h.entries(gone[i], gone[j]);
  }

  // Dominance check: the eliminated diagonal should exceed every coupling
  // touching an eliminated state by spec.dominance_ratio. A violation only
  // warns — probing the regime boundary is a legitimate use.
  double max_coupling = 0.0;
  for (Eigen::Index i = 0; i < ne; ++i) {
    for (Eigen::Index j = 0; j < nk; ++j) {
      max_coupling = std::max(max_coupling, std::abs(hke(j, i)));
    }
    for (Eigen::Index j = 0; j < ne; ++j) {
      if (i != j) max_coupling = std::max(max_coupling, std::abs(hee(i, j)));
    }
  }
  const double min_diag = hee.diagonal().cwiseAbs().minCoeff();
  if (min_diag < spec.dominance_ratio * max_coupling && warnings != nullptr) {
    warnings->push_back(
        "eliminate: eliminated diagonal does not dominate the couplings "
        "(min |H_ee| = " + std::to_string(min_diag) + " < " +
        std::to_string(spec.dominance_ratio) +
        " * max coupling = " + std::to_string(max_coupling) + ")");
  }

  if (spec.order == EliminationSpec::Order::first) {
    // Evaluate the diagonal before assigning: hee.diagonal() aliases hee,
    // and dense-from-diagonal assignment zero-fills the destination first.
    const Eigen::VectorXcd hee_diag = hee.diagonal();
    hee = hee_diag.asDiagonal();
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(hee);
  if (!lu.isInvertible()) {
    throw regime_error("eliminate: eliminated block not invertible");
  }

  Eigen::MatrixXcd heff = hkk - hke * lu.solve(hek);
  // The Schur complement is Hermitian in exact arithmetic; symmetrize away
  // the O(ulp) asymmetry the two chained products leave behind.
  heff = 0.5 * (heff + heff.adjoint()).eval();

  HamiltonianMatrix out;
  out.basis_labels.reserve(static_cast<size_t>(nk));
  for (Eigen::Index i = 0; i < nk; ++i) {
    out.basis_labels.push_back(h.basis_labels[static_cast<size_t>(kept[i])]);
  }
  out.entries = std::move(heff);
  return out;
}

HamiltonianMatrix effective_three_level_single(const DriveParams& p,
                                               SingleEffectiveForm form) {
  const LightShiftSet s = light_shifts_first_order(p);
  HamiltonianMatrix h;
  h.basis_labels = {"1", "3", "5"};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = m(1, 0) = 0.5 * s.omega_r;
  m(1, 2) = m(2, 1) = 0.5 * s.omega_r;
  if (form == SingleEffectiveForm::shifted) {
    // Resonance form: big_delta = eps2 assumed, common energy
    // (big_delta/2 + eps1) subtracted.
    m(2, 2) = -(s.eps1 + s.eps2);
  } else {
    const double bd = p.big_delta;
    m(0, 0) = 0.5 * bd + s.eps1;
    m(1, 1) = -0.5 * bd + s.eps1 + s.eps2;
    m(2, 2) = -1.5 * bd + s.eps2;
  }
  h.entries = m.cast<std::complex<double>>();
  return h;
}

HamiltonianMatrix effective_three_level_collective(const DriveParams& p,
                                                   CollectiveCoupling coupling) {
  if (p.n_atoms < 3) {
    throw std::invalid_argument(
        "effective_three_level_collective: n_atoms must be >= 3");
  }
  const LightShiftSet s = light_shifts_first_order(p);
  const double n = static_cast<double>(p.n_atoms);
  const double upper =
      coupling == CollectiveCoupling::exact
          ? std::sqrt(2.0 * (n - 1.0) / n) * 0.5 * s.omega_ro
          : s.omega_ro / std::numbers::sqrt2;
  HamiltonianMatrix h;
  h.basis_labels = {"A", "C1", "C2"};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = m(1, 0) = 0.5 * s.omega_ro;
  m(1, 2) = m(2, 1) = upper;
  m(2, 2) = s.delta_b;  // the residual second-order detuning of the C2 step
  h.entries = m.cast<std::complex<double>>();
  return h;
}

double resonance_detuning(const DriveParams& p, ResonanceMode mode) {
  const LightShiftSet s = light_shifts_first_order(p);
  switch (mode) {
    case ResonanceMode::single_atom:
      return s.eps2;
    case ResonanceMode::collective:
      // Zeroes the first-order A/C1 splitting: big_delta = eps_c1 - eps_a.
      return s.eps2 - s.eps1;
  }
  throw std::invalid_argument("resonance_detuning: unknown mode");
}

double blockade_shift_numeric(const DriveParams& p) {
  require_nonzero_delta(p, "blockade_shift_numeric");
  const double max_omega = std::max(p.omega1, p.omega2);
  if (max_omega > 0.0 && std::abs(p.delta) < kAdiabaticRatio * max_omega) {
    throw regime_error(
        "blockade_shift_numeric: not in adiabatic regime (|delta| < " +
        std::to_string(kAdiabaticRatio) + " * max(omega1, omega2))");
  }
  const HamiltonianMatrix six = build_collective_six(p);
  const Eigen::MatrixXd m = six.entries.real();

  // Dressed energy of kept level k: fold in each eliminated neighbor through
  // the exact 2x2 eigenvalue branch continuously connected to level k.
  const auto dressed = [&m](int k, std::initializer_list<int> neighbors) {
    const double ek = m(k, k);
    double energy = ek;
    for (int e : neighbors) {
      const double g = m(k, e);
      if (g == 0.0) continue;
      const double gap = ek - m(e, e);
      if (std::abs(gap) < 2.0 * std::abs(g)) {
        throw regime_error(
            "blockade_shift_numeric: cannot adiabatically track dressed state "
            "(level gap smaller than twice the coupling)");
      }
      const double mid = 0.5 * (ek + m(e, e));
      const double split = std::hypot(0.5 * gap, g);
      energy += (mid + (gap > 0.0 ? split : -split)) - ek;
    }
    return energy;
  };

  const double e_a = dressed(0, {1});
  const double e_c1 = dressed(2, {1, 3});
  const double e_c2 = dressed(4, {3, 5});
  return (e_c2 - e_c1) - (e_c1 - e_a);
}

}  // namespace lsiib
