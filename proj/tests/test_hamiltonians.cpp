#include <doctest.h>

#include <cmath>
#include <random>

#include "lsiib/hamiltonians.hpp"

using namespace lsiib;

namespace {

bool exactly_hermitian(const HamiltonianMatrix& h) {
  return h.entries == h.entries.adjoint().eval();
}

}  // namespace

TEST_CASE("five-level matrix entries") {
  const double om1 = 1.0, om2 = 0.1, d = 10.0, bd = 0.7;
  const HamiltonianMatrix h = build_five_level(
      DriveParams::from_detunings(om1, om2, d, bd));
  REQUIRE(h.dim() == 5);
  CHECK(h.basis_labels == five_level_labels());
  CHECK(h.basis_labels == std::vector<std::string>{"1", "2", "3", "4", "5"});

  const double diag[5] = {bd / 2, -d, -bd / 2, -(d + bd), -1.5 * bd};
  for (int i = 0; i < 5; ++i) {
    CHECK(h.entries(i, i).real() == doctest::Approx(diag[i]).epsilon(1e-15));
  }
  CHECK(h.entries(0, 1).real() == om1 / 2);
  CHECK(h.entries(1, 2).real() == om2 / 2);
  CHECK(h.entries(2, 3).real() == om1 / 2);
  CHECK(h.entries(3, 4).real() == om2 / 2);
  // strictly tridiagonal
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (std::abs(i - j) > 1) CHECK(h.entries(i, j) == 0.0);
    }
  }
  CHECK(exactly_hermitian(h));
  CHECK(is_hermitian(h));
}

TEST_CASE("collective six-level matrix entries") {
  const double om1 = 1.0, om2 = 0.1, d = 10.0, bd = 0.3;
  const int n = 6;
  const HamiltonianMatrix h = build_collective_six(
      DriveParams::from_detunings(om1, om2, d, bd, n));
  REQUIRE(h.dim() == 6);
  CHECK(h.basis_labels == collective_six_labels());
  CHECK(h.basis_labels ==
        std::vector<std::string>{"A", "G1", "C1", "G11", "C2", "G12"});

  const double diag[6] = {bd / 2,       -d,       -bd / 2,
                          -(d + bd),    -1.5 * bd, -(d + 2 * bd)};
  for (int i = 0; i < 6; ++i) {
    CHECK(h.entries(i, i).real() == doctest::Approx(diag[i]).epsilon(1e-15));
  }
  const double couplings[5] = {
      std::sqrt(6.0) * om1 / 2, om2 / 2, std::sqrt(5.0) * om1 / 2,
      std::sqrt(2.0) * om2 / 2, std::sqrt(4.0) * om1 / 2};
  for (int i = 0; i < 5; ++i) {
    CHECK(h.entries(i, i + 1).real() ==
          doctest::Approx(couplings[i]).epsilon(1e-15));
  }
  CHECK(exactly_hermitian(h));
}

TEST_CASE("collective six-level ladder needs n_atoms >= 3") {
  CHECK_THROWS_AS(
      build_collective_six(DriveParams::from_detunings(1, 0.1, 10, 0, 2)),
      std::invalid_argument);
  CHECK_NOTHROW(
      build_collective_six(DriveParams::from_detunings(1, 0.1, 10, 0, 3)));
}

TEST_CASE("full-ensemble indexing helpers") {
  CHECK(full_ensemble_dimension(1) == 3);
  CHECK(full_ensemble_dimension(4) == 81);
  CHECK(full_ensemble_label(3, 0) == "aaa");
  CHECK(full_ensemble_label(3, 26) == "ccc");
  // atom 0 is the most significant base-3 digit
  CHECK(full_ensemble_label(3, 9) == "gaa");
  CHECK(full_ensemble_label(3, 1) == "aag");
  CHECK(atom_level(3, 9, 0) == AtomLevel::g);
  CHECK(atom_level(3, 9, 2) == AtomLevel::a);
  CHECK(full_ensemble_labels(2).size() == 9);
  CHECK(full_ensemble_labels(2)[5] == "gc");
}

TEST_CASE("full ensemble at N=1 is the bare three-level atom") {
  const HamiltonianMatrix h = build_full_ensemble(
      DriveParams::from_detunings(1.0, 0.1, 10.0, 0.0, 1));
  REQUIRE(h.dim() == 3);
  CHECK(h.entries(0, 0).real() == doctest::Approx(0.0));
  CHECK(h.entries(1, 1).real() == doctest::Approx(-10.0));
  CHECK(h.entries(2, 2).real() == doctest::Approx(0.0));
  CHECK(h.entries(0, 1).real() == doctest::Approx(0.5));
  CHECK(h.entries(1, 2).real() == doctest::Approx(0.05));
  CHECK(h.entries(0, 2) == 0.0);
  CHECK(exactly_hermitian(h));
}

TEST_CASE("full ensemble entries follow the per-atom sum rule") {
  // Every matrix element of the N-atom builder must be reproducible from
  // per-atom energies and single-flip couplings.
  const double om1 = 0.8, om2 = 0.3, d = 7.0, bd = 0.4;
  const int n = 3;
  const HamiltonianMatrix h =
      build_full_ensemble(DriveParams::from_detunings(om1, om2, d, bd, n));
  REQUIRE(h.dim() == 27);
  CHECK(h.basis_labels == full_ensemble_labels(n));

  const double ea = bd / (2 * n);
  const double eg = -d - (n - 1) * bd / (2.0 * n);
  const double ec = -bd / 2 - (n - 1) * bd / (2.0 * n);
  for (Eigen::Index s = 0; s < 27; ++s) {
    double diag = 0.0;
    for (int atom = 0; atom < n; ++atom) {
      switch (atom_level(n, s, atom)) {
        case AtomLevel::a: diag += ea; break;
        case AtomLevel::g: diag += eg; break;
        case AtomLevel::c: diag += ec; break;
      }
    }
    CHECK(h.entries(s, s).real() == doctest::Approx(diag).epsilon(1e-14));
    for (Eigen::Index t = 0; t < 27; ++t) {
      if (s == t) continue;
      // count which atoms differ and how
      int diffs = 0;
      double expected = 0.0;
      for (int atom = 0; atom < n; ++atom) {
        const AtomLevel ls = atom_level(n, s, atom);
        const AtomLevel lt = atom_level(n, t, atom);
        if (ls == lt) continue;
        ++diffs;
        const int a = static_cast<int>(ls), b = static_cast<int>(lt);
        if ((a == 0 && b == 1) || (a == 1 && b == 0)) expected = om1 / 2;
        else if ((a == 1 && b == 2) || (a == 2 && b == 1)) expected = om2 / 2;
        else expected = 0.0;  // a <-> c: no direct coupling
      }
      if (diffs != 1) expected = 0.0;
      CHECK(h.entries(s, t).real() ==
            doctest::Approx(expected).epsilon(1e-14));
      CHECK(h.entries(s, t).imag() == 0.0);
    }
  }
  CHECK(exactly_hermitian(h));
}

TEST_CASE("full-ensemble diagonal restricted to the symmetric ladder matches "
          "the six-level diagonal") {
  const double bd = 0.3, d = 10.0;
  const int n = 5;
  const HamiltonianMatrix h =
      build_full_ensemble(DriveParams::from_detunings(1.0, 0.1, d, bd, n));
  // representative product states of each tracked occupation class
  struct Probe { const char* label; double energy; };
  const Probe probes[] = {
      {"aaaaa", bd / 2},          // A
      {"gaaaa", -d},              // G1
      {"caaaa", -bd / 2},         // C1
      {"gcaaa", -(d + bd)},       // G11
      {"ccaaa", -1.5 * bd},       // C2
      {"gccaa", -(d + 2 * bd)},   // G12
  };
  const auto labels = full_ensemble_labels(n);
  for (const Probe& probe : probes) {
    const auto it = std::find(labels.begin(), labels.end(), probe.label);
    REQUIRE(it != labels.end());
    const Eigen::Index idx = it - labels.begin();
    CHECK(h.entries(idx, idx).real() ==
          doctest::Approx(probe.energy).epsilon(1e-13));
  }
}

TEST_CASE("full ensemble memory guard") {
  CHECK_THROWS_AS(
      build_full_ensemble(DriveParams::from_detunings(1, 0.1, 10, 0, 9)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      build_full_ensemble(DriveParams::from_detunings(1, 0.1, 10, 0, 5), 4),
      std::invalid_argument);
}

TEST_CASE("builders are exactly Hermitian for random parameters") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  std::uniform_real_distribution<double> v(-20.0, 20.0);
  for (int trial = 0; trial < 25; ++trial) {
    const DriveParams p =
        DriveParams::from_detunings(u(rng), u(rng), v(rng), v(rng), 3 + trial % 4);
    CHECK(exactly_hermitian(build_five_level(p)));
    CHECK(exactly_hermitian(build_collective_six(p)));
    CHECK(exactly_hermitian(build_full_ensemble(p)));
  }
}
