#include <doctest.h>

#include <stdexcept>

#include "lsiib/core.hpp"

using namespace lsiib;

TEST_CASE("DriveParams::from_legs derives the detuning pair once") {
  const DriveParams p = DriveParams::from_legs(1.0, 0.1, 10.3, 9.7, 4);
  CHECK(p.omega1 == 1.0);
  CHECK(p.omega2 == 0.1);
  CHECK(p.delta1 == 10.3);
  CHECK(p.delta2 == 9.7);
  CHECK(p.delta == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(p.big_delta == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(p.n_atoms == 4);
}

TEST_CASE("DriveParams::from_detunings keeps the given pair bit-exact") {
  const double delta = 10.0, big = 0.00025;
  const DriveParams p = DriveParams::from_detunings(1.0, 0.1, delta, big);
  CHECK(p.delta == delta);           // stored, never re-derived
  CHECK(p.big_delta == big);
  CHECK(p.delta1 == delta + big / 2);
  CHECK(p.delta2 == delta - big / 2);
  const auto [d, bd] = derived_detunings(p);
  CHECK(d == delta);
  CHECK(bd == big);
}

TEST_CASE("DriveParams validation") {
  CHECK_THROWS_AS(DriveParams::from_detunings(-1.0, 0.1, 10, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DriveParams::from_detunings(1.0, -0.1, 10, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DriveParams::from_legs(1.0, 0.1, 10, 10, 0),
                  std::invalid_argument);
  CHECK_NOTHROW(DriveParams::from_detunings(0.0, 0.0, 0.0, 0.0, 1));
}

TEST_CASE("make_basis_state") {
  const std::vector<std::string> labels = {"x", "y", "z"};
  const QuantumState s = make_basis_state(labels, 1);
  CHECK(s.basis_labels == labels);
  REQUIRE(s.amplitudes.size() == 3);
  CHECK(s.amplitudes(0) == std::complex<double>(0, 0));
  CHECK(s.amplitudes(1) == std::complex<double>(1, 0));
  CHECK(s.amplitudes(2) == std::complex<double>(0, 0));
  CHECK_THROWS_AS(make_basis_state(labels, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_basis_state(labels, -1), std::invalid_argument);
}

TEST_CASE("is_hermitian") {
  HamiltonianMatrix h;
  h.basis_labels = {"1", "2"};
  h.entries = Eigen::MatrixXcd::Zero(2, 2);
  h.entries(0, 1) = std::complex<double>(0.5, 0.25);
  h.entries(1, 0) = std::conj(h.entries(0, 1));
  CHECK(is_hermitian(h));

  h.entries(1, 0) = std::complex<double>(0.5, 0.25);  // same sign: not Hermitian
  CHECK_FALSE(is_hermitian(h));

  h.entries(1, 0) = std::conj(h.entries(0, 1));
  h.basis_labels = {"1"};  // label count mismatch
  CHECK_FALSE(is_hermitian(h));
}

TEST_CASE("error types map onto the exit-code contract") {
  // Both are runtime_errors, but they are distinct types so the CLI can
  // exit 2 for bad configs and 3 for regime violations.
  CHECK_THROWS_AS(throw config_error("x"), std::runtime_error);
  CHECK_THROWS_AS(throw regime_error("x"), std::runtime_error);
  CHECK_FALSE((std::is_base_of_v<config_error, regime_error>));
  CHECK_FALSE((std::is_base_of_v<regime_error, config_error>));
}
