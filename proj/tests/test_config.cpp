#include <doctest.h>

#include "lsiib/config.hpp"

using namespace lsiib;

namespace {

const char* kMinimal = R"(
scenario = single-atom-5lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
)";

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const RunConfig cfg = parse_run_config(kMinimal);
  CHECK(cfg.scenario == Scenario::single_atom_5lvl);
  CHECK(cfg.params.omega1 == 1.0);
  CHECK(cfg.params.omega2 == 0.1);
  CHECK(cfg.params.delta == 10.0);
  CHECK(cfg.params.big_delta == 0.0);
  CHECK(cfg.params.n_atoms == 1);
  CHECK(cfg.propagation.t_max == 0.0);  // auto
  CHECK(cfg.propagation.n_steps == 2000);
  CHECK(cfg.propagation.method == PropagationConfig::Method::eigendecomposition);
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.output_format == OutputFormat::csv);
  CHECK_FALSE(cfg.resonance_big_delta);
}

TEST_CASE("comments, blank lines, and whitespace are tolerated") {
  const RunConfig cfg = parse_run_config(R"(
# reference run
scenario = single-atom-5lvl   # trailing comment

params.omega1=1.0
  params.omega2 =   0.1
params.delta =10.0
params.big_delta = 0.0
)");
  CHECK(cfg.params.omega2 == 0.1);
  CHECK(cfg.params.delta == 10.0);
}

TEST_CASE("per-leg detunings are accepted as an alternative pair") {
  const RunConfig cfg = parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta1 = 10.2
params.delta2 = 9.8
)");
  CHECK(cfg.params.delta1 == 10.2);
  CHECK(cfg.params.delta2 == 9.8);
  CHECK(cfg.params.delta == doctest::Approx(10.0));
  CHECK(cfg.params.big_delta == doctest::Approx(0.4));

  // mixing the two conventions is rejected
  CHECK_THROWS_AS(parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta1 = 10.2
params.delta2 = 9.8
params.delta = 10.0
)"),
                  config_error);
}

TEST_CASE("config rejections name the offending key") {
  using doctest::Contains;

  CHECK_THROWS_WITH_AS(parse_run_config("scenario = single-atom-5lvl\n"),
                       Contains("params.omega1"), config_error);

  CHECK_THROWS_WITH_AS(parse_run_config(R"(
scenario = no-such-scenario
params.omega1 = 1
params.omega2 = 0.1
params.delta = 10
params.big_delta = 0
)"),
                       Contains("scenario"), config_error);

  CHECK_THROWS_WITH_AS(parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1
params.omega1 = 2
params.omega2 = 0.1
params.delta = 10
params.big_delta = 0
)"),
                       Contains("duplicate"), config_error);

  CHECK_THROWS_WITH_AS(parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1
params.omega2 = 0.1
params.delta = ten
params.big_delta = 0
)"),
                       Contains("params.delta"), config_error);

  // unknown keys are rejected, with a scenario hint when one applies
  CHECK_THROWS_WITH_AS(parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1
params.omega2 = 0.1
params.delta = 10
params.big_delta = 0
sweep.axis = delta
)"),
                       Contains("sweep"), config_error);

  CHECK_THROWS_WITH_AS(parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1
params.omega2 = 0.1
params.delta = 10
params.big_delta = 0
params.typo = 3
)"),
                       Contains("params.typo"), config_error);
}

TEST_CASE("resonance keyword resolves against the scenario's ladder") {
  const RunConfig single = parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = resonance
)");
  CHECK(single.resonance_big_delta);
  CHECK(single.params.big_delta == doctest::Approx(0.00025).epsilon(1e-12));

  const RunConfig coll = parse_run_config(R"(
scenario = collective-6lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = resonance
params.n_atoms = 6
)");
  CHECK(coll.params.big_delta == doctest::Approx(-0.02475).epsilon(1e-12));
}

TEST_CASE("effective scenario options") {
  const RunConfig cfg = parse_run_config(R"(
scenario = effective-3lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
params.n_atoms = 100
effective.coupling = exact
)");
  // n_atoms > 1 defaults the mode to collective
  CHECK(cfg.effective_mode == ResonanceMode::collective);
  CHECK(cfg.effective_coupling == CollectiveCoupling::exact);

  const RunConfig single = parse_run_config(R"(
scenario = effective-3lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
effective.form = unshifted
)");
  CHECK(single.effective_mode == ResonanceMode::single_atom);
  CHECK(single.effective_form == SingleEffectiveForm::unshifted);

  // effective.* keys are invalid for other scenarios
  CHECK_THROWS_AS(parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
effective.form = shifted
)"),
                  config_error);
}

TEST_CASE("oracle scenarios enforce the atom cap") {
  CHECK_THROWS_AS(parse_run_config(R"(
scenario = oracle-compare
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
params.n_atoms = 9
)"),
                  config_error);

  const RunConfig cfg = parse_run_config(R"(
scenario = full-ensemble-oracle
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
params.n_atoms = 6
oracle.cap = 7
)");
  CHECK(cfg.oracle_cap == 7);
  CHECK(cfg.params.n_atoms == 6);
}

TEST_CASE("sweep configuration") {
  const RunConfig cfg = parse_run_config(R"(
scenario = sweep
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
params.n_atoms = 50
sweep.model = collective-six
sweep.axis = delta
sweep.values = 10, 20, 40, 80, 160
)");
  CHECK(cfg.sweep_model == SweepModel::collective_six);
  CHECK(cfg.sweep_axis == "delta");
  CHECK(cfg.sweep_values == std::vector<double>{10, 20, 40, 80, 160});

  CHECK_THROWS_AS(parse_run_config(R"(
scenario = sweep
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
sweep.model = five-level
sweep.axis = n_atoms
sweep.values = 2.5, 3
)"),
                  config_error);

  CHECK_THROWS_AS(parse_run_config(R"(
scenario = sweep
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
sweep.model = five-level
sweep.axis = bogus
sweep.values = 1, 2
)"),
                  config_error);
}

TEST_CASE("propagation and output options") {
  const RunConfig cfg = parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
propagation.t_max = 123.5
propagation.n_steps = 777
propagation.method = scaled_expm
output.dir = /tmp/somewhere
output.format = json
)");
  CHECK(cfg.propagation.t_max == 123.5);
  CHECK(cfg.propagation.n_steps == 777);
  CHECK(cfg.propagation.method == PropagationConfig::Method::scaled_expm);
  CHECK(cfg.output_dir == "/tmp/somewhere");
  CHECK(cfg.output_format == OutputFormat::json);

  CHECK_THROWS_AS(parse_run_config(R"(
scenario = single-atom-5lvl
params.omega1 = 1.0
params.omega2 = 0.1
params.delta = 10.0
params.big_delta = 0.0
propagation.n_steps = 1
)"),
                  config_error);
}

TEST_CASE("load_run_config reports unreadable paths") {
  CHECK_THROWS_AS(load_run_config("/nonexistent/nope.cfg"), config_error);
}
