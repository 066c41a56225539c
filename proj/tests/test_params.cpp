#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "worldsys/error.hpp"
#include "worldsys/params.hpp"

using namespace worldsys;

namespace {

ParamSet parse(const std::string& text) {
  std::istringstream in(text);
  return ParamSet::parse(in, "test.params");
}

}  // namespace

TEST_CASE("key=value files") {
  const ParamSet ps = parse("# header\n\na = 1.5e-3   # trailing\n  N0=230.82\nintegrator = rk4\n");
  CHECK(ps.size() == 3);
  CHECK(ps.number("a") == 1.5e-3);
  CHECK(ps.number("N0") == 230.82);
  CHECK(ps.text_or("integrator", "euler") == "rk4");
  CHECK(ps.number_or("S0", 4.225) == 4.225);
  CHECK_FALSE(ps.has("S0"));
}

TEST_CASE("parameter file errors name the line") {
  CHECK_THROWS_WITH_AS(parse("a = 1\nbogus line\n"), doctest::Contains("test.params:2"), ParseError);
  CHECK_THROWS_WITH_AS(parse("a = 1\na = 2\n"), doctest::Contains("duplicate"), ParseError);
  CHECK_THROWS_AS(parse("a =\n"), ParseError);
  CHECK_THROWS_AS(parse("bad key = 1\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse("a = 1x\n").number("a"), doctest::Contains("test.params:1"), ParseError);
  CHECK_THROWS_WITH_AS(parse("a = 1\n").number("b"), doctest::Contains("missing parameter 'b'"),
                       ValidationError);
  CHECK_THROWS_AS(ParamSet::load("/nonexistent/x.params"), IoError);
}

TEST_CASE("unknown keys are rejected per model") {
  CHECK_THROWS_WITH_AS(run_model("compact", parse("a = 1e-5\nalpha = 0.5\n")), doctest::Contains("alpha"),
                       ValidationError);
  CHECK_THROWS_AS(run_model("nonsense", parse("")), ValidationError);
  CHECK_THROWS_AS(run_model("compact", parse("integrator = leapfrog\n")), ValidationError);
  CHECK_THROWS_AS(run_model("kuznetsian", parse("alpha=0.5\nb=0\na=1e-4\nN0=230\nt_start=0\nt_end=1\n"
                                                "adjustment=lazy\n")),
                  ValidationError);
}

TEST_CASE("span validation comes from the model") {
  CHECK_THROWS_WITH_AS(run_model("compact", parse("t_start = 10\nt_end = 5\n")), doctest::Contains("t_end"),
                       ValidationError);
  CHECK_THROWS_AS(run_model("logistic", parse("a1=0.05\na2=0.01\nb=1e-4\nN0=1\nt_start=5\nt_end=5\n")),
                  ValidationError);
}

TEST_CASE("integrator selection") {
  const SimulationOptions d = simulation_options(parse(""), IntegratorSpec::euler_annual());
  CHECK(d.integrator.method == Method::euler);
  CHECK(d.integrator.step == 1.0);
  const SimulationOptions r = simulation_options(parse("integrator = rk4\n"), IntegratorSpec::euler_annual());
  CHECK(r.integrator.method == Method::rk4);
  CHECK(r.integrator.step == 0.25);
  const SimulationOptions s = simulation_options(parse("step = 0.5\nstride = 5\n"), IntegratorSpec::rk4());
  CHECK(s.integrator.step == 0.5);
  CHECK(s.stride == 5);
}

TEST_CASE("Kremer start defaults to the equilibrium") {
  const KremerParams p = kremer_params(parse("alpha=0.5\nb=0\na=1e-4\nN0=400\n"), "b");
  CHECK(p.T0 == doctest::Approx(445 * 20));
  CHECK(equilibrium_population(p.T0, p.g_bar, p.alpha, p.r_tech) == doctest::Approx(400));
}

TEST_CASE("bundled parameter files") {
  const struct {
    const char* file;
    const char* model;
    Termination expected;
  } cases[] = {
      {"compact_paper.params", "compact", Termination::blow_up},
      {"compact_rk4.params", "compact", Termination::completed},
      {"kuznetsian_balanced.params", "kuznetsian", Termination::completed},
      {"kuznetsian_instantaneous.params", "kuznetsian", Termination::completed},
      {"exptech_example.params", "exptech", Termination::completed},
      {"logistic_example.params", "logistic", Termination::completed},
      {"coalition_vonfoerster.params", "coalition", Termination::blow_up},
  };
  for (const auto& c : cases) {
    CAPTURE(c.file);
    const SimulationTrace tr = run_model(c.model, ParamSet::load(testing::params_file(c.file)));
    CHECK(tr.termination == c.expected);
    CHECK(tr.size() > 0);
  }
  const SimulationTrace paper = run_model("compact", ParamSet::load(testing::params_file("compact_paper.params")));
  CHECK(paper.metadata.at("a") == 0.000011383);
  CHECK(paper.metadata.at("N0") == 230.82);
}
