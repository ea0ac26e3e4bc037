#include <cmath>

#include "doctest.h"
#include "stlmine/falsification.hpp"
#include "stlmine/parser.hpp"
#include "stlmine/robustness.hpp"

using namespace stlmine;

namespace {
ControlPointSpec small_spec(std::size_t points, Interp interp) {
  ControlPointSpec s;
  s.points_per_signal = points;
  s.box = {{"u", {-2.0, 2.0}}};
  s.interpolation = interp;
  s.duration = 10.0;
  s.period = 0.5;
  return s;
}
}  // namespace

TEST_CASE("piecewise-constant realization holds each point over its segment") {
  TimedTrace t = realize_input({1.0, -1.0}, small_spec(2, Interp::PiecewiseConstant));
  CHECK(t.size() == 21);
  CHECK(t.channel("u")[0] == 1.0);
  CHECK(t.channel("u")[9] == 1.0);   // t=4.5, still the first half
  CHECK(t.channel("u")[10] == -1.0); // t=5.0 starts the second segment
  CHECK(t.channel("u")[20] == -1.0);

  // a single point is just a constant trace
  TimedTrace c = realize_input({0.75}, small_spec(1, Interp::PiecewiseConstant));
  for (double v : c.channel("u")) CHECK(v == 0.75);
}

TEST_CASE("piecewise-linear realization ramps between the points") {
  TimedTrace t = realize_input({0.0, 2.0}, small_spec(2, Interp::PiecewiseLinear));
  CHECK(t.channel("u")[0] == 0.0);
  CHECK(t.channel("u")[10] == 1.0);  // halfway up the ramp
  CHECK(t.channel("u")[20] == 2.0);

  TimedTrace v = realize_input({0.0, 2.0, 0.0}, small_spec(3, Interp::PiecewiseLinear));
  CHECK(v.channel("u")[10] == 2.0);  // the middle knot at t=5
  CHECK(v.channel("u")[5] == 1.0);   // t=2.5, half of the first ramp
}

TEST_CASE("realization clamps to the box and reports it") {
  bool clamped = false;
  TimedTrace t = realize_input({5.0, -7.0},
                               small_spec(2, Interp::PiecewiseConstant), &clamped);
  CHECK(clamped);
  CHECK(t.channel("u")[0] == 2.0);
  CHECK(t.channel("u")[20] == -2.0);

  realize_input({1.0, -1.0}, small_spec(2, Interp::PiecewiseConstant), &clamped);
  CHECK_FALSE(clamped);

  CHECK_THROWS_AS(realize_input({1.0}, small_spec(2, Interp::PiecewiseConstant)),
                  std::invalid_argument);  // wrong arity
}

TEST_CASE("cost arithmetic: assumption penalty plus clamped requirement term") {
  DelayModel model(1.0, 1.0);
  ControlPointSpec spec;
  spec.points_per_signal = 2;
  spec.box = {{"u", {-2.0, 2.0}}};
  spec.duration = 10.0;
  spec.period = 0.5;
  FalsifierConfig cfg;
  cfg.k = 1;

  // all-positive constant input: assumption holds, so the cost is exactly
  // the requirement robustness
  Formula phi_in = parse_formula("G[0,9](u > 0)");
  Formula phi_out = parse_formula("G[1,10](y > 0)");
  double c = falsifier_cost({1.0, 1.0}, phi_in, phi_out, model, spec, cfg);
  CHECK(c == 1.0);  // min over the window of y = 1

  // rho(phi_in) = -1 and k=1 make the penalty (1+1)^2 - 1 = 3
  Formula hard_in = parse_formula("G[0,9](u > 2)");  // u=1 misses by 1
  double c2 = falsifier_cost({1.0, 1.0}, hard_in, phi_out, model, spec, cfg);
  CHECK(c2 == 4.0);  // 3 + rho(phi_out) = 3 + 1

  // k=2 sharpens the same miss to (1+1)^4 - 1 = 15
  cfg.k = 2;
  CHECK(falsifier_cost({1.0, 1.0}, hard_in, phi_out, model, spec, cfg) == 16.0);

  // the requirement term saturates at output_clamp
  cfg.k = 1;
  cfg.output_clamp = 0.25;
  CHECK(falsifier_cost({1.0, 1.0}, phi_in, phi_out, model, spec, cfg) == 0.25);
}

TEST_CASE("falsify respects the budget and counts every simulation") {
  DelayModel model(1.0, 1.0);
  ControlPointSpec spec;
  spec.points_per_signal = 2;
  spec.box = {{"u", {-2.0, 2.0}}};
  spec.duration = 100.0;
  spec.period = 0.5;
  FalsifierConfig cfg;
  cfg.budget = 37;
  cfg.seed = 1;

  // unfalsifiable candidate: positivity over the whole horizon
  FalsifyOutcome out = falsify(model, parse_formula("G[0,99](u > 0)"),
                               parse_formula("G[1,100](y > 0)"), spec, cfg);
  CHECK_FALSE(out.counterexample.has_value());
  CHECK(out.simulations == 37);
  CHECK(std::isfinite(out.best_cost));
}

TEST_CASE("falsify finds the hole in a weak assumption and verifies it") {
  DelayModel model(1.0, 1.0);
  ControlPointSpec spec;
  spec.points_per_signal = 4;
  spec.box = {{"u", {-2.0, 2.0}}};
  spec.duration = 100.0;
  spec.period = 0.5;
  FalsifierConfig cfg;
  cfg.budget = 500;
  cfg.seed = 3;

  Formula weak_in = parse_formula("G[0,50](u > 0)");
  Formula phi_out = parse_formula("G[1,100](y > 0)");
  FalsifyOutcome out = falsify(model, weak_in, phi_out, spec, cfg);
  REQUIRE(out.counterexample.has_value());
  CHECK(out.simulations <= 500);

  // the returned trace is a genuine witness, checked by the monitor itself
  CHECK(satisfies(weak_in, *out.counterexample));
  CHECK_FALSE(satisfies(phi_out, model.simulate(*out.counterexample)));
}

TEST_CASE("falsify validates signal support and config") {
  DelayModel model(1.0, 1.0);
  ControlPointSpec spec;
  spec.box = {{"u", {-2.0, 2.0}}};
  FalsifierConfig cfg;
  CHECK_THROWS_AS(falsify(model, parse_formula("v > 0"),
                          parse_formula("y > 0"), spec, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(falsify(model, parse_formula("u > 0"),
                          parse_formula("u > 0"), spec, cfg),
                  std::invalid_argument);
  FalsifierConfig bad;
  bad.budget = 0;
  CHECK_THROWS_AS(falsify(model, parse_formula("u > 0"),
                          parse_formula("y > 0"), spec, bad),
                  std::invalid_argument);
}
