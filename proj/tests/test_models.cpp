#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "stlmine/models.hpp"
#include "stlmine/parser.hpp"
#include "stlmine/robustness.hpp"

using namespace stlmine;

TEST_CASE("delay model shifts samples and pads with the default") {
  DelayModel m(1.0, 9.0);
  TimedTrace in({0, 0.5, 1, 1.5, 2}, {{"u", {10, 20, 30, 40, 50}}});
  TimedTrace out = m.simulate(in);
  CHECK(out.times() == in.times());
  CHECK(out.channel("y") == std::vector<double>{9, 9, 10, 20, 30});

  DelayModel zero(0.0, 9.0);
  CHECK(zero.simulate(in).channel("y") == in.channel("u"));

  CHECK_THROWS_AS(DelayModel(-1.0, 0.0), std::invalid_argument);
  // off-grid and oversized delays are refused loudly
  CHECK_THROWS_AS(DelayModel(0.3, 0.0).simulate(in), std::invalid_argument);
  CHECK_THROWS_AS(DelayModel(5.0, 0.0).simulate(in), std::invalid_argument);
  // missing input channel
  CHECK_THROWS_AS(
      m.simulate(TimedTrace({0, 1}, {{"v", {0, 0}}})), std::invalid_argument);
}

TEST_CASE("oscillator gain trips on u2 < 0 within 3 s after a negative u1") {
  // half-second sample grid so |sin(pi t)| reaches 1 between the integers
  auto make_input = [](std::map<double, double> u1_at,
                       std::map<double, double> u2_at) {
    std::vector<double> times, u1, u2;
    for (double t = 0.0; t <= 5.0; t += 0.5) {
      times.push_back(t);
      u1.push_back(u1_at.count(t) ? u1_at[t] : 1.0);
      u2.push_back(u2_at.count(t) ? u2_at[t] : 1.0);
    }
    return TimedTrace(std::move(times),
                      {{"u1", std::move(u1)}, {"u2", std::move(u2)}});
  };
  auto amplitude = [](const TimedTrace& out) {
    double amp = 0.0;
    for (double v : out.channel("y")) amp = std::max(amp, std::abs(v));
    return amp;
  };
  OscillatorModel m;

  // u1 never negative: gain stays 1 no matter what u2 does
  std::map<double, double> all_neg;
  for (double t = 0.0; t <= 5.0; t += 0.5) all_neg[t] = -1.0;
  CHECK(amplitude(m.simulate(make_input({}, all_neg))) == doctest::Approx(1.0));

  // u1 < 0 at t=0 and u2 < 0 at t=3 (exactly 3 s later): trips to gain 5
  CHECK(amplitude(m.simulate(make_input({{0.0, -1}}, {{3.0, -1}}))) ==
        doctest::Approx(5.0));

  // u2 < 0 only 4 s after the negative u1: outside the window, no trip
  CHECK(amplitude(m.simulate(make_input({{0.0, -1}}, {{4.0, -1}}))) ==
        doctest::Approx(1.0));

  // simultaneous negative u1 and u2 count (0 s gap)
  CHECK(amplitude(m.simulate(make_input({{0.5, -1}}, {{0.5, -1}}))) ==
        doctest::Approx(5.0));
}

TEST_CASE("oscillator output violates the unit band exactly when tripped") {
  // the mining target: y stays in [-1, 1] unless the trip pattern occurs
  Formula band = parse_formula("G[0,25](y <= 1 && y >= -1)");
  InputGenConfig gen;
  gen.box = {{"u1", {-1, 1}}, {"u2", {-1, 1}}};
  gen.seed = 5;
  OscillatorModel m;
  std::size_t violated = 0;
  for (const auto& u : sample_input_traces(gen, 40))
    if (!satisfies(band, m.simulate(u))) ++violated;
  CHECK(violated > 0);
  CHECK(violated < 40);
}

TEST_CASE("input sampling is piecewise constant, boxed and seeded") {
  InputGenConfig cfg;
  cfg.segments = 5;
  cfg.box = {{"u", {-2.0, 2.0}}};
  cfg.duration = 10.0;
  cfg.period = 0.5;
  cfg.seed = 11;
  auto batch = sample_input_traces(cfg, 3);
  REQUIRE(batch.size() == 3);
  for (const auto& t : batch) {
    CHECK(t.size() == 21);  // 0, 0.5, ..., 10
    CHECK(t.times().front() == 0.0);
    CHECK(t.times().back() == 10.0);
    const auto& u = t.channel("u");
    std::set<double> levels(u.begin(), u.end());
    CHECK(levels.size() <= cfg.segments);
    for (double v : u) {
      CHECK(v >= -2.0);
      CHECK(v <= 2.0);
    }
    // constant within each 2-second segment
    CHECK(u[0] == u[3]);
    CHECK(u[4] == u[7]);
  }
  CHECK(batch[0].channel("u") != batch[1].channel("u"));

  auto again = sample_input_traces(cfg, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(batch[i] == again[i]);

  cfg.seed = 12;
  CHECK(sample_input_traces(cfg, 1)[0].channel("u") != batch[0].channel("u"));
}

TEST_CASE("pulse dataset separates by response delay, not pointwise") {
  LabeledTraces d = delay_pair_dataset(20, 20, 3);
  REQUIRE(d.good.size() == 20);
  REQUIRE(d.bad.size() == 20);

  Formula bounded = parse_formula("G[0,100](x >= 0.1 -> F[0,25](y >= 0.1))");
  for (const auto& t : d.good) {
    CHECK(t.duration() == 150.0);
    CHECK(t.has_channel("x"));
    CHECK(t.has_channel("y"));
    CHECK(satisfies(bounded, t));
  }
  for (const auto& t : d.bad) CHECK_FALSE(satisfies(bounded, t));

  // same marginal structure per channel: exactly one pulse in x either way
  for (const auto& t : d.bad) {
    const auto& x = t.channel("x");
    bool in_pulse = false;
    int rises = 0;
    for (double v : x) {
      if (v != 0.0 && !in_pulse) { in_pulse = true; ++rises; }
      if (v == 0.0) in_pulse = false;
    }
    CHECK(rises == 1);
  }

  CHECK(delay_pair_dataset(20, 20, 3).good[0] == d.good[0]);
}

TEST_CASE("subprocess model round-trips csv through a shell command") {
  // a component that renames u to y with sed(1); header-only edit
  const char* script = "/tmp/stlmine_test_passthrough.sh";
  {
    std::ofstream f(script);
    f << "#!/bin/sh\nsed '1s/^time,u$/time,y/' \"$1\" > \"$2\"\n";
  }
  REQUIRE(std::system(("chmod +x " + std::string(script)).c_str()) == 0);

  SubprocessModel m(script, {"u"}, {{"u", {-1, 1}}}, {"y"});
  TimedTrace in({0, 1, 2}, {{"u", {0.25, -0.5, 0.75}}});
  TimedTrace out = m.simulate(in);
  CHECK(out.channel("y") == in.channel("u"));
  CHECK(out.times() == in.times());

  // a failing command surfaces as an error, not garbage
  SubprocessModel broken("false", {"u"}, {{"u", {-1, 1}}}, {"y"});
  CHECK_THROWS_AS(broken.simulate(in), std::runtime_error);
  std::remove(script);
}
