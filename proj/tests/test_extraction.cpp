#include <stdexcept>

#include "doctest.h"
#include "oracle.hpp"
#include "stlmine/classifier.hpp"
#include "stlmine/extraction.hpp"
#include "stlmine/parser.hpp"
#include "stlmine/robustness.hpp"

using namespace stlmine;

TEST_CASE("shift_formula moves every threshold by the offset") {
  CHECK(shift_formula(parse_formula("x >= 2"), 0.5).to_string() == "x >= 2.5");
  CHECK(shift_formula(parse_formula("x > 2"), 0.5).to_string() == "x > 2.5");
  CHECK(shift_formula(parse_formula("x <= 2"), 0.5).to_string() == "x <= 1.5");
  CHECK(shift_formula(parse_formula("x < 2"), 0.5).to_string() == "x < 1.5");
  CHECK(shift_formula(parse_formula("true"), 3.0).to_string() == "true");
  CHECK(shift_formula(parse_formula("!true"), 3.0).to_string() == "!true");
  CHECK(shift_formula(parse_formula("G[0,5](x >= 1 && y <= 2)"), 1.0)
            .to_string() == "G[0,5](x >= 2 && y <= 1)");
  // negation recurses with the offset flipped
  CHECK(shift_formula(parse_formula("!(x > 1 U[0,5] y < 2)"), 1.0)
            .to_string() == "!(x > 0 U[0,5] y < 3)");
  // implications are not shiftable (the left side would need the opposite
  // slope); normal form is a precondition
  CHECK_THROWS_AS(shift_formula(parse_formula("x > 0 -> y > 0"), 1.0),
                  std::invalid_argument);
}

TEST_CASE("shifting offsets robustness uniformly") {
  Rng rng(123);
  for (int i = 0; i < 300; ++i) {
    TimedTrace trace = testutil::random_trace(rng, 30);
    Formula f =
        testutil::random_formula(rng, 7, trace.duration(), /*nnf_only=*/true);
    double c = rng.uniform(-4.0, 4.0);
    double before = robustness(f, trace, 0.0);
    double after = robustness(shift_formula(f, c), trace, 0.0);
    if (std::isinf(before)) {
      REQUIRE(after == before);
    } else {
      REQUIRE(after == doctest::Approx(before - c).epsilon(1e-12));
    }
  }
}

namespace {

// run the classifier on a dataset and check extraction against the tree
// prediction for every trace, which is the guarantee extraction gives
void check_agreement(const ParametricFormula& psi, const LabeledTraces& data,
                     std::uint64_t seed) {
  ClassifierConfig cfg;
  cfg.seed = seed;
  cfg.feature_count = 5;
  ClassifierResult res = dt_based_stl_classifier(psi, data, cfg);
  std::vector<Formula> instantiated;
  for (const auto& nu : res.valuations)
    instantiated.push_back(instantiate(psi, nu));
  auto extracted = extract_stl(res.tree, psi, res.valuations);

  auto check_one = [&](const TimedTrace& trace) {
    int tree_says = predict(res.tree, feature_row(trace, instantiated));
    bool formula_says = extracted && satisfies(*extracted, trace);
    CHECK(formula_says == (tree_says == 1));
  };
  for (const auto& t : data.good) check_one(t);
  for (const auto& t : data.bad) check_one(t);
}

TimedTrace ramp_trace(double slope) {
  std::vector<double> times, x;
  for (int i = 0; i <= 20; ++i) {
    times.push_back(i * 0.5);
    x.push_back(slope * i * 0.5);
  }
  return TimedTrace(std::move(times), {{"x", std::move(x)}});
}

}  // namespace

TEST_CASE("extracted formula and tree agree on every trace") {
  Rng rng(9);
  LabeledTraces data;
  for (int i = 0; i < 12; ++i)
    data.good.push_back(ramp_trace(rng.uniform(0.2, 1.0)));
  for (int i = 0; i < 12; ++i)
    data.bad.push_back(ramp_trace(rng.uniform(-1.0, -0.2)));

  check_agreement(parse_template("G[0,10](x >= ?c)")
                      .with_ranges({{"c", {-10.0, 10.0}}}),
                  data, 1);
  check_agreement(parse_template("F[0,?t](x >= 2)")
                      .with_ranges({{"t", {0.0, 10.0}}}),
                  data, 2);
}

TEST_CASE("extraction mirrors the tree paths") {
  // hand-built stump: feature 0 at threshold 1.5, label 1 on the right
  DecisionTree stump;
  stump.nodes.push_back({0, 1.5, 1, 2, -1});
  stump.nodes.push_back({-1, 0, -1, -1, 0});
  stump.nodes.push_back({-1, 0, -1, -1, 1});
  ParametricFormula psi =
      parse_template("G[0,5](x >= ?c)").with_ranges({{"c", {0, 10}}});
  std::vector<Valuation> nus = {{{"c", 2.0}}};

  auto phi = extract_stl(stump, psi, nus);
  REQUIRE(phi.has_value());
  // rob(G(x >= 2)) >= 1.5  <=>  G(x >= 3.5)
  CHECK(phi->to_string() == "G[0,5](x >= 3.5)");

  // label-1 on the left means the negated, un-shifted branch
  std::swap(stump.nodes[1].label, stump.nodes[2].label);
  phi = extract_stl(stump, psi, nus);
  REQUIRE(phi.has_value());
  CHECK(phi->to_string() == "!(G[0,5](x >= 3.5))");

  // no label-1 leaf anywhere: nothing to extract
  stump.nodes[1].label = 0;
  stump.nodes[2].label = 0;
  CHECK_FALSE(extract_stl(stump, psi, nus).has_value());

  // a lone all-good leaf extracts the trivially true formula
  DecisionTree leaf;
  leaf.nodes.push_back({-1, 0, -1, -1, 1});
  phi = extract_stl(leaf, psi, nus);
  REQUIRE(phi.has_value());
  CHECK(phi->to_string() == "true");
}

TEST_CASE("two-level trees become disjunctions of path conjunctions") {
  // feature 0 >= 0 ? (feature 1 >= 1 -> good) : (feature 1 < -1 -> good)
  DecisionTree tree;
  tree.nodes.push_back({0, 0.0, 1, 2, -1});   // root
  tree.nodes.push_back({1, -1.0, 3, 4, -1});  // left internal
  tree.nodes.push_back({1, 1.0, 5, 6, -1});   // right internal
  tree.nodes.push_back({-1, 0, -1, -1, 1});   // x<0, y<-1  -> good
  tree.nodes.push_back({-1, 0, -1, -1, 0});
  tree.nodes.push_back({-1, 0, -1, -1, 0});
  tree.nodes.push_back({-1, 0, -1, -1, 1});   // x>=0, y>=1 -> good
  ParametricFormula psi =
      parse_template("x >= ?c").with_ranges({{"c", {-5, 5}}});
  std::vector<Valuation> nus = {{{"c", 0.0}}, {{"c", 1.0}}};

  auto phi = extract_stl(tree, psi, nus);
  REQUIRE(phi.has_value());
  // left path: !(x >= 0) && !(x >= 1 shifted by -1) -- the two conjuncts
  // coincide and dedupe; right path: x >= 0 && x >= 2
  CHECK(phi->to_string() == "!(x >= 0) || x >= 0 && x >= 2");

  // satisfaction matches a manual read of the tree
  auto trace = [](double v) {
    return TimedTrace({0.0, 1.0}, {{"x", {v, v}}});
  };
  CHECK(satisfies(*phi, trace(2.0)));         // right-right leaf
  CHECK_FALSE(satisfies(*phi, trace(0.5)));   // right-left leaf, label 0
  CHECK(satisfies(*phi, trace(-0.5)));        // left-left leaf
}
