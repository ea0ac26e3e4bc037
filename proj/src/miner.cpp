#include "stlmine/miner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "stlmine/extraction.hpp"
#include "stlmine/robustness.hpp"

namespace stlmine {

namespace {

// stable seed derivation so every stage gets its own stream
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t purpose,
                       std::uint64_t index = 0) {
  std::uint64_t z = seed ^ (purpose * 0x9e3779b97f4a7c15ull) ^
                    (index * 0xd1342543de82ef95ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kSampleStage = 0xA1;
constexpr std::uint64_t kSplitStage = 0xB2;
constexpr std::uint64_t kFalsifyStage = 0xC3;

}  // namespace

LabeledTraces label_traces(const Model& model,
                           const std::vector<TimedTrace>& traces,
                           const Formula& phi_out) {
  LabeledTraces labeled;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    TimedTrace y = [&]() {
      try {
        return model.simulate(traces[i]);
      } catch (const std::exception& e) {
        throw std::runtime_error("simulation failed on trace " +
                                 std::to_string(i) + ": " + e.what());
      }
    }();
    if (satisfies(phi_out, y))
      labeled.good.push_back(traces[i]);
    else
      labeled.bad.push_back(traces[i]);
  }
  return labeled;
}

MiningReport mine(const Model& model, const Formula& phi_out,
                  const MinerConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  MiningReport report;
  auto finish = [&report, t_start]() {
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      t_start)
            .count();
  };

  {
    auto outputs = model.output_signals();
    for (const auto& s : support(phi_out))
      if (std::find(outputs.begin(), outputs.end(), s) == outputs.end())
        throw std::invalid_argument(
            "mine: requirement mentions non-output signal '" + s + "'");
  }
  if (cfg.n_traces == 0 || !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw std::invalid_argument("mine: bad configuration");

  // fill config gaps from the model
  InputGenConfig gen = cfg.input_gen;
  if (gen.box.empty()) gen.box = model.input_box();
  GrammarConfig grammar = cfg.grammar;
  if (grammar.signals.empty()) grammar.signals = model.input_signals();
  // candidates stay strictly below the length bound
  grammar.max_length =
      cfg.max_formula_length == 0 ? 0 : cfg.max_formula_length - 1;
  ControlPointSpec cps = cfg.control_points;
  if (cps.box.empty()) {
    cps.box = gen.box;
    cps.duration = gen.duration;
    cps.period = gen.period;
  }

  // sample and label; resample when everything lands in one class
  LabeledTraces labeled;
  bool have_both = false;
  for (std::size_t round = 0; round <= cfg.resample_rounds; ++round) {
    gen.seed = mix_seed(cfg.seed, kSampleStage, round);
    auto batch = sample_input_traces(gen, cfg.n_traces);
    labeled = label_traces(model, batch, phi_out);
    report.total_simulations += batch.size();
    if (!labeled.good.empty() && !labeled.bad.empty()) {
      have_both = true;
      break;
    }
  }
  report.traces_good = labeled.good.size();
  report.traces_bad = labeled.bad.size();
  if (!have_both) {
    report.failure_reason =
        "degenerate labeling: every sampled input fell into one class";
    report.log.push_back(
        CandidateRecord{"", 0, 0, 0, 0, 0, "", "degenerate labeling"});
    finish();
    return report;
  }

  auto [train, test] = split_dataset(labeled, cfg.classifier.split_ratio,
                                     mix_seed(cfg.seed, kSplitStage));

  Enumerator enumerator(grammar);
  const double gate = 1.0 - cfg.epsilon;
  std::size_t candidate_index = 0;

  while (auto psi = enumerator.next()) {
    ++candidate_index;
    CandidateRecord rec;
    rec.formula = psi->to_string();
    rec.length = psi->node_count();

    ParametricFormula ranged =
        psi->with_default_ranges(gen.box, gen.duration);
    std::vector<Valuation> valuations;
    try {
      valuations = grid_sample(param_space(ranged),
                               cfg.classifier.feature_count);
    } catch (const std::invalid_argument&) {
      rec.outcome = "parameter space infeasible";
      report.log.push_back(std::move(rec));
      continue;
    }

    std::vector<Formula> instantiated;
    instantiated.reserve(valuations.size());
    for (const auto& nu : valuations)
      instantiated.push_back(instantiate(ranged, nu));

    FeatureMatrix train_fm = compute_features(train, ranged, valuations);
    FeatureMatrix test_fm = compute_features(test, ranged, valuations);

    bool advance = false;
    for (std::size_t round = 0; !advance; ++round) {
      DecisionTree tree = train_tree(train_fm, cfg.classifier.tree);
      auto score = [&tree](const FeatureMatrix& fm) {
        std::vector<int> predicted;
        predicted.reserve(fm.rows.size());
        for (const auto& row : fm.rows) predicted.push_back(predict(tree, row));
        return accuracy(fm.labels, predicted);
      };
      rec.train_accuracy = score(train_fm);
      rec.test_accuracy =
          test_fm.rows.empty() ? rec.train_accuracy : score(test_fm);
      rec.tree_size = tree.size();

      if (!(rec.test_accuracy > gate)) {
        rec.outcome = "accuracy gate";
        advance = true;
        break;
      }

      auto candidate = extract_stl(tree, ranged, valuations);
      if (!candidate) {
        rec.outcome = "no satisfying leaf";
        advance = true;
        break;
      }
      rec.extracted = candidate->to_string();

      FalsifierConfig fcfg = cfg.falsifier;
      fcfg.seed = mix_seed(cfg.seed, kFalsifyStage,
                           candidate_index * 1000 + round);
      FalsifyOutcome attempt =
          falsify(model, *candidate, phi_out, cps, fcfg);
      report.total_simulations += attempt.simulations;

      if (!attempt.counterexample) {
        rec.outcome = "returned";
        report.log.push_back(std::move(rec));
        report.result = *candidate;
        finish();
        return report;
      }

      const TimedTrace& cex = *attempt.counterexample;
      // the falsifier guarantees this, but the loop's soundness rests on it
      if (!satisfies(*candidate, cex) ||
          satisfies(phi_out, model.simulate(cex)))
        throw std::logic_error("falsifier returned a non-counterexample");
      report.total_simulations += 1;
      ++rec.cex_count;
      if (round + 1 >= cfg.max_cex_rounds) {
        rec.outcome = "counterexample limit";
        advance = true;
        break;
      }
      train.bad.push_back(cex);
      train_fm.rows.push_back(feature_row(cex, instantiated));
      train_fm.labels.push_back(0);
    }
    report.log.push_back(std::move(rec));
  }

  report.failure_reason = "no assumption of length < " +
                          std::to_string(cfg.max_formula_length) +
                          " survived the accuracy and falsification gates";
  if (report.log.empty())
    report.log.push_back(CandidateRecord{
        "", 0, 0, 0, 0, 0, "", "length limit reached before any candidate"});
  finish();
  return report;
}

}  // namespace stlmine
