#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stlmine/classifier.hpp"
#include "stlmine/enumeration.hpp"
#include "stlmine/falsification.hpp"
#include "stlmine/formula.hpp"
#include "stlmine/models.hpp"

namespace stlmine {

struct MinerConfig {
  GrammarConfig grammar;          // signals default to the model's inputs
  InputGenConfig input_gen;       // box defaults to the model's input box
  std::size_t n_traces = 200;
  std::size_t max_formula_length = 6;  // candidates stay strictly below this
  double epsilon = 0.05;               // accuracy gate: test acc > 1 - epsilon
  ClassifierConfig classifier;
  FalsifierConfig falsifier;
  ControlPointSpec control_points;     // box/time domain default from input_gen
  std::size_t resample_rounds = 5;     // retries when labeling is one-sided
  std::size_t max_cex_rounds = 10;     // counterexample retries per candidate
  std::uint64_t seed = 0;
};

struct CandidateRecord {
  std::string formula;          // the template, printed
  std::size_t length = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t tree_size = 0;
  std::size_t cex_count = 0;
  std::string extracted;        // candidate assumption, when one was built
  std::string outcome;          // "returned" / "accuracy gate" / ...
};

struct MiningReport {
  std::optional<Formula> result;
  std::string failure_reason;   // set iff !result
  std::vector<CandidateRecord> log;
  std::size_t total_simulations = 0;
  double wall_seconds = 0.0;
  std::size_t traces_good = 0;
  std::size_t traces_bad = 0;
};

// good iff the simulated output satisfies phi_out
LabeledTraces label_traces(const Model& model,
                           const std::vector<TimedTrace>& traces,
                           const Formula& phi_out);

/* The mining loop: sample and label inputs, hold out a test split, then for
 * each enumerated template (node count < max_formula_length) learn a tree
 * over robustness features; when held-out accuracy clears the gate, extract
 * the assumption and attack it with the falsifier.  A counterexample joins
 * the training bad-set and the same template is retried; a candidate that
 * survives the whole budget is returned.  Runs out of templates -> failure
 * with a reason.  Fully deterministic under cfg.seed. */
MiningReport mine(const Model& model, const Formula& phi_out,
                  const MinerConfig& cfg);

}  // namespace stlmine
