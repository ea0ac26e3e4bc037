#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stlmine/classifier.hpp"
#include "stlmine/trace.hpp"

namespace stlmine {

/* The black-box component contract: a deterministic map from an input
 * trace to an output trace on the same time stamps.  Internal state is
 * deliberately invisible. */
class Model {
public:
  virtual ~Model() = default;

  virtual std::vector<std::string> input_signals() const = 0;
  virtual std::map<std::string, std::pair<double, double>> input_box() const = 0;
  virtual std::vector<std::string> output_signals() const = 0;
  virtual TimedTrace simulate(const TimedTrace& input) const = 0;
};

/* y(t) = u(t - delay) once t >= delay, a default value before that.
 * The delay must land on the input's sample grid. */
class DelayModel : public Model {
public:
  DelayModel(double delay, double default_value,
             std::pair<double, double> box = {-2.0, 2.0});

  std::vector<std::string> input_signals() const override { return {"u"}; }
  std::map<std::string, std::pair<double, double>> input_box() const override;
  std::vector<std::string> output_signals() const override { return {"y"}; }
  TimedTrace simulate(const TimedTrace& input) const override;

private:
  double delay_;
  double default_value_;
  std::pair<double, double> box_;
};

/* Two-input oscillator: output y = A * sin(2*pi*0.5*t) where A jumps from
 * 1 to 5 as soon as u2 goes negative within 3 seconds (inclusive) after a
 * negative u1; once tripped the gain stays at 5. */
class OscillatorModel : public Model {
public:
  std::vector<std::string> input_signals() const override { return {"u1", "u2"}; }
  std::map<std::string, std::pair<double, double>> input_box() const override;
  std::vector<std::string> output_signals() const override { return {"y"}; }
  TimedTrace simulate(const TimedTrace& input) const override;
};

/* Out-of-process component: the input trace is written as CSV, `command
 * <in.csv> <out.csv>` runs, and the output CSV is read back.  Lets users
 * hook up components in any language. */
class SubprocessModel : public Model {
public:
  SubprocessModel(std::string command, std::vector<std::string> inputs,
                  std::map<std::string, std::pair<double, double>> box,
                  std::vector<std::string> outputs,
                  std::string scratch_dir = "/tmp");

  std::vector<std::string> input_signals() const override { return inputs_; }
  std::map<std::string, std::pair<double, double>> input_box() const override {
    return box_;
  }
  std::vector<std::string> output_signals() const override { return outputs_; }
  TimedTrace simulate(const TimedTrace& input) const override;

private:
  std::string command_;
  std::vector<std::string> inputs_;
  std::map<std::string, std::pair<double, double>> box_;
  std::vector<std::string> outputs_;
  std::string scratch_dir_;
};

/* Randomized piecewise-constant input batches: equal-length segments,
 * values uniform in the per-signal box, fixed seed -> fixed batch. */
struct InputGenConfig {
  std::size_t segments = 5;
  std::map<std::string, std::pair<double, double>> box;
  double duration = 25.0;
  double period = 0.125;
  std::uint64_t seed = 0;
};

std::vector<TimedTrace> sample_input_traces(const InputGenConfig& cfg,
                                            std::size_t n);

/* Synthetic two-channel pulse dataset: x carries one rectangular pulse,
 * y is x delayed by d.  Label-1 traces use d < 20 s, label-0 d > 30 s, so
 * the classes are indistinguishable pointwise but split cleanly by a
 * bounded-response formula. */
LabeledTraces delay_pair_dataset(std::size_t n_good, std::size_t n_bad,
                                 std::uint64_t seed);

}  // namespace stlmine
