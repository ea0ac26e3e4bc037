#include "stlmine/models.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "stlmine/rng.hpp"

namespace stlmine {

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<double>& need_channel(const TimedTrace& t,
                                        const std::string& name) {
  if (!t.has_channel(name))
    throw std::invalid_argument("model input is missing channel '" + name +
                                "'");
  return t.channel(name);
}

}  // namespace

// ---------------------------------------------------------------------------
// delay

DelayModel::DelayModel(double delay, double default_value,
                       std::pair<double, double> box)
    : delay_(delay), default_value_(default_value), box_(box) {
  if (delay < 0.0) throw std::invalid_argument("delay must be non-negative");
}

std::map<std::string, std::pair<double, double>> DelayModel::input_box() const {
  return {{"u", box_}};
}

TimedTrace DelayModel::simulate(const TimedTrace& input) const {
  const auto& u = need_channel(input, "u");
  std::size_t shift = 0;
  if (delay_ > 0.0) {
    if (delay_ > input.duration())
      throw std::invalid_argument("delay exceeds the trace duration");
    try {
      shift = input.index_of(input.times().front() + delay_);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("delay does not land on the sample grid");
    }
  }
  std::vector<double> y(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    y[i] = i < shift ? default_value_ : u[i - shift];
  return TimedTrace(input.times(), {{"y", std::move(y)}});
}

// ---------------------------------------------------------------------------
// oscillator

std::map<std::string, std::pair<double, double>> OscillatorModel::input_box()
    const {
  return {{"u1", {-1.0, 1.0}}, {"u2", {-1.0, 1.0}}};
}

TimedTrace OscillatorModel::simulate(const TimedTrace& input) const {
  const auto& u1 = need_channel(input, "u1");
  const auto& u2 = need_channel(input, "u2");
  const auto& times = input.times();
  std::vector<double> y(times.size());
  bool tripped = false;
  double last_u1_negative = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (u1[i] < 0.0) last_u1_negative = times[i];
    if (!tripped && u2[i] < 0.0 && last_u1_negative >= times[i] - 3.0)
      tripped = true;
    y[i] = (tripped ? 5.0 : 1.0) * std::sin(2.0 * kPi * 0.5 * times[i]);
  }
  return TimedTrace(times, {{"y", std::move(y)}});
}

// ---------------------------------------------------------------------------
// out-of-process component

SubprocessModel::SubprocessModel(
    std::string command, std::vector<std::string> inputs,
    std::map<std::string, std::pair<double, double>> box,
    std::vector<std::string> outputs, std::string scratch_dir)
    : command_(std::move(command)),
      inputs_(std::move(inputs)),
      box_(std::move(box)),
      outputs_(std::move(outputs)),
      scratch_dir_(std::move(scratch_dir)) {
  if (command_.empty())
    throw std::invalid_argument("subprocess model needs a command");
}

TimedTrace SubprocessModel::simulate(const TimedTrace& input) const {
  static std::atomic<unsigned long> counter{0};
  std::string tag = scratch_dir_ + "/component_" +
                    std::to_string(counter.fetch_add(1));
  std::string in_path = tag + "_in.csv";
  std::string out_path = tag + "_out.csv";
  write_trace_csv(in_path, input);
  std::string cmd = command_ + " " + in_path + " " + out_path;
  int rc = std::system(cmd.c_str());
  if (rc != 0) {
    std::remove(in_path.c_str());
    throw std::runtime_error("component command failed (exit " +
                             std::to_string(rc) + "): " + cmd);
  }
  TimedTrace output = read_trace_csv(out_path);
  std::remove(in_path.c_str());
  std::remove(out_path.c_str());
  for (const auto& name : outputs_)
    if (!output.has_channel(name))
      throw std::runtime_error("component output is missing channel '" + name +
                               "'");
  return output;
}

// ---------------------------------------------------------------------------
// input generation

std::vector<TimedTrace> sample_input_traces(const InputGenConfig& cfg,
                                            std::size_t n) {
  if (cfg.segments == 0)
    throw std::invalid_argument("sample_input_traces: segments must be >= 1");
  if (!(cfg.duration > 0.0) || !(cfg.period > 0.0))
    throw std::invalid_argument("sample_input_traces: bad time domain");
  if (cfg.box.empty())
    throw std::invalid_argument("sample_input_traces: no signal box");

  std::vector<double> times;
  for (std::size_t i = 0;; ++i) {
    double t = static_cast<double>(i) * cfg.period;
    if (t > cfg.duration) break;
    times.push_back(t);
  }

  const double seg_len = cfg.duration / static_cast<double>(cfg.segments);
  Rng rng(cfg.seed);
  std::vector<TimedTrace> traces;
  traces.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::map<std::string, std::vector<double>> channels;
    for (const auto& [name, box] : cfg.box) {
      std::vector<double> level(cfg.segments);
      for (auto& v : level) v = rng.uniform(box.first, box.second);
      std::vector<double> values(times.size());
      for (std::size_t i = 0; i < times.size(); ++i) {
        auto seg = static_cast<std::size_t>(times[i] / seg_len);
        if (seg >= cfg.segments) seg = cfg.segments - 1;
        values[i] = level[seg];
      }
      channels.emplace(name, std::move(values));
    }
    traces.emplace_back(times, std::move(channels));
  }
  return traces;
}

// ---------------------------------------------------------------------------
// pulse/echo dataset

LabeledTraces delay_pair_dataset(std::size_t n_good, std::size_t n_bad,
                                 std::uint64_t seed) {
  constexpr double kDuration = 150.0;
  constexpr double kPeriod = 0.5;
  std::vector<double> times;
  for (std::size_t i = 0;; ++i) {
    double t = static_cast<double>(i) * kPeriod;
    if (t > kDuration) break;
    times.push_back(t);
  }

  Rng rng(seed);
  auto make = [&times, &rng](bool good) {
    double amplitude = rng.uniform(0.3, 1.0);
    double width = rng.uniform(3.0, 5.0);
    double start = rng.uniform(5.0, 95.0);
    // delays live on the sample grid so the echo is an exact index shift;
    // good traces answer within 20 s, bad ones not before 30 s
    double delay = good ? 5.0 + 0.5 * static_cast<double>(rng.uniform_index(30))
                        : 30.5 + 0.5 * static_cast<double>(rng.uniform_index(30));
    auto shift = static_cast<std::size_t>(std::llround(delay / kPeriod));
    std::vector<double> x(times.size()), y(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
      x[i] = (times[i] >= start && times[i] <= start + width) ? amplitude : 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
      y[i] = i < shift ? 0.0 : x[i - shift];
    return TimedTrace(times, {{"x", std::move(x)}, {"y", std::move(y)}});
  };

  LabeledTraces data;
  data.good.reserve(n_good);
  data.bad.reserve(n_bad);
  for (std::size_t i = 0; i < n_good; ++i) data.good.push_back(make(true));
  for (std::size_t i = 0; i < n_bad; ++i) data.bad.push_back(make(false));
  return data;
}

}  // namespace stlmine
