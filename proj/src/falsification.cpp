#include "stlmine/falsification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stlmine/robustness.hpp"
#include "stlmine/rng.hpp"

namespace stlmine {

namespace {

std::vector<std::string> box_signals(const ControlPointSpec& spec) {
  std::vector<std::string> names;
  names.reserve(spec.box.size());
  for (const auto& [name, box] : spec.box) {
    (void)box;
    names.push_back(name);
  }
  return names;
}

void check_spec(const ControlPointSpec& spec) {
  if (spec.points_per_signal == 0)
    throw std::invalid_argument("control points: need at least one per signal");
  if (spec.box.empty())
    throw std::invalid_argument("control points: no signal box");
  if (!(spec.duration > 0.0) || !(spec.period > 0.0))
    throw std::invalid_argument("control points: bad time domain");
  for (const auto& [name, box] : spec.box)
    if (!(box.first <= box.second))
      throw std::invalid_argument("control points: empty box for '" + name +
                                  "'");
}

}  // namespace

TimedTrace realize_input(const std::vector<double>& u_hat,
                         const ControlPointSpec& spec, bool* clamped) {
  check_spec(spec);
  const auto names = box_signals(spec);
  const std::size_t k = spec.points_per_signal;
  if (u_hat.size() != k * names.size())
    throw std::invalid_argument("realize_input: control vector has wrong size");
  if (clamped) *clamped = false;

  std::vector<double> times;
  for (std::size_t i = 0;; ++i) {
    double t = static_cast<double>(i) * spec.period;
    if (t > spec.duration) break;
    times.push_back(t);
  }

  std::map<std::string, std::vector<double>> channels;
  for (std::size_t s = 0; s < names.size(); ++s) {
    const auto& box = spec.box.at(names[s]);
    std::vector<double> points(u_hat.begin() +
                                   static_cast<std::ptrdiff_t>(s * k),
                               u_hat.begin() +
                                   static_cast<std::ptrdiff_t>((s + 1) * k));
    for (auto& p : points) {
      double inside = std::clamp(p, box.first, box.second);
      if (inside != p && clamped) *clamped = true;
      p = inside;
    }
    std::vector<double> values(times.size());
    if (spec.interpolation == Interp::PiecewiseConstant || k == 1) {
      const double seg = spec.duration / static_cast<double>(k);
      for (std::size_t i = 0; i < times.size(); ++i) {
        auto idx = static_cast<std::size_t>(times[i] / seg);
        if (idx >= k) idx = k - 1;
        values[i] = points[idx];
      }
    } else {
      const double gap = spec.duration / static_cast<double>(k - 1);
      for (std::size_t i = 0; i < times.size(); ++i) {
        auto idx = static_cast<std::size_t>(times[i] / gap);
        if (idx >= k - 1) idx = k - 2;
        double t0 = static_cast<double>(idx) * gap;
        values[i] =
            points[idx] + (points[idx + 1] - points[idx]) * (times[i] - t0) / gap;
      }
    }
    channels.emplace(names[s], std::move(values));
  }
  return TimedTrace(std::move(times), std::move(channels));
}

namespace {

struct Evaluation {
  double cost = 0.0;
  bool verified = false;  // exact Boolean counterexample check
};

Evaluation evaluate(const std::vector<double>& u_hat, const Formula& phi_in,
                    const Formula& phi_out, const Model& model,
                    const ControlPointSpec& spec, const FalsifierConfig& cfg,
                    TimedTrace* input_out = nullptr) {
  TimedTrace u = realize_input(u_hat, spec);
  TimedTrace y = model.simulate(u);
  double rho_in = robustness(phi_in, u, u.times().front());
  double rho_out = robustness(phi_out, y, y.times().front());

  Evaluation ev;
  ev.verified = rho_in >= 0.0 && rho_out < 0.0;
  double penalty =
      std::pow(std::max(0.0, -rho_in) + 1.0, 2.0 * cfg.k) - 1.0;
  double shaped = std::clamp(rho_out, -cfg.output_clamp, cfg.output_clamp);
  ev.cost = penalty + shaped;
  if (input_out) *input_out = std::move(u);
  return ev;
}

}  // namespace

double falsifier_cost(const std::vector<double>& u_hat, const Formula& phi_in,
                      const Formula& phi_out, const Model& model,
                      const ControlPointSpec& spec,
                      const FalsifierConfig& cfg) {
  return evaluate(u_hat, phi_in, phi_out, model, spec, cfg).cost;
}

FalsifyOutcome falsify(const Model& model, const Formula& phi_in,
                       const Formula& phi_out, const ControlPointSpec& spec,
                       const FalsifierConfig& cfg) {
  check_spec(spec);
  if (cfg.budget == 0 || cfg.k < 1 || cfg.restarts == 0)
    throw std::invalid_argument("falsifier: bad configuration");
  {
    auto inputs = model.input_signals();
    for (const auto& s : support(phi_in))
      if (std::find(inputs.begin(), inputs.end(), s) == inputs.end())
        throw std::invalid_argument(
            "falsifier: assumption mentions non-input signal '" + s + "'");
    auto outputs = model.output_signals();
    for (const auto& s : support(phi_out))
      if (std::find(outputs.begin(), outputs.end(), s) == outputs.end())
        throw std::invalid_argument(
            "falsifier: requirement mentions non-output signal '" + s + "'");
  }

  const auto names = box_signals(spec);
  const std::size_t dims = names.size() * spec.points_per_signal;
  std::vector<double> lo(dims), hi(dims);
  for (std::size_t s = 0; s < names.size(); ++s) {
    const auto& box = spec.box.at(names[s]);
    for (std::size_t j = 0; j < spec.points_per_signal; ++j) {
      lo[s * spec.points_per_signal + j] = box.first;
      hi[s * spec.points_per_signal + j] = box.second;
    }
  }

  Rng rng(cfg.seed);
  FalsifyOutcome outcome;
  outcome.best_cost = std::numeric_limits<double>::infinity();
  const std::size_t per_restart =
      std::max<std::size_t>(1, cfg.budget / cfg.restarts);

  while (outcome.simulations < cfg.budget) {
    Rng local = rng.fork(outcome.simulations);
    std::vector<double> current(dims);
    for (std::size_t d = 0; d < dims; ++d)
      current[d] = local.uniform(lo[d], hi[d]);

    TimedTrace realized(std::vector<double>{0.0},
                        {{names.front(), std::vector<double>{0.0}}});
    Evaluation ev = evaluate(current, phi_in, phi_out, model, spec, cfg,
                             &realized);
    ++outcome.simulations;
    outcome.best_cost = std::min(outcome.best_cost, ev.cost);
    if (ev.verified) {
      outcome.counterexample = std::move(realized);
      return outcome;
    }

    double scale = cfg.step_scale;
    for (std::size_t step = 1;
         step < per_restart && outcome.simulations < cfg.budget; ++step) {
      std::vector<double> candidate(dims);
      for (std::size_t d = 0; d < dims; ++d) {
        double width = hi[d] - lo[d];
        candidate[d] = std::clamp(
            current[d] + local.gaussian(0.0, scale * width), lo[d], hi[d]);
      }
      Evaluation cev = evaluate(candidate, phi_in, phi_out, model, spec, cfg,
                                &realized);
      ++outcome.simulations;
      outcome.best_cost = std::min(outcome.best_cost, cev.cost);
      if (cev.verified) {
        outcome.counterexample = std::move(realized);
        return outcome;
      }
      if (cev.cost < ev.cost) {
        current = std::move(candidate);
        ev = cev;
      }
      scale *= 0.95;  // tighten the search as the restart ages
    }
  }
  return outcome;
}

}  // namespace stlmine
