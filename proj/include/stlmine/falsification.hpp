#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stlmine/formula.hpp"
#include "stlmine/models.hpp"
#include "stlmine/trace.hpp"

namespace stlmine {

enum class Interp { PiecewiseConstant, PiecewiseLinear };

/* How a flat vector of control points becomes an input trace: per signal
 * (alphabetical), points_per_signal values spread evenly over the time
 * domain and interpolated on the sample grid. */
struct ControlPointSpec {
  std::size_t points_per_signal = 2;
  std::map<std::string, std::pair<double, double>> box;
  Interp interpolation = Interp::PiecewiseConstant;
  double duration = 100.0;
  double period = 0.5;
};

/* Control points -> trace.  Piecewise-constant: point i holds on the i-th
 * of points_per_signal equal segments.  Piecewise-linear: points sit at
 * i*duration/(points-1) and the trace ramps between them.  Out-of-box
 * values are clamped; *clamped reports whether any were. */
TimedTrace realize_input(const std::vector<double>& u_hat,
                         const ControlPointSpec& spec,
                         bool* clamped = nullptr);

struct FalsifierConfig {
  std::size_t budget = 500;   // total simulations, hard cap
  int k = 2;                  // penalty exponent
  std::size_t restarts = 10;
  double step_scale = 0.25;   // initial Gaussian step, fraction of box width
  double output_clamp = 1e3;  // cap |rho(phi_out)| so the penalty dominates
  std::uint64_t seed = 0;
};

/* (max(0, -rho(phi_in, u, 0)) + 1)^(2k) - 1 + rho(phi_out, y, 0), with the
 * second term clamped to +-output_clamp.  Zero first term whenever the
 * input satisfies the assumption, so minimizing drives phi_out down. */
double falsifier_cost(const std::vector<double>& u_hat, const Formula& phi_in,
                      const Formula& phi_out, const Model& model,
                      const ControlPointSpec& spec, const FalsifierConfig& cfg);

struct FalsifyOutcome {
  std::optional<TimedTrace> counterexample;
  std::size_t simulations = 0;
  double best_cost = 0.0;
};

/* Restarted stochastic hill-climbing over the control-point box: uniform
 * restarts, Gaussian steps with a decaying scale, strict-improvement
 * acceptance.  Every candidate costs one simulation against the budget.
 * A counterexample is returned only after the exact Boolean check passes:
 * the realized input satisfies phi_in and its output violates phi_out. */
FalsifyOutcome falsify(const Model& model, const Formula& phi_in,
                       const Formula& phi_out, const ControlPointSpec& spec,
                       const FalsifierConfig& cfg);

}  // namespace stlmine
