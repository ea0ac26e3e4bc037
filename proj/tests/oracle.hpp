#pragma once

// Reference robustness: a direct transcription of the quantitative semantics,
// one recursion per (node, time) pair, no window sharing, no memoisation.
// Deliberately slow and deliberately boring -- the production monitor has to
// match it bit for bit.  Also hosts the random trace/formula generators the
// property tests share.

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "stlmine/formula.hpp"
#include "stlmine/rng.hpp"
#include "stlmine/trace.hpp"

namespace testutil {

inline double oracle_robustness(const stlmine::Formula& f,
                                const stlmine::TimedTrace& x, double t) {
  using stlmine::Cmp;
  using stlmine::NodeKind;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto& times = x.times();
  switch (f.kind()) {
    case NodeKind::True:
      return kInf;
    case NodeKind::Atom: {
      double v = x.channel(f.signal())[x.index_of(t)];
      if (f.cmp() == Cmp::Ge || f.cmp() == Cmp::Gt) return v - f.constant();
      return f.constant() - v;
    }
    case NodeKind::Not:
      return -oracle_robustness(f.child(), x, t);
    case NodeKind::And:
      return std::min(oracle_robustness(f.child(0), x, t),
                      oracle_robustness(f.child(1), x, t));
    case NodeKind::Or:
      return std::max(oracle_robustness(f.child(0), x, t),
                      oracle_robustness(f.child(1), x, t));
    case NodeKind::Implies:
      return std::max(-oracle_robustness(f.child(0), x, t),
                      oracle_robustness(f.child(1), x, t));
    case NodeKind::Globally: {
      double r = kInf;
      for (double tp : times)
        if (f.window().contains(tp - t))
          r = std::min(r, oracle_robustness(f.child(), x, tp));
      return r;
    }
    case NodeKind::Eventually: {
      double r = -kInf;
      for (double tp : times)
        if (f.window().contains(tp - t))
          r = std::max(r, oracle_robustness(f.child(), x, tp));
      return r;
    }
    case NodeKind::Until: {
      double best = -kInf;
      for (double tp : times) {
        if (!f.window().contains(tp - t)) continue;
        double hold = kInf;
        for (double tpp : times)
          if (tpp >= t && tpp < tp)
            hold = std::min(hold, oracle_robustness(f.child(0), x, tpp));
        best = std::max(best, std::min(oracle_robustness(f.child(1), x, tp),
                                       hold));
      }
      return best;
    }
  }
  return 0.0;
}

// --------------------------------------------------------------------------
// random inputs for the property tests

inline stlmine::TimedTrace random_trace(stlmine::Rng& rng,
                                        std::size_t max_samples = 50) {
  std::size_t n = 2 + rng.uniform_index(max_samples - 1);
  std::vector<double> times(n);
  times[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    times[i] = times[i - 1] + rng.uniform(0.05, 1.0);
  std::map<std::string, std::vector<double>> channels;
  for (const char* name : {"x", "y"}) {
    std::vector<double> v(n);
    for (auto& e : v) e = rng.uniform(-5.0, 5.0);
    channels[name] = std::move(v);
  }
  return stlmine::TimedTrace(std::move(times), std::move(channels));
}

inline stlmine::Interval random_window(stlmine::Rng& rng, double t_max) {
  stlmine::Interval w;
  w.lo = rng.uniform(0.0, 0.8 * t_max);
  w.hi = w.lo + rng.uniform(0.0, 0.4 * t_max);
  w.lo_closed = rng.uniform01() < 0.5;
  w.hi_closed = rng.uniform01() < 0.5;
  if (w.lo == w.hi) w.lo_closed = w.hi_closed = true;
  return w;
}

inline stlmine::Formula random_atom(stlmine::Rng& rng) {
  static const stlmine::Cmp cmps[] = {stlmine::Cmp::Ge, stlmine::Cmp::Le,
                                      stlmine::Cmp::Gt, stlmine::Cmp::Lt};
  const char* signal = rng.uniform01() < 0.5 ? "x" : "y";
  return stlmine::Formula::atom(signal, cmps[rng.uniform_index(4)],
                                rng.uniform(-5.0, 5.0));
}

/* Random formula with at most `budget` nodes.  `nnf_only` restricts to the
 * shapes negation normal form can produce (no Implies, negation only on
 * `true` and Until). */
inline stlmine::Formula random_formula(stlmine::Rng& rng, std::size_t budget,
                                       double t_max, bool nnf_only = false) {
  using stlmine::Formula;
  if (budget <= 1) {
    if (rng.uniform01() < 0.05) return Formula::truth();
    return random_atom(rng);
  }
  double pick = rng.uniform01();
  if (pick < 0.12) {  // negation
    if (!nnf_only) return Formula::negation(random_formula(rng, budget - 1, t_max, false));
    if (budget >= 4 && rng.uniform01() < 0.5) {
      std::size_t left = 1 + rng.uniform_index(budget - 3);
      return Formula::negation(Formula::until(
          random_window(rng, t_max),
          random_formula(rng, left, t_max, true),
          random_formula(rng, budget - 2 - left, t_max, true)));
    }
    return Formula::negation(Formula::truth());
  }
  if (pick < 0.40) {  // unary temporal
    Formula inner = random_formula(rng, budget - 1, t_max, nnf_only);
    if (rng.uniform01() < 0.5)
      return Formula::globally(random_window(rng, t_max), inner);
    return Formula::eventually(random_window(rng, t_max), inner);
  }
  if (budget < 3) return random_atom(rng);
  std::size_t left = 1 + rng.uniform_index(budget - 2);
  Formula lhs = random_formula(rng, left, t_max, nnf_only);
  Formula rhs = random_formula(rng, budget - 1 - left, t_max, nnf_only);
  if (pick < 0.60) return Formula::conjunction(lhs, rhs);
  if (pick < 0.80) return Formula::disjunction(lhs, rhs);
  if (pick < 0.90 && !nnf_only) return Formula::implication(lhs, rhs);
  return Formula::until(random_window(rng, t_max), lhs, rhs);
}

}  // namespace testutil
