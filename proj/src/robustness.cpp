#include "stlmine/robustness.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace stlmine {

namespace {

constexpr double kTop = std::numeric_limits<double>::infinity();
constexpr double kBottom = -kTop;

/* Contiguous index range of samples j with t_j - t_i inside the window.
 * Both edges only ever move forward as i grows (times are sorted), so each
 * temporal node is evaluated with one two-pointer sweep.  Membership is the
 * exact `contains` predicate -- bit-for-bit the same decision a per-sample
 * scan would make. */
struct WindowSweep {
  const std::vector<double>& times;
  const Interval& w;
  std::size_t lo = 0;   // first index in the window
  std::size_t hi = 0;   // first index past the window

  bool below_lower(double d) const { return w.lo_closed ? d < w.lo : d <= w.lo; }
  bool within_upper(double d) const { return w.hi_closed ? d <= w.hi : d < w.hi; }

  // Advance to the window of instant i; returns [lo, hi).
  std::pair<std::size_t, std::size_t> advance(std::size_t i) {
    const double t = times[i];
    if (lo < i) lo = i;  // windows never reach back (lo bound >= 0)
    while (lo < times.size() && below_lower(times[lo] - t)) ++lo;
    if (hi < lo) hi = lo;
    while (hi < times.size() && within_upper(times[hi] - t)) ++hi;
    return {lo, hi};
  }
};

std::vector<double> eval(const Formula& f, const TimedTrace& x);

// Sliding min (Globally) or max (Eventually) via a monotonic deque.
template <typename Better>
std::vector<double> eval_window_extremum(const Formula& f, const TimedTrace& x,
                                         double empty_value, Better better) {
  const auto child = eval(f.child(), x);
  const std::size_t n = x.size();
  std::vector<double> out(n);
  WindowSweep sweep{x.times(), f.window()};
  std::deque<std::size_t> best;  // indices, candidate extremum at the front
  std::size_t pushed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto [lo, hi] = sweep.advance(i);
    while (pushed < hi) {
      while (!best.empty() && !better(child[best.back()], child[pushed]))
        best.pop_back();
      best.push_back(pushed++);
    }
    while (!best.empty() && best.front() < lo) best.pop_front();
    out[i] = best.empty() ? empty_value : child[best.front()];
  }
  return out;
}

std::vector<double> eval_until(const Formula& f, const TimedTrace& x) {
  const auto a = eval(f.child(0), x);
  const auto b = eval(f.child(1), x);
  const std::size_t n = x.size();
  std::vector<double> out(n);
  WindowSweep sweep{x.times(), f.window()};
  for (std::size_t i = 0; i < n; ++i) {
    auto [lo, hi] = sweep.advance(i);
    double value = kBottom;
    double held = kTop;  // inf of a over samples in [t_i, t_j)
    std::size_t k = i;
    for (std::size_t j = lo; j < hi; ++j) {
      for (; k < j; ++k) held = std::min(held, a[k]);
      value = std::max(value, std::min(b[j], held));
    }
    out[i] = value;
  }
  return out;
}

std::vector<double> eval(const Formula& f, const TimedTrace& x) {
  const std::size_t n = x.size();
  switch (f.kind()) {
    case NodeKind::True:
      return std::vector<double>(n, kTop);
    case NodeKind::Atom: {
      const auto& s = x.channel(f.signal());
      const double c = f.constant();
      std::vector<double> out(n);
      if (f.cmp() == Cmp::Ge || f.cmp() == Cmp::Gt)
        for (std::size_t i = 0; i < n; ++i) out[i] = s[i] - c;
      else
        for (std::size_t i = 0; i < n; ++i) out[i] = c - s[i];
      return out;
    }
    case NodeKind::Not: {
      auto out = eval(f.child(), x);
      for (auto& v : out) v = -v;
      return out;
    }
    case NodeKind::And: {
      auto out = eval(f.child(0), x);
      const auto rhs = eval(f.child(1), x);
      for (std::size_t i = 0; i < n; ++i) out[i] = std::min(out[i], rhs[i]);
      return out;
    }
    case NodeKind::Or: {
      auto out = eval(f.child(0), x);
      const auto rhs = eval(f.child(1), x);
      for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], rhs[i]);
      return out;
    }
    case NodeKind::Implies: {
      auto out = eval(f.child(0), x);
      const auto rhs = eval(f.child(1), x);
      for (std::size_t i = 0; i < n; ++i) out[i] = std::max(-out[i], rhs[i]);
      return out;
    }
    case NodeKind::Globally:
      return eval_window_extremum(f, x, kTop, std::less<double>());
    case NodeKind::Eventually:
      return eval_window_extremum(f, x, kBottom, std::greater<double>());
    case NodeKind::Until:
      return eval_until(f, x);
  }
  throw std::logic_error("robustness: unhandled node kind");
}

void check_channels(const Formula& f, const TimedTrace& x) {
  for (const auto& name : support(f))
    if (!x.has_channel(name))
      throw std::invalid_argument("robustness: trace has no channel '" + name +
                                  "' required by the formula");
}

}  // namespace

std::vector<double> robustness_signal(const Formula& f, const TimedTrace& x) {
  check_channels(f, x);
  return eval(f, x);
}

double robustness(const Formula& f, const TimedTrace& x, double t) {
  const std::size_t i = x.index_of(t);
  return robustness_signal(f, x)[i];
}

bool satisfies(const Formula& f, const TimedTrace& x) {
  return robustness(f, x, x.times().front()) >= 0.0;
}

}  // namespace stlmine
