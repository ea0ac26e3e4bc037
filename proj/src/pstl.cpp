#include "stlmine/pstl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace stlmine {

// ---------------------------------------------------------------------------
// construction

ParametricFormula ParametricFormula::make(Node n) {
  return ParametricFormula(std::make_shared<const Node>(std::move(n)));
}

ParametricFormula ParametricFormula::truth() {
  return make({NodeKind::True, {}, Cmp::Ge, 0.0, {}, {}, {}});
}

ParametricFormula ParametricFormula::atom(std::string signal, Cmp cmp,
                                          Coef constant) {
  if (signal.empty()) throw std::invalid_argument("atom: empty signal name");
  return make({NodeKind::Atom, std::move(signal), cmp, std::move(constant),
               {}, {}, {}});
}

ParametricFormula ParametricFormula::negation(ParametricFormula f) {
  return make({NodeKind::Not, {}, Cmp::Ge, 0.0, {}, {std::move(f)}, {}});
}

ParametricFormula ParametricFormula::conjunction(ParametricFormula l,
                                                 ParametricFormula r) {
  return make({NodeKind::And, {}, Cmp::Ge, 0.0, {},
               {std::move(l), std::move(r)}, {}});
}

ParametricFormula ParametricFormula::disjunction(ParametricFormula l,
                                                 ParametricFormula r) {
  return make({NodeKind::Or, {}, Cmp::Ge, 0.0, {},
               {std::move(l), std::move(r)}, {}});
}

ParametricFormula ParametricFormula::implication(ParametricFormula l,
                                                 ParametricFormula r) {
  return make({NodeKind::Implies, {}, Cmp::Ge, 0.0, {},
               {std::move(l), std::move(r)}, {}});
}

namespace {

void validate_if_concrete(const ParametricInterval& w) {
  if (is_param(w.lo) || is_param(w.hi)) return;
  Interval concrete{std::get<double>(w.lo), std::get<double>(w.hi),
                    w.lo_closed, w.hi_closed};
  concrete.validate();
}

}  // namespace

ParametricFormula ParametricFormula::globally(ParametricInterval w,
                                              ParametricFormula f) {
  validate_if_concrete(w);
  return make({NodeKind::Globally, {}, Cmp::Ge, 0.0, std::move(w),
               {std::move(f)}, {}});
}

ParametricFormula ParametricFormula::eventually(ParametricInterval w,
                                                ParametricFormula f) {
  validate_if_concrete(w);
  return make({NodeKind::Eventually, {}, Cmp::Ge, 0.0, std::move(w),
               {std::move(f)}, {}});
}

ParametricFormula ParametricFormula::until(ParametricInterval w,
                                           ParametricFormula l,
                                           ParametricFormula r) {
  validate_if_concrete(w);
  return make({NodeKind::Until, {}, Cmp::Ge, 0.0, std::move(w),
               {std::move(l), std::move(r)}, {}});
}

std::size_t ParametricFormula::node_count() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.node_count();
  return n;
}

bool ParametricFormula::operator==(const ParametricFormula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case NodeKind::Atom:
      if (node_->signal != other.node_->signal ||
          node_->cmp != other.node_->cmp ||
          !(node_->constant == other.node_->constant))
        return false;
      break;
    case NodeKind::Globally:
    case NodeKind::Eventually:
    case NodeKind::Until:
      if (!(node_->window == other.node_->window)) return false;
      break;
    default:
      break;
  }
  if (node_->children.size() != other.node_->children.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i)
    if (!(node_->children[i] == other.node_->children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// parameter discovery

namespace {

struct ParamCollector {
  std::vector<Parameter> params;

  void add(const std::string& name, ParamKind kind) {
    for (auto& p : params) {
      if (p.name != name) continue;
      if (p.kind != kind)
        throw std::invalid_argument("parameter '?" + name +
                                    "' used as both value and time");
      return;
    }
    params.push_back(Parameter{name, kind, 0.0, 0.0, false});
  }

  void add_coef(const Coef& c, ParamKind kind) {
    if (is_param(c)) add(std::get<std::string>(c), kind);
  }

  void walk(const ParametricFormula& f) {
    switch (f.kind()) {
      case NodeKind::Atom:
        add_coef(f.constant(), ParamKind::Value);
        break;
      case NodeKind::Globally:
      case NodeKind::Eventually:
      case NodeKind::Until:
        add_coef(f.window().lo, ParamKind::Time);
        add_coef(f.window().hi, ParamKind::Time);
        break;
      default:
        break;
    }
    for (std::size_t i = 0; i < f.arity(); ++i) walk(f.child(i));
  }
};

}  // namespace

std::vector<Parameter> ParametricFormula::params() const {
  ParamCollector collector;
  collector.walk(*this);
  if (!node_->params.empty()) {
    // ranges were attached; merge them in
    for (auto& p : collector.params) {
      for (const auto& bound : node_->params) {
        if (bound.name == p.name) {
          p.lo = bound.lo;
          p.hi = bound.hi;
          p.bounded = bound.bounded;
        }
      }
    }
  }
  return collector.params;
}

ParametricFormula ParametricFormula::with_ranges(
    const std::map<std::string, std::pair<double, double>>& ranges) const {
  ParamCollector collector;
  collector.walk(*this);
  for (auto& p : collector.params) {
    auto it = ranges.find(p.name);
    if (it == ranges.end())
      throw std::invalid_argument("no range given for parameter '?" + p.name +
                                  "'");
    if (!(it->second.first <= it->second.second))
      throw std::invalid_argument("range for '?" + p.name + "' has lo > hi");
    p.lo = it->second.first;
    p.hi = it->second.second;
    p.bounded = true;
  }
  Node n = *node_;
  n.params = std::move(collector.params);
  return make(std::move(n));
}

namespace {

// signal whose box bounds a value parameter: the atom it appears in
void collect_host_signals(const ParametricFormula& f,
                          std::map<std::string, std::string>& hosts) {
  if (f.kind() == NodeKind::Atom && is_param(f.constant()))
    hosts.emplace(std::get<std::string>(f.constant()), f.signal());
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_host_signals(f.child(i), hosts);
}

}  // namespace

ParametricFormula ParametricFormula::with_default_ranges(
    const std::map<std::string, std::pair<double, double>>& signal_boxes,
    double t_max) const {
  std::map<std::string, std::string> hosts;
  collect_host_signals(*this, hosts);
  std::map<std::string, std::pair<double, double>> ranges;
  for (const auto& p : params()) {
    if (p.kind == ParamKind::Time) {
      ranges[p.name] = {0.0, t_max};
      continue;
    }
    auto box = signal_boxes.find(hosts.at(p.name));
    if (box == signal_boxes.end())
      throw std::invalid_argument("no box for signal '" + hosts.at(p.name) +
                                  "' needed by parameter '?" + p.name + "'");
    ranges[p.name] = box->second;
  }
  return with_ranges(ranges);
}

// ---------------------------------------------------------------------------
// printing (same layout as Formula, thresholds and bounds may be ?params)

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_coef(const Coef& c) {
  if (is_param(c)) return "?" + std::get<std::string>(c);
  return format_double(std::get<double>(c));
}

std::string format_interval(const ParametricInterval& w) {
  std::string s;
  s += w.lo_closed ? '[' : '(';
  s += format_coef(w.lo);
  s += ',';
  s += format_coef(w.hi);
  s += w.hi_closed ? ']' : ')';
  return s;
}

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Implies: return 1;
    case NodeKind::Or: return 2;
    case NodeKind::And: return 3;
    case NodeKind::Until: return 4;
    default: return 5;
  }
}

std::string print(const ParametricFormula& f);

std::string print_child(const ParametricFormula& child, int min_prec) {
  if (precedence(child.kind()) < min_prec) return "(" + print(child) + ")";
  return print(child);
}

std::string print(const ParametricFormula& f) {
  switch (f.kind()) {
    case NodeKind::True:
      return "true";
    case NodeKind::Atom:
      return f.signal() + " " + cmp_text(f.cmp()) + " " +
             format_coef(f.constant());
    case NodeKind::Not:
      if (f.child().kind() == NodeKind::True) return "!true";
      return "!(" + print(f.child()) + ")";
    case NodeKind::And:
      return print_child(f.child(0), 3) + " && " + print_child(f.child(1), 4);
    case NodeKind::Or:
      return print_child(f.child(0), 2) + " || " + print_child(f.child(1), 3);
    case NodeKind::Implies:
      return print_child(f.child(0), 2) + " -> " + print_child(f.child(1), 1);
    case NodeKind::Globally:
      return "G" + format_interval(f.window()) + "(" + print(f.child()) + ")";
    case NodeKind::Eventually:
      return "F" + format_interval(f.window()) + "(" + print(f.child()) + ")";
    case NodeKind::Until:
      return print_child(f.child(0), 5) + " U" + format_interval(f.window()) +
             " " + print_child(f.child(1), 5);
  }
  return "?";
}

}  // namespace

std::string ParametricFormula::to_string() const { return print(*this); }

// ---------------------------------------------------------------------------
// instantiation

namespace {

double resolve(const Coef& c, const Valuation& nu,
               const std::vector<Parameter>& params) {
  if (!is_param(c)) return std::get<double>(c);
  const auto& name = std::get<std::string>(c);
  auto it = nu.find(name);
  if (it == nu.end())
    throw std::invalid_argument("instantiate: no value for parameter '?" +
                                name + "'");
  for (const auto& p : params)
    if (p.name == name && p.bounded && (it->second < p.lo || it->second > p.hi))
      throw std::invalid_argument("instantiate: value for '?" + name +
                                  "' outside its range");
  return it->second;
}

Formula build(const ParametricFormula& f, const Valuation& nu,
              const std::vector<Parameter>& params) {
  switch (f.kind()) {
    case NodeKind::True:
      return Formula::truth();
    case NodeKind::Atom:
      return Formula::atom(f.signal(), f.cmp(),
                           resolve(f.constant(), nu, params));
    case NodeKind::Not:
      return Formula::negation(build(f.child(), nu, params));
    case NodeKind::And:
      return Formula::conjunction(build(f.child(0), nu, params),
                                  build(f.child(1), nu, params));
    case NodeKind::Or:
      return Formula::disjunction(build(f.child(0), nu, params),
                                  build(f.child(1), nu, params));
    case NodeKind::Implies:
      return Formula::implication(build(f.child(0), nu, params),
                                  build(f.child(1), nu, params));
    case NodeKind::Globally:
    case NodeKind::Eventually:
    case NodeKind::Until: {
      Interval w{resolve(f.window().lo, nu, params),
                 resolve(f.window().hi, nu, params), f.window().lo_closed,
                 f.window().hi_closed};
      // the factory validates; surfaces "interval: lo > hi" style messages
      if (f.kind() == NodeKind::Globally)
        return Formula::globally(w, build(f.child(), nu, params));
      if (f.kind() == NodeKind::Eventually)
        return Formula::eventually(w, build(f.child(), nu, params));
      return Formula::until(w, build(f.child(0), nu, params),
                            build(f.child(1), nu, params));
    }
  }
  throw std::logic_error("instantiate: unhandled node kind");
}

}  // namespace

Formula instantiate(const ParametricFormula& psi, const Valuation& nu) {
  return build(psi, nu, psi.params());
}

// ---------------------------------------------------------------------------
// parameter space and lattice sampling

bool OrderingConstraint::satisfied_by(const Valuation& nu) const {
  auto value = [&nu](const Coef& c) {
    return is_param(c) ? nu.at(std::get<std::string>(c)) : std::get<double>(c);
  };
  const double l = value(lo);
  const double h = value(hi);
  return strict ? l < h : l <= h;
}

bool ParamSpace::valid(const Valuation& nu) const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&nu](const auto& c) { return c.satisfied_by(nu); });
}

namespace {

void collect_constraints(const ParametricFormula& f,
                         std::vector<OrderingConstraint>& out) {
  switch (f.kind()) {
    case NodeKind::Globally:
    case NodeKind::Eventually:
    case NodeKind::Until: {
      const auto& w = f.window();
      if (is_param(w.lo) || is_param(w.hi)) {
        // two parameters: strictly ordered, so windows never degenerate;
        // parameter-against-constant: exactly what makes the window valid
        bool both_params = is_param(w.lo) && is_param(w.hi);
        bool strict = both_params || !(w.lo_closed && w.hi_closed);
        out.push_back(OrderingConstraint{w.lo, w.hi, strict});
      }
      break;
    }
    default:
      break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    collect_constraints(f.child(i), out);
}

}  // namespace

ParamSpace param_space(const ParametricFormula& psi) {
  ParamSpace space;
  space.params = psi.params();
  for (const auto& p : space.params)
    if (!p.bounded)
      throw std::invalid_argument("param_space: parameter '?" + p.name +
                                  "' has no range attached");
  collect_constraints(psi, space.constraints);
  return space;
}

namespace {

std::vector<double> axis_values(const Parameter& p, std::size_t count) {
  std::vector<double> values;
  values.reserve(count);
  if (count == 1 || p.lo == p.hi) {
    values.push_back(p.lo + (p.hi - p.lo) / 2.0);
    return values;
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (j == 0)
      values.push_back(p.lo);
    else if (j + 1 == count)
      values.push_back(p.hi);
    else
      values.push_back(p.lo + (p.hi - p.lo) * static_cast<double>(j) /
                                  static_cast<double>(count - 1));
  }
  return values;
}

// quick infeasibility check so impossible spaces fail with a clear message
// instead of a lattice-growth timeout
void check_feasible(const ParamSpace& space) {
  auto range = [&space](const Coef& c) -> std::pair<double, double> {
    if (!is_param(c)) {
      double v = std::get<double>(c);
      return {v, v};
    }
    for (const auto& p : space.params)
      if (p.name == std::get<std::string>(c)) return {p.lo, p.hi};
    throw std::invalid_argument("grid_sample: constraint references unknown "
                                "parameter");
  };
  for (const auto& c : space.constraints) {
    auto [llo, lhi] = range(c.lo);
    auto [hlo, hhi] = range(c.hi);
    (void)lhi;
    (void)hlo;
    if (c.strict ? !(llo < hhi) : !(llo <= hhi))
      throw std::invalid_argument(
          "grid_sample: parameter space is empty under its ordering "
          "constraints");
  }
}

}  // namespace

std::vector<Valuation> grid_sample(const ParamSpace& space, std::size_t m) {
  if (m == 0) throw std::invalid_argument("grid_sample: m must be positive");
  if (space.params.empty()) return {Valuation{}};
  check_feasible(space);

  const std::size_t n = space.params.size();
  std::vector<bool> degenerate(n);
  std::size_t free_axes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    degenerate[i] = space.params[i].lo == space.params[i].hi;
    if (!degenerate[i]) ++free_axes;
  }

  /* Odd per-axis counts, as equal as possible: every axis keeps its box
   * endpoints and midpoint at any resolution.  Start at the smallest odd k
   * with k^free_axes >= m, then widen the sparsest axis until the ordering
   * constraints leave at least m lattice points. */
  std::vector<std::size_t> counts(n, 1);
  if (free_axes > 0) {
    std::size_t k = 1;
    auto enough = [&](std::size_t kk) {
      double product = 1;
      for (std::size_t i = 0; i < free_axes; ++i) {
        product *= static_cast<double>(kk);
        if (product >= static_cast<double>(m)) return true;
      }
      return product >= static_cast<double>(m);
    };
    while (!enough(k)) k += 2;
    for (std::size_t i = 0; i < n; ++i)
      if (!degenerate[i]) counts[i] = k;
  }

  constexpr double kLatticeCap = 5e7;
  for (;;) {
    double total = 1;
    for (auto c : counts) total *= static_cast<double>(c);
    if (total > kLatticeCap)
      throw std::invalid_argument(
          "grid_sample: could not find enough valid lattice points (space "
          "too constrained for m)");

    std::vector<std::vector<double>> axes(n);
    for (std::size_t i = 0; i < n; ++i)
      axes[i] = axis_values(space.params[i], counts[i]);

    // lexicographic sweep, axis 0 slowest
    std::vector<Valuation> picked;
    std::vector<std::size_t> idx(n, 0);
    Valuation nu;
    for (std::size_t i = 0; i < n; ++i) nu[space.params[i].name] = axes[i][0];
    for (;;) {
      if (space.valid(nu)) {
        if (picked.size() < m) picked.push_back(nu);
        // past m we only need to know the count is reached
        if (picked.size() == m) break;
      }
      std::size_t axis = n;
      while (axis-- > 0) {
        if (++idx[axis] < counts[axis]) {
          nu[space.params[axis].name] = axes[axis][idx[axis]];
          for (std::size_t later = axis + 1; later < n; ++later) {
            idx[later] = 0;
            nu[space.params[later].name] = axes[later][0];
          }
          break;
        }
        if (axis == 0) {
          axis = SIZE_MAX;
          break;
        }
      }
      if (axis == SIZE_MAX) break;  // odometer rolled over
    }
    if (picked.size() == m) return picked;

    // not enough valid points: widen the sparsest non-degenerate axis
    std::size_t target = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (degenerate[i]) continue;
      if (target == n || counts[i] < counts[target]) target = i;
    }
    if (target == n)
      throw std::invalid_argument(
          "grid_sample: space has no free axis but fewer than m valid points");
    counts[target] += 2;
  }
}

}  // namespace stlmine
