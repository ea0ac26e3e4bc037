#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stlmine/formula.hpp"

namespace stlmine {

enum class ParamKind { Value, Time };

/* A formula template parameter.  Kind is inferred from where the parameter
 * sits (atom threshold vs. window endpoint); a parameter may appear several
 * times but always with one kind.  lo/hi give the search range; templates
 * fresh out of the enumerator are unbounded until ranges are attached. */
struct Parameter {
  std::string name;
  ParamKind kind = ParamKind::Value;
  double lo = 0.0;
  double hi = 0.0;
  bool bounded = false;

  bool operator==(const Parameter&) const = default;
};

// Atom threshold or window endpoint: a literal number or `?name`.
using Coef = std::variant<double, std::string>;

inline bool is_param(const Coef& c) { return c.index() == 1; }

struct ParametricInterval {
  Coef lo = 0.0;
  Coef hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;
  bool operator==(const ParametricInterval&) const = default;
};

using Valuation = std::map<std::string, double>;

/* Formula template: a formula tree whose atom thresholds and window
 * endpoints may be parameters.  Like Formula, an immutable value type. */
class ParametricFormula {
public:
  static ParametricFormula truth();
  static ParametricFormula atom(std::string signal, Cmp cmp, Coef constant);
  static ParametricFormula negation(ParametricFormula f);
  static ParametricFormula conjunction(ParametricFormula l, ParametricFormula r);
  static ParametricFormula disjunction(ParametricFormula l, ParametricFormula r);
  static ParametricFormula implication(ParametricFormula l, ParametricFormula r);
  static ParametricFormula globally(ParametricInterval w, ParametricFormula f);
  static ParametricFormula eventually(ParametricInterval w, ParametricFormula f);
  static ParametricFormula until(ParametricInterval w, ParametricFormula l,
                                 ParametricFormula r);

  NodeKind kind() const { return node_->kind; }
  const std::string& signal() const { return node_->signal; }
  Cmp cmp() const { return node_->cmp; }
  const Coef& constant() const { return node_->constant; }
  const ParametricInterval& window() const { return node_->window; }
  std::size_t arity() const { return node_->children.size(); }
  const ParametricFormula& child(std::size_t i = 0) const {
    return node_->children[i];
  }

  std::size_t node_count() const;
  std::string to_string() const;

  // Parameters in order of first appearance (pre-order walk).
  std::vector<Parameter> params() const;

  // Copy with search ranges filled in; throws if a name is missing.
  ParametricFormula with_ranges(
      const std::map<std::string, std::pair<double, double>>& ranges) const;

  /* Default range policy: a value parameter ranges over the box of the
   * signal its atom tests, a time parameter over [0, t_max]. */
  ParametricFormula with_default_ranges(
      const std::map<std::string, std::pair<double, double>>& signal_boxes,
      double t_max) const;

  bool operator==(const ParametricFormula& other) const;

private:
  struct Node {
    NodeKind kind;
    std::string signal;
    Cmp cmp = Cmp::Ge;
    Coef constant = 0.0;
    ParametricInterval window;
    std::vector<ParametricFormula> children;
    std::vector<Parameter> params;  // pre-order, ranges if attached
  };

  explicit ParametricFormula(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static ParametricFormula make(Node n);
  std::shared_ptr<const Node> node_;
};

// Substitute parameter values.  Throws on a missing or out-of-range value,
// or when an instantiated window comes out invalid (e.g. lo > hi).
Formula instantiate(const ParametricFormula& psi, const Valuation& nu);

/* Search box for a template's parameters plus the window-ordering
 * constraints.  Endpoint pairs `[?a,?b]` demand a < b strictly; a window
 * mixing a constant with a parameter only demands that the instantiated
 * interval is valid. */
struct OrderingConstraint {
  Coef lo;
  Coef hi;
  bool strict = true;

  bool satisfied_by(const Valuation& nu) const;
};

struct ParamSpace {
  std::vector<Parameter> params;
  std::vector<OrderingConstraint> constraints;

  bool valid(const Valuation& nu) const;
};

// Build the space from a template with ranges attached.
ParamSpace param_space(const ParametricFormula& psi);

/* Exactly m valuations on a regular axis-aligned lattice.  Per-axis counts
 * are odd and as equal as possible (so every axis contains its endpoints
 * and midpoint at any resolution); the lattice is refined until at least m
 * points survive the ordering constraints, then the first m in lexicographic
 * axis order are returned.  Deterministic; throws if the constrained space
 * cannot yield m points. */
std::vector<Valuation> grid_sample(const ParamSpace& space, std::size_t m);

}  // namespace stlmine
