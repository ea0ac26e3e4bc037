#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace stlmine {

enum class Cmp { Ge, Le, Gt, Lt };

const char* cmp_text(Cmp c);

/* Time window attached to a temporal operator.  Bounds are in seconds,
 * relative to the evaluation instant; either end may be open or closed.
 * Windows are required to be non-negative and non-degenerate unless both
 * ends are closed. */
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  // Is d inside the window?  Exact comparisons -- no epsilon.
  bool contains(double d) const;
  void validate() const;  // throws std::invalid_argument
  bool operator==(const Interval&) const = default;
};

enum class NodeKind {
  True,
  Atom,        // signal cmp constant
  Not,
  And,
  Or,
  Implies,
  Globally,    // G[I]
  Eventually,  // F[I]
  Until        // lhs U[I] rhs
};

/* Immutable formula tree.  Formula is a cheap value type (shared pointer to
 * an immutable node); construction goes through the named factories. */
class Formula {
public:
  static Formula truth();
  static Formula atom(std::string signal, Cmp cmp, double constant);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula globally(Interval window, Formula f);
  static Formula eventually(Interval window, Formula f);
  static Formula until(Interval window, Formula lhs, Formula rhs);

  NodeKind kind() const { return node_->kind; }
  const std::string& signal() const { return node_->signal; }
  Cmp cmp() const { return node_->cmp; }
  double constant() const { return node_->constant; }
  const Interval& window() const { return node_->window; }
  std::size_t arity() const { return node_->children.size(); }
  const Formula& child(std::size_t i = 0) const { return node_->children[i]; }

  std::size_t node_count() const;
  std::string to_string() const;

  bool operator==(const Formula& other) const;

private:
  struct Node {
    NodeKind kind;
    std::string signal;   // Atom only
    Cmp cmp = Cmp::Ge;    // Atom only
    double constant = 0;  // Atom only
    Interval window;      // temporal operators only
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Set of signal names referenced by the formula's atoms.
std::set<std::string> support(const Formula& f);

/* Negation normal form: implications rewritten, negations pushed to the
 * atoms (comparator flipped) and through G/F duals.  Two shapes keep their
 * negation because the grammar has no complement for them: `!true` and a
 * negated Until.  Robustness is preserved exactly. */
Formula to_nnf(const Formula& f);

}  // namespace stlmine
