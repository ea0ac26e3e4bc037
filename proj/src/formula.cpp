#include "stlmine/formula.hpp"

#include <charconv>
#include <stdexcept>

namespace stlmine {

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Ge: return ">=";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Lt: return "<";
  }
  return "?";
}

bool Interval::contains(double d) const {
  if (lo_closed ? d < lo : d <= lo) return false;
  if (hi_closed ? d > hi : d >= hi) return false;
  return true;
}

void Interval::validate() const {
  if (!(lo >= 0.0))
    throw std::invalid_argument("interval: bounds must be non-negative");
  if (lo > hi) throw std::invalid_argument("interval: lo > hi");
  if (lo == hi && !(lo_closed && hi_closed))
    throw std::invalid_argument("interval: degenerate window must be closed");
}

// ---------------------------------------------------------------------------
// construction

Formula Formula::truth() {
  return Formula(std::make_shared<const Node>(Node{NodeKind::True, {}, Cmp::Ge,
                                                   0, {}, {}}));
}

Formula Formula::atom(std::string signal, Cmp cmp, double constant) {
  if (signal.empty()) throw std::invalid_argument("atom: empty signal name");
  return Formula(std::make_shared<const Node>(
      Node{NodeKind::Atom, std::move(signal), cmp, constant, {}, {}}));
}

Formula Formula::negation(Formula f) {
  Node n{NodeKind::Not, {}, Cmp::Ge, 0, {}, {std::move(f)}};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  Node n{NodeKind::And, {}, Cmp::Ge, 0, {}, {std::move(lhs), std::move(rhs)}};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  Node n{NodeKind::Or, {}, Cmp::Ge, 0, {}, {std::move(lhs), std::move(rhs)}};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  Node n{NodeKind::Implies, {}, Cmp::Ge, 0, {},
         {std::move(lhs), std::move(rhs)}};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::globally(Interval window, Formula f) {
  window.validate();
  Node n{NodeKind::Globally, {}, Cmp::Ge, 0, window, {std::move(f)}};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::eventually(Interval window, Formula f) {
  window.validate();
  Node n{NodeKind::Eventually, {}, Cmp::Ge, 0, window, {std::move(f)}};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::until(Interval window, Formula lhs, Formula rhs) {
  window.validate();
  Node n{NodeKind::Until, {}, Cmp::Ge, 0, window,
         {std::move(lhs), std::move(rhs)}};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

std::size_t Formula::node_count() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.node_count();
  return n;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case NodeKind::Atom:
      if (node_->signal != other.node_->signal ||
          node_->cmp != other.node_->cmp ||
          node_->constant != other.node_->constant)
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
// printing
//
// Binding strength, loosest first: -> (right assoc), ||, &&, U, unary.
// The printed form re-parses to the same tree; temporal operands are always
// parenthesized, which is also how the formulas read best.

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_interval(const Interval& w) {
  std::string s;
  s += w.lo_closed ? '[' : '(';
  s += format_double(w.lo);
  s += ',';
  s += format_double(w.hi);
  s += w.hi_closed ? ']' : ')';
  return s;
}

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Implies: return 1;
    case NodeKind::Or: return 2;
    case NodeKind::And: return 3;
    case NodeKind::Until: return 4;
    default: return 5;  // unary operators and primaries
  }
}

std::string print(const Formula& f);

std::string print_child(const Formula& child, int min_prec) {
  if (precedence(child.kind()) < min_prec) return "(" + print(child) + ")";
  return print(child);
}

std::string print(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::True:
      return "true";
    case NodeKind::Atom:
      return f.signal() + " " + cmp_text(f.cmp()) + " " +
             format_double(f.constant());
    case NodeKind::Not:
      if (f.child().kind() == NodeKind::True) return "!true";
      return "!(" + print(f.child()) + ")";
    case NodeKind::And:
      return print_child(f.child(0), 3) + " && " + print_child(f.child(1), 4);
    case NodeKind::Or:
      return print_child(f.child(0), 2) + " || " + print_child(f.child(1), 3);
    case NodeKind::Implies:
      // right associative: the left operand needs parens at equal level
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

std::string Formula::to_string() const { return print(*this); }

// ---------------------------------------------------------------------------

std::set<std::string> support(const Formula& f) {
  std::set<std::string> names;
  if (f.kind() == NodeKind::Atom) {
    names.insert(f.signal());
    return names;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    names.merge(support(f.child(i)));
  return names;
}

// ---------------------------------------------------------------------------
// negation normal form

namespace {

Cmp flip(Cmp c) {
  switch (c) {
    case Cmp::Ge: return Cmp::Lt;
    case Cmp::Gt: return Cmp::Le;
    case Cmp::Le: return Cmp::Gt;
    case Cmp::Lt: return Cmp::Ge;
  }
  return Cmp::Lt;
}

Formula nnf(const Formula& f);

// normal form of !f
Formula neg(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::True:
      return Formula::negation(Formula::truth());  // no complement literal
    case NodeKind::Atom:
      return Formula::atom(f.signal(), flip(f.cmp()), f.constant());
    case NodeKind::Not:
      return nnf(f.child());
    case NodeKind::And:
      return Formula::disjunction(neg(f.child(0)), neg(f.child(1)));
    case NodeKind::Or:
      return Formula::conjunction(neg(f.child(0)), neg(f.child(1)));
    case NodeKind::Implies:
      return Formula::conjunction(nnf(f.child(0)), neg(f.child(1)));
    case NodeKind::Globally:
      return Formula::eventually(f.window(), neg(f.child()));
    case NodeKind::Eventually:
      return Formula::globally(f.window(), neg(f.child()));
    case NodeKind::Until:
      // no dual operator in this grammar; keep the negation on top
      return Formula::negation(
          Formula::until(f.window(), nnf(f.child(0)), nnf(f.child(1))));
  }
  return f;
}

Formula nnf(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::True:
    case NodeKind::Atom:
      return f;
    case NodeKind::Not:
      return neg(f.child());
    case NodeKind::And:
      return Formula::conjunction(nnf(f.child(0)), nnf(f.child(1)));
    case NodeKind::Or:
      return Formula::disjunction(nnf(f.child(0)), nnf(f.child(1)));
    case NodeKind::Implies:
      return Formula::disjunction(neg(f.child(0)), nnf(f.child(1)));
    case NodeKind::Globally:
      return Formula::globally(f.window(), nnf(f.child()));
    case NodeKind::Eventually:
      return Formula::eventually(f.window(), nnf(f.child()));
    case NodeKind::Until:
      return Formula::until(f.window(), nnf(f.child(0)), nnf(f.child(1)));
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f); }

}  // namespace stlmine
