#include "stlmine/extraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace stlmine {

Formula shift_formula(const Formula& phi, double c) {
  switch (phi.kind()) {
    case NodeKind::True:
      return phi;  // +inf - c is still +inf
    case NodeKind::Atom:
      switch (phi.cmp()) {
        case Cmp::Ge:
        case Cmp::Gt:
          return Formula::atom(phi.signal(), phi.cmp(), phi.constant() + c);
        case Cmp::Le:
        case Cmp::Lt:
          return Formula::atom(phi.signal(), phi.cmp(), phi.constant() - c);
      }
      break;
    case NodeKind::Not:
      // rob(!f) - c = -(rob(f) + c); normal form only leaves ! on `true` and
      // on Until, and for both the flipped-offset recursion is exact
      return Formula::negation(shift_formula(phi.child(), -c));
    case NodeKind::And:
      return Formula::conjunction(shift_formula(phi.child(0), c),
                                  shift_formula(phi.child(1), c));
    case NodeKind::Or:
      return Formula::disjunction(shift_formula(phi.child(0), c),
                                  shift_formula(phi.child(1), c));
    case NodeKind::Implies:
      // NNF rewrites implications away; a leftover one would break the
      // uniform-shift identity on its left side
      throw std::invalid_argument(
          "shift_formula: input is not in negation normal form");
    case NodeKind::Globally:
      return Formula::globally(phi.window(), shift_formula(phi.child(), c));
    case NodeKind::Eventually:
      return Formula::eventually(phi.window(), shift_formula(phi.child(), c));
    case NodeKind::Until:
      return Formula::until(phi.window(), shift_formula(phi.child(0), c),
                            shift_formula(phi.child(1), c));
  }
  throw std::logic_error("shift_formula: unhandled node kind");
}

namespace {

void append_unique(std::vector<Formula>& list, const Formula& f) {
  for (const auto& g : list)
    if (g == f) return;
  list.push_back(f);
}

// flatten nested chains of one connective into an operand list
void flatten(const Formula& f, NodeKind op, std::vector<Formula>& out) {
  if (f.kind() == op) {
    flatten(f.child(0), op, out);
    flatten(f.child(1), op, out);
    return;
  }
  append_unique(out, f);
}

Formula combine(const std::vector<Formula>& operands, NodeKind op) {
  Formula acc = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i)
    acc = op == NodeKind::And ? Formula::conjunction(acc, operands[i])
                              : Formula::disjunction(acc, operands[i]);
  return acc;
}

struct PathEdge {
  std::size_t feature;
  double threshold;
  bool right;  // feature >= threshold side
};

struct Extractor {
  const DecisionTree& tree;
  const ParametricFormula& psi;
  const std::vector<Valuation>& valuations;
  std::vector<Formula> shifted_cache;  // nnf of instantiation, per feature
  std::vector<bool> cached;
  std::vector<Formula> disjuncts;

  Formula base(std::size_t feature) {
    if (!cached[feature]) {
      shifted_cache[feature] = to_nnf(instantiate(psi, valuations[feature]));
      cached[feature] = true;
    }
    return shifted_cache[feature];
  }

  Formula edge_formula(const PathEdge& e) {
    Formula shifted = shift_formula(base(e.feature), e.threshold);
    return e.right ? shifted : Formula::negation(shifted);
  }

  void walk(int at, std::vector<PathEdge>& path) {
    const TreeNode& n = tree.nodes[static_cast<std::size_t>(at)];
    if (n.is_leaf()) {
      if (n.label != 1) return;
      if (path.empty()) {
        disjuncts.push_back(Formula::truth());
        return;
      }
      std::vector<Formula> conjuncts;
      for (const auto& e : path) {
        Formula f = edge_formula(e);
        std::vector<Formula> parts;
        flatten(f, NodeKind::And, parts);
        for (const auto& p : parts) append_unique(conjuncts, p);
      }
      append_unique(disjuncts, combine(conjuncts, NodeKind::And));
      return;
    }
    std::size_t feature = static_cast<std::size_t>(n.feature);
    path.push_back({feature, n.threshold, false});
    walk(n.left, path);
    path.back().right = true;
    walk(n.right, path);
    path.pop_back();
  }
};

}  // namespace

std::optional<Formula> extract_stl(const DecisionTree& tree,
                                   const ParametricFormula& psi,
                                   const std::vector<Valuation>& valuations) {
  if (tree.nodes.empty())
    throw std::invalid_argument("extract_stl: empty tree");
  Extractor ex{tree,
               psi,
               valuations,
               std::vector<Formula>(valuations.size(), Formula::truth()),
               std::vector<bool>(valuations.size(), false),
               {}};
  std::vector<PathEdge> path;
  ex.walk(0, path);
  if (ex.disjuncts.empty()) return std::nullopt;
  std::vector<Formula> unique;
  for (const auto& d : ex.disjuncts) append_unique(unique, d);
  return combine(unique, NodeKind::Or);
}

}  // namespace stlmine
