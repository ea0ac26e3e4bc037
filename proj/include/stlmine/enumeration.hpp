#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stlmine/pstl.hpp"

namespace stlmine {

/* Which pieces of the grammar the enumerator may use, and how big the
 * formulas may grow.  Length = AST node count (an interval-annotated
 * temporal operator counts as one node, atoms count one each). */
struct GrammarConfig {
  std::vector<std::string> signals;
  bool use_not = true;
  bool use_globally = true;
  bool use_eventually = true;
  bool use_and = true;
  bool use_or = true;
  bool use_implies = true;
  bool use_until = false;  // inflates the search; rarely earns its keep
  std::size_t max_length = 5;  // largest emitted node count
};

/* Rewrites a raw candidate into its stored form, or rejects it as
 * syntactically redundant:
 *   - double negation collapses;
 *   - a negated atom becomes the opposite atom (same robustness function,
 *     one node shorter, so it dedupes against the existing atom);
 *   - operands of && and || are sorted by their printed form; equal
 *     operands (after parameter renaming) are rejected, as is phi -> phi;
 *   - directly nested G(G(.)) and F(F(.)) are rejected.
 * Parameters of the result are renamed p1, p2, ... in pre-order. */
std::optional<ParametricFormula> canonicalize(const ParametricFormula& psi);

// Printed form with parameters renamed positionally; two templates are
// alpha-equivalent iff their keys match.
std::string canonical_key(const ParametricFormula& psi);

// Rebuild with parameters renamed prefix1, prefix2, ... in pre-order.
ParametricFormula rename_params(const ParametricFormula& psi,
                                const std::string& prefix);

/* Yields every canonical template of node count 1, 2, ... up to
 * max_length, in non-decreasing length.  Within a length: unary operators
 * (!, G, F) over the previous group, then binary operators (&&, ||, ->, U)
 * over every split of the remaining budget.  Each emission carries fresh
 * parameter names p1..pk and no attached ranges. */
class Enumerator {
public:
  explicit Enumerator(GrammarConfig cfg);

  // next template, or nullopt once everything of length <= max_length is out
  std::optional<ParametricFormula> next();

  const GrammarConfig& config() const { return cfg_; }

private:
  void build_group(std::size_t length);
  void consider(const ParametricFormula& raw, std::vector<ParametricFormula>& group);

  GrammarConfig cfg_;
  std::vector<std::vector<ParametricFormula>> groups_;  // [length-1] -> formulas
  std::set<std::string> seen_;
  std::size_t group_ = 0;  // index into groups_
  std::size_t item_ = 0;   // cursor within the group
};

}  // namespace stlmine
