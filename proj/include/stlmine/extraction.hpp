#pragma once

#include <optional>
#include <vector>

#include "stlmine/classifier.hpp"
#include "stlmine/formula.hpp"
#include "stlmine/pstl.hpp"

namespace stlmine {

/* Shift every atom threshold so that the whole formula's robustness drops
 * by exactly c: positive-polarity atoms (>=, >) get +c, negative-polarity
 * atoms (<=, <) get -c.  Requires negation normal form (negations only on
 * `true`); throws std::invalid_argument otherwise.  Satisfies
 *   robustness(shift_formula(phi, c), x, t) = robustness(phi, x, t) - c. */
Formula shift_formula(const Formula& phi, double c);

/* Turn a trained tree back into one formula: every root-to-leaf path that
 * ends in label 1 becomes a conjunction -- a right edge over feature i with
 * threshold c contributes shift_formula(to_nnf(instantiate(psi, v_i)), c),
 * a left edge contributes its negation -- and the paths are joined by
 * disjunction.  Nested &&/|| chains are flattened and duplicate operands
 * dropped.  A root that is itself a label-1 leaf yields `true`; a tree with
 * no label-1 leaf yields nullopt (the "assume nothing works" outcome the
 * miner treats as a failed candidate). */
std::optional<Formula> extract_stl(const DecisionTree& tree,
                                   const ParametricFormula& psi,
                                   const std::vector<Valuation>& valuations);

}  // namespace stlmine
