#pragma once

#include <stdexcept>
#include <string>

#include "stlmine/formula.hpp"
#include "stlmine/pstl.hpp"

namespace stlmine {

/* Concrete syntax:
 *
 *   formula  := or ('->' formula)?                  right associative
 *   or       := and ('||' and)*
 *   and      := until ('&&' until)*
 *   until    := unary ('U' interval unary)*
 *   unary    := '!' unary | ('G'|'F') interval unary | primary
 *   primary  := 'true' | '(' formula ')' | atom
 *   atom     := ident ('>='|'<='|'>'|'<') number
 *   interval := ('['|'(') bound ',' bound (']'|')')
 *
 * Keyword forms `not and or implies` are accepted for `! && || ->`.
 * In templates a bound or atom threshold may also be `?name`. */

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

Formula parse_formula(const std::string& text);
ParametricFormula parse_template(const std::string& text);

}  // namespace stlmine
