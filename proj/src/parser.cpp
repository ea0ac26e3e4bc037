#include "stlmine/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

namespace stlmine {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  Param,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Bang,
  AndAnd,
  OrOr,
  Arrow,
  Ge,
  Le,
  Gt,
  Lt,
};

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;  // identifier / parameter name
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { scan_all(); }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = cursor_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  Token next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++cursor_;
    return t;
  }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek().pos, std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(std::size_t pos, const std::string& message) const {
    throw SyntaxError(message, pos);
  }

 private:
  void scan_all() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                text_[i] == '_'))
          ++i;
        std::string word = text_.substr(start, i - start);
        if (word == "not")
          tokens_.push_back({Tok::Bang, start, {}});
        else if (word == "and")
          tokens_.push_back({Tok::AndAnd, start, {}});
        else if (word == "or")
          tokens_.push_back({Tok::OrOr, start, {}});
        else if (word == "implies")
          tokens_.push_back({Tok::Arrow, start, {}});
        else
          tokens_.push_back({Tok::Ident, start, std::move(word)});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
          (c == '-' && i + 1 < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[i + 1])) ||
            text_[i + 1] == '.'))) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start,
                                         text_.data() + text_.size(), value);
        if (ec != std::errc{} || ptr == text_.data() + start)
          fail(start, "malformed number");
        i = static_cast<std::size_t>(ptr - text_.data());
        tokens_.push_back({Tok::Number, start, {}, value});
        continue;
      }
      if (c == '?') {
        ++i;
        std::size_t name_start = i;
        while (i < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                text_[i] == '_'))
          ++i;
        if (i == name_start) fail(start, "expected a parameter name after '?'");
        tokens_.push_back({Tok::Param, start,
                           text_.substr(name_start, i - name_start)});
        continue;
      }
      switch (c) {
        case '(': tokens_.push_back({Tok::LParen, start, {}}); ++i; continue;
        case ')': tokens_.push_back({Tok::RParen, start, {}}); ++i; continue;
        case '[': tokens_.push_back({Tok::LBracket, start, {}}); ++i; continue;
        case ']': tokens_.push_back({Tok::RBracket, start, {}}); ++i; continue;
        case ',': tokens_.push_back({Tok::Comma, start, {}}); ++i; continue;
        case '!': tokens_.push_back({Tok::Bang, start, {}}); ++i; continue;
        case '&':
          if (i + 1 < text_.size() && text_[i + 1] == '&') {
            tokens_.push_back({Tok::AndAnd, start, {}});
            i += 2;
            continue;
          }
          fail(start, "expected '&&'");
        case '|':
          if (i + 1 < text_.size() && text_[i + 1] == '|') {
            tokens_.push_back({Tok::OrOr, start, {}});
            i += 2;
            continue;
          }
          fail(start, "expected '||'");
        case '-':
          if (i + 1 < text_.size() && text_[i + 1] == '>') {
            tokens_.push_back({Tok::Arrow, start, {}});
            i += 2;
            continue;
          }
          fail(start, "stray '-'");
        case '>':
          if (i + 1 < text_.size() && text_[i + 1] == '=') {
            tokens_.push_back({Tok::Ge, start, {}});
            i += 2;
          } else {
            tokens_.push_back({Tok::Gt, start, {}});
            ++i;
          }
          continue;
        case '<':
          if (i + 1 < text_.size() && text_[i + 1] == '=') {
            tokens_.push_back({Tok::Le, start, {}});
            i += 2;
          } else {
            tokens_.push_back({Tok::Lt, start, {}});
            ++i;
          }
          continue;
        default:
          fail(start, std::string("unexpected character '") + c + "'");
      }
    }
    tokens_.push_back({Tok::End, text_.size(), {}});
  }

  const std::string& text_;
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, bool allow_params)
      : lex_(text), allow_params_(allow_params) {}

  ParametricFormula run() {
    ParametricFormula f = parse_implies();
    if (lex_.peek().kind != Tok::End)
      lex_.fail(lex_.peek().pos, "unexpected trailing input");
    return f;
  }

 private:
  // implies (right assoc) < or < and < until < unary < primary
  ParametricFormula parse_implies() {
    ParametricFormula left = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.next();
      return ParametricFormula::implication(std::move(left), parse_implies());
    }
    return left;
  }

  ParametricFormula parse_or() {
    ParametricFormula f = parse_and();
    while (lex_.peek().kind == Tok::OrOr) {
      lex_.next();
      f = ParametricFormula::disjunction(std::move(f), parse_and());
    }
    return f;
  }

  ParametricFormula parse_and() {
    ParametricFormula f = parse_until();
    while (lex_.peek().kind == Tok::AndAnd) {
      lex_.next();
      f = ParametricFormula::conjunction(std::move(f), parse_until());
    }
    return f;
  }

  bool at_temporal(const char* letter) const {
    const Token& t = lex_.peek();
    if (t.kind != Tok::Ident || t.text != letter) return false;
    Tok after = lex_.peek(1).kind;
    return after == Tok::LBracket || after == Tok::LParen;
  }

  ParametricFormula parse_until() {
    ParametricFormula f = parse_unary();
    while (at_temporal("U")) {
      lex_.next();
      ParametricInterval w = parse_interval();
      f = ParametricFormula::until(std::move(w), std::move(f), parse_unary());
    }
    return f;
  }

  ParametricFormula parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Bang) {
      lex_.next();
      return ParametricFormula::negation(parse_unary());
    }
    if (at_temporal("G")) {
      lex_.next();
      ParametricInterval w = parse_interval();
      return ParametricFormula::globally(std::move(w), parse_unary());
    }
    if (at_temporal("F")) {
      lex_.next();
      ParametricInterval w = parse_interval();
      return ParametricFormula::eventually(std::move(w), parse_unary());
    }
    return parse_primary();
  }

  ParametricFormula parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.next();
      ParametricFormula f = parse_implies();
      lex_.expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident && t.text == "true") {
      lex_.next();
      return ParametricFormula::truth();
    }
    if (t.kind == Tok::Ident) return parse_atom();
    lex_.fail(t.pos, "expected a formula");
  }

  ParametricFormula parse_atom() {
    Token name = lex_.next();
    Cmp cmp;
    switch (lex_.peek().kind) {
      case Tok::Ge: cmp = Cmp::Ge; break;
      case Tok::Le: cmp = Cmp::Le; break;
      case Tok::Gt: cmp = Cmp::Gt; break;
      case Tok::Lt: cmp = Cmp::Lt; break;
      default:
        lex_.fail(lex_.peek().pos, "expected a comparison after '" +
                                       name.text + "'");
    }
    lex_.next();
    return ParametricFormula::atom(name.text, cmp, parse_coef("a threshold"));
  }

  Coef parse_coef(const char* what) {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Number) return lex_.next().number;
    if (t.kind == Tok::Param) {
      if (!allow_params_)
        lex_.fail(t.pos, "parameters are only allowed in templates");
      return lex_.next().text;
    }
    lex_.fail(t.pos, std::string("expected ") + what);
  }

  // [lo,hi] / (lo,hi) / mixed brackets; in templates the bounds may be ?params
  ParametricInterval parse_interval() {
    const Token& open = lex_.peek();
    bool lo_closed;
    if (open.kind == Tok::LBracket)
      lo_closed = true;
    else if (open.kind == Tok::LParen)
      lo_closed = false;
    else
      lex_.fail(open.pos, "expected an interval");
    std::size_t open_pos = open.pos;
    lex_.next();
    Coef lo = parse_coef("an interval bound");
    lex_.expect(Tok::Comma, "','");
    Coef hi = parse_coef("an interval bound");
    const Token& close = lex_.peek();
    bool hi_closed;
    if (close.kind == Tok::RBracket)
      hi_closed = true;
    else if (close.kind == Tok::RParen)
      hi_closed = false;
    else
      lex_.fail(close.pos, "expected ']' or ')'");
    lex_.next();
    ParametricInterval w{std::move(lo), std::move(hi), lo_closed, hi_closed};
    if (!is_param(w.lo) && !is_param(w.hi)) {
      try {
        Interval{std::get<double>(w.lo), std::get<double>(w.hi), lo_closed,
                 hi_closed}
            .validate();
      } catch (const std::invalid_argument& e) {
        lex_.fail(open_pos, e.what());
      }
    }
    return w;
  }

  Lexer lex_;
  bool allow_params_;
};

}  // namespace

Formula parse_formula(const std::string& text) {
  Parser parser(text, /*allow_params=*/false);
  return instantiate(parser.run(), Valuation{});
}

ParametricFormula parse_template(const std::string& text) {
  Parser parser(text, /*allow_params=*/true);
  ParametricFormula f = parser.run();
  f.params();  // rejects a name used as both value and time parameter
  return f;
}

}  // namespace stlmine
