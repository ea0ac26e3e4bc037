#include <set>

#include "doctest.h"
#include "stlmine/enumeration.hpp"
#include "stlmine/parser.hpp"

using namespace stlmine;

namespace {
std::vector<std::string> first_n(GrammarConfig cfg, std::size_t n) {
  Enumerator e(std::move(cfg));
  std::vector<std::string> out;
  while (out.size() < n) {
    auto psi = e.next();
    if (!psi) break;
    out.push_back(psi->to_string());
  }
  return out;
}
}  // namespace

TEST_CASE("canonicalize rewrites redundant shapes away") {
  auto key = [](const char* text) {
    auto c = canonicalize(parse_template(text));
    REQUIRE(c.has_value());
    return c->to_string();
  };
  CHECK(key("!(x > ?q)") == "x < ?p1");  // negated atom = flipped atom
  CHECK(key("!(x <= ?q)") == "x >= ?p1");
  CHECK(key("!!(x > ?q)") == "x > ?p1");
  CHECK(key("x > ?b && x < ?a") == "x < ?p1 && x > ?p2");  // operands sorted
  CHECK(key("y > ?a || x > ?b") == "x > ?p1 || y > ?p2");
  CHECK(key("G[?a,?b](x > ?c)") == "G[?p1,?p2](x > ?p3)");

  // syntactically redundant: dropped outright
  CHECK_FALSE(canonicalize(parse_template("x > ?a && x > ?b")).has_value());
  CHECK_FALSE(canonicalize(parse_template("x > ?a || x > ?b")).has_value());
  CHECK_FALSE(canonicalize(parse_template("x > ?a -> x > ?b")).has_value());
  CHECK_FALSE(
      canonicalize(parse_template("G[?a,?b](G[?c,?d](x > ?e))")).has_value());
  CHECK_FALSE(
      canonicalize(parse_template("F[?a,?b](F[?c,?d](x > ?e))")).has_value());
  // ...but an alternation survives
  CHECK(canonicalize(parse_template("G[?a,?b](F[?c,?d](x > ?e))")).has_value());
}

TEST_CASE("alpha-equivalent templates share a canonical key") {
  CHECK(canonical_key(parse_template("G[?lo,?hi](x < ?limit)")) ==
        canonical_key(parse_template("G[?a,?b](x < ?c)")));
  CHECK(canonical_key(parse_template("x > ?a && y > ?b")) ==
        canonical_key(parse_template("x > ?u && y > ?v")));
  // operand order is canonicalize's job, not the renamer's
  CHECK(canonical_key(canonicalize(parse_template("y > ?u && x > ?v")).value()) ==
        canonical_key(parse_template("x > ?p1 && y > ?p2")));
  CHECK(canonical_key(parse_template("x > ?a")) !=
        canonical_key(parse_template("x < ?a")));
}

TEST_CASE("rename_params numbers parameters in pre-order") {
  ParametricFormula psi =
      rename_params(parse_template("G[?w1,?w2](x > ?c -> y > ?d)"), "q");
  CHECK(psi.to_string() == "G[?q1,?q2](x > ?q3 -> y > ?q4)");
}

TEST_CASE("enumeration starts with the atoms, in signal order") {
  GrammarConfig cfg;
  cfg.signals = {"x", "y"};
  auto names = first_n(cfg, 12);
  REQUIRE(names.size() == 12);
  CHECK(names[0] == "x > ?p1");
  CHECK(names[1] == "x < ?p1");
  CHECK(names[2] == "y > ?p1");
  CHECK(names[3] == "y < ?p1");
  // nothing productive at length 2 (negations fold into atoms); unary
  // temporals open length 3
  CHECK(names[4] == "G[?p1,?p2](x > ?p3)");
  CHECK(names[5] == "G[?p1,?p2](x < ?p3)");
  CHECK(names[6] == "G[?p1,?p2](y > ?p3)");
  CHECK(names[7] == "G[?p1,?p2](y < ?p3)");
  CHECK(names[8] == "F[?p1,?p2](x > ?p3)");
  CHECK(names[11] == "F[?p1,?p2](y < ?p3)");
}

TEST_CASE("no duplicates, no filtered shapes, lengths never decrease") {
  GrammarConfig cfg;
  cfg.signals = {"x", "y"};
  cfg.max_length = 5;
  Enumerator e(cfg);
  std::set<std::string> seen;
  std::size_t last_len = 1;
  std::size_t count = 0;
  while (auto psi = e.next()) {
    ++count;
    std::string k = canonical_key(*psi);
    CHECK(seen.insert(k).second);
    CHECK(psi->node_count() >= last_len);
    CHECK(psi->node_count() <= cfg.max_length);
    last_len = psi->node_count();
    // re-canonicalizing an emitted template is the identity
    auto again = canonicalize(*psi);
    REQUIRE(again.has_value());
    CHECK(again->to_string() == psi->to_string());
  }
  CHECK(count > 100);  // the budget admits a decent crop
  CHECK_FALSE(e.next().has_value());  // stays exhausted
}

TEST_CASE("the delayed-response shape is reachable at length five") {
  GrammarConfig cfg;
  cfg.signals = {"x", "y"};
  cfg.max_length = 5;
  Enumerator e(cfg);
  bool found = false;
  while (auto psi = e.next()) {
    if (psi->to_string() == "G[?p1,?p2](x > ?p3 -> F[?p4,?p5](y > ?p6))") {
      found = true;
      break;
    }
  }
  CHECK(found);
}

TEST_CASE("disabled operators never show up") {
  GrammarConfig cfg;
  cfg.signals = {"u1", "u2"};
  cfg.use_not = cfg.use_eventually = cfg.use_and = cfg.use_implies = false;
  cfg.max_length = 6;  // {G, ||} only
  Enumerator e(cfg);
  std::size_t count = 0;
  while (auto psi = e.next()) {
    ++count;
    std::string s = psi->to_string();
    CHECK(s.find("F[") == std::string::npos);
    CHECK(s.find("&&") == std::string::npos);
    CHECK(s.find("->") == std::string::npos);
    CHECK(s.find('!') == std::string::npos);
  }
  CHECK(count > 0);
}

TEST_CASE("until only enumerates when asked") {
  GrammarConfig cfg;
  cfg.signals = {"x"};
  cfg.max_length = 3;
  for (const auto& s : first_n(cfg, 100))
    CHECK(s.find(" U[") == std::string::npos);

  cfg.use_until = true;
  bool seen_until = false;
  for (const auto& s : first_n(cfg, 100))
    if (s.find(" U[") != std::string::npos) seen_until = true;
  CHECK(seen_until);
}
