#include "stlmine/enumeration.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace stlmine {

namespace {

struct Renamer {
  std::string prefix;
  std::map<std::string, std::string> mapping;

  Coef map_coef(const Coef& c) {
    if (!is_param(c)) return c;
    const auto& old = std::get<std::string>(c);
    auto it = mapping.find(old);
    if (it == mapping.end())
      it = mapping.emplace(old, prefix + std::to_string(mapping.size() + 1))
               .first;
    return it->second;
  }

  ParametricFormula walk(const ParametricFormula& f) {
    switch (f.kind()) {
      case NodeKind::True:
        return ParametricFormula::truth();
      case NodeKind::Atom:
        return ParametricFormula::atom(f.signal(), f.cmp(),
                                       map_coef(f.constant()));
      case NodeKind::Not:
        return ParametricFormula::negation(walk(f.child()));
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Implies: {
        // sequence the recursion ourselves: argument evaluation order is
        // unspecified, and the name counter must run left to right
        ParametricFormula l = walk(f.child(0));
        ParametricFormula r = walk(f.child(1));
        if (f.kind() == NodeKind::And)
          return ParametricFormula::conjunction(std::move(l), std::move(r));
        if (f.kind() == NodeKind::Or)
          return ParametricFormula::disjunction(std::move(l), std::move(r));
        return ParametricFormula::implication(std::move(l), std::move(r));
      }
      case NodeKind::Globally:
      case NodeKind::Eventually:
      case NodeKind::Until: {
        const auto& w = f.window();
        Coef lo = map_coef(w.lo);
        Coef hi = map_coef(w.hi);
        ParametricInterval mapped{std::move(lo), std::move(hi), w.lo_closed,
                                  w.hi_closed};
        if (f.kind() == NodeKind::Globally)
          return ParametricFormula::globally(mapped, walk(f.child()));
        if (f.kind() == NodeKind::Eventually)
          return ParametricFormula::eventually(mapped, walk(f.child()));
        ParametricFormula l = walk(f.child(0));
        ParametricFormula r = walk(f.child(1));
        return ParametricFormula::until(mapped, std::move(l), std::move(r));
      }
    }
    throw std::logic_error("rename_params: unhandled node kind");
  }
};

Cmp negated(Cmp c) {
  switch (c) {
    case Cmp::Ge: return Cmp::Le;
    case Cmp::Gt: return Cmp::Lt;
    case Cmp::Le: return Cmp::Ge;
    case Cmp::Lt: return Cmp::Gt;
  }
  return Cmp::Ge;
}

}  // namespace

ParametricFormula rename_params(const ParametricFormula& psi,
                                const std::string& prefix) {
  Renamer r{prefix, {}};
  return r.walk(psi);
}

std::string canonical_key(const ParametricFormula& psi) {
  return rename_params(psi, "p").to_string();
}

std::optional<ParametricFormula> canonicalize(const ParametricFormula& psi) {
  switch (psi.kind()) {
    case NodeKind::Not: {
      const ParametricFormula& inner = psi.child();
      if (inner.kind() == NodeKind::Not) return canonicalize(inner.child());
      if (inner.kind() == NodeKind::Atom)
        // same robustness function as the opposite atom, one node shorter
        return rename_params(ParametricFormula::atom(inner.signal(),
                                                     negated(inner.cmp()),
                                                     inner.constant()),
                             "p");
      break;
    }
    case NodeKind::Globally:
      if (psi.child().kind() == NodeKind::Globally) return std::nullopt;
      break;
    case NodeKind::Eventually:
      if (psi.child().kind() == NodeKind::Eventually) return std::nullopt;
      break;
    case NodeKind::And:
    case NodeKind::Or: {
      std::string kl = canonical_key(psi.child(0));
      std::string kr = canonical_key(psi.child(1));
      if (kl == kr) return std::nullopt;  // idempotent up to renaming
      if (kr < kl) {
        ParametricFormula swapped =
            psi.kind() == NodeKind::And
                ? ParametricFormula::conjunction(psi.child(1), psi.child(0))
                : ParametricFormula::disjunction(psi.child(1), psi.child(0));
        return rename_params(swapped, "p");
      }
      break;
    }
    case NodeKind::Implies:
      if (canonical_key(psi.child(0)) == canonical_key(psi.child(1)))
        return std::nullopt;  // phi -> phi is vacuous
      break;
    default:
      break;
  }
  return rename_params(psi, "p");
}

Enumerator::Enumerator(GrammarConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.signals.empty())
    throw std::invalid_argument("enumerator: no signals configured");
}

void Enumerator::consider(const ParametricFormula& raw,
                          std::vector<ParametricFormula>& group) {
  auto canon = canonicalize(raw);
  if (!canon) return;
  // a rewrite may shrink the formula (negated atom); the short form already
  // lives in an earlier group, so the key check drops it here
  if (canon->node_count() != raw.node_count()) {
    seen_.insert(canonical_key(*canon));
    return;
  }
  if (seen_.insert(canonical_key(*canon)).second) group.push_back(*canon);
}

void Enumerator::build_group(std::size_t length) {
  std::vector<ParametricFormula> group;
  if (length == 1) {
    for (const auto& s : cfg_.signals) {
      consider(ParametricFormula::atom(s, Cmp::Gt, Coef{std::string("a")}),
               group);
      consider(ParametricFormula::atom(s, Cmp::Lt, Coef{std::string("a")}),
               group);
    }
    groups_.push_back(std::move(group));
    return;
  }

  const auto& prev = groups_[length - 2];
  const ParametricInterval window{Coef{std::string("wa")},
                                  Coef{std::string("wb")}, true, true};
  // negation only wraps atoms; anything deeper is reachable through duals
  if (cfg_.use_not && length == 2)
    for (const auto& f : prev) consider(ParametricFormula::negation(f), group);
  if (cfg_.use_globally)
    for (const auto& f : prev)
      consider(ParametricFormula::globally(window, f), group);
  if (cfg_.use_eventually)
    for (const auto& f : prev)
      consider(ParametricFormula::eventually(window, f), group);

  enum class Bin { And, Or, Implies, Until };
  for (Bin op : {Bin::And, Bin::Or, Bin::Implies, Bin::Until}) {
    if (op == Bin::And && !cfg_.use_and) continue;
    if (op == Bin::Or && !cfg_.use_or) continue;
    if (op == Bin::Implies && !cfg_.use_implies) continue;
    if (op == Bin::Until && !cfg_.use_until) continue;
    for (std::size_t la = 1; la + 1 < length; ++la) {
      std::size_t lb = length - 1 - la;
      for (const auto& a : groups_[la - 1]) {
        ParametricFormula left = rename_params(a, "l");
        for (const auto& b : groups_[lb - 1]) {
          ParametricFormula right = rename_params(b, "r");
          switch (op) {
            case Bin::And:
              consider(ParametricFormula::conjunction(left, right), group);
              break;
            case Bin::Or:
              consider(ParametricFormula::disjunction(left, right), group);
              break;
            case Bin::Implies:
              consider(ParametricFormula::implication(left, right), group);
              break;
            case Bin::Until:
              consider(ParametricFormula::until(window, left, right), group);
              break;
          }
        }
      }
    }
  }
  groups_.push_back(std::move(group));
}

std::optional<ParametricFormula> Enumerator::next() {
  for (;;) {
    if (group_ < groups_.size()) {
      if (item_ < groups_[group_].size()) return groups_[group_][item_++];
      ++group_;
      item_ = 0;
      continue;
    }
    std::size_t next_length = groups_.size() + 1;
    if (next_length > cfg_.max_length) return std::nullopt;
    build_group(next_length);
  }
}

}  // namespace stlmine
