#include "delp/argumentation.hpp"

#include <algorithm>
#include <set>

namespace delp {

namespace {

bool subset_of(const std::vector<RuleId>& a, const std::vector<RuleId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool argument_order(const ArgumentStructure& a, const ArgumentStructure& b) {
  if (a.rules.size() != b.rules.size()) return a.rules.size() < b.rules.size();
  return a.rules < b.rules;
}

}  // namespace

ArgumentStructure make_argument(const GroundProgram& g, std::vector<RuleId> rules, Lit conclusion) {
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  ArgumentStructure a;
  a.conclusion = conclusion;
  for (RuleId id : rules) {
    const auto& as = g.rule(id).assumptions;
    a.assumptions.insert(a.assumptions.end(), as.begin(), as.end());
  }
  std::sort(a.assumptions.begin(), a.assumptions.end());
  a.assumptions.erase(std::unique(a.assumptions.begin(), a.assumptions.end()), a.assumptions.end());
  a.rules = std::move(rules);
  return a;
}

std::string to_string(const GroundProgram& g, const ArgumentStructure& a) {
  std::string out = "<{";
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    if (i) out += "; ";
    out += g.rule_to_string(a.rules[i]);
  }
  out += "}, " + g.to_string(a.conclusion) + ">";
  return out;
}

bool is_subargument(const ArgumentStructure& b, const ArgumentStructure& a) { return subset_of(b.rules, a.rules); }

ArgumentBuilder::ArgumentBuilder(const GroundProgram& g, ArgumentOptions options)
    : g_(g), options_(options), strict_closure_(closure(g, RuleSet::strict_part(g))) {}

LiteralSet ArgumentBuilder::closure_with(const std::vector<RuleId>& rules) const {
  RuleSet rs = RuleSet::strict_part(g_);
  rs.add_rules(rules);
  return closure(g_, rs);
}

bool ArgumentBuilder::is_contradictory_with(const std::vector<RuleId>& rules) const {
  return closure_with(rules).complementary_pair().has_value();
}

// Non-contradictory with Pi and, under default negation, no literal derived
// from Pi and the rules is assumed absent by one of them. Both properties are
// inherited by subsets, so pruning on them never loses an argument.
bool ArgumentBuilder::admissible(const RuleSetKey& rules) const {
  const LiteralSet c = closure_with(rules);
  if (c.complementary_pair()) return false;
  for (RuleId id : rules) {
    for (Lit l : g_.rule(id).assumptions) {
      if (c.contains(l)) return false;
    }
  }
  return true;
}

bool ArgumentBuilder::verify(const RuleSetKey& rules, Lit h) const {
  if (!closure_with(rules).contains(h) || !admissible(rules)) return false;
  if (!options_.enforce_minimality) return true;
  // Derivation is monotone, so checking every drop-one subset covers all
  // proper subsets.
  for (std::size_t i = 0; i < rules.size(); ++i) {
    RuleSetKey smaller = rules;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    if (closure_with(smaller).contains(h)) return false;
  }
  return true;
}

// Fixpoint over per-literal families of defeasible rule sets: each family
// member derives its literal together with Pi. Families are kept subset-minimal.
void ArgumentBuilder::harvest() {
  if (harvested_) return;
  harvested_ = true;
  const std::size_t m = g_.literal_count();
  std::vector<std::set<RuleSetKey>> families(m);
  for (Lit l : strict_closure_.members()) families[l.code].insert(RuleSetKey{});

  auto offer = [&](std::set<RuleSetKey>& family, RuleSetKey candidate) {
    if (family.count(candidate)) return false;
    if (options_.enforce_minimality) {
      for (const RuleSetKey& s : family) {
        if (subset_of(s, candidate)) return false;
      }
    }
    if (!admissible(candidate)) return false;
    if (options_.enforce_minimality) {
      std::erase_if(family, [&](const RuleSetKey& s) { return subset_of(candidate, s); });
    }
    family.insert(std::move(candidate));
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (RuleId id = 0; id < g_.rules().size(); ++id) {
      const GroundRule& r = g_.rule(id);
      std::vector<std::vector<RuleSetKey>> choices;
      bool possible = true;
      for (Lit b : r.body) {
        if (families[b.code].empty()) {
          possible = false;
          break;
        }
        choices.emplace_back(families[b.code].begin(), families[b.code].end());
      }
      if (!possible) continue;
      // Cartesian product of the body families.
      std::vector<std::size_t> idx(choices.size(), 0);
      while (true) {
        RuleSetKey u;
        if (!r.is_strict()) u.push_back(id);
        for (std::size_t i = 0; i < choices.size(); ++i) {
          const RuleSetKey& part = choices[i][idx[i]];
          u.insert(u.end(), part.begin(), part.end());
        }
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        if (offer(families[r.head.code], std::move(u))) changed = true;
        std::size_t pos = choices.size();
        while (pos > 0 && ++idx[pos - 1] == choices[pos - 1].size()) {
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
  }
  supports_.assign(m, {});
  for (std::size_t c = 0; c < m; ++c) supports_[c].assign(families[c].begin(), families[c].end());
}

const std::vector<ArgumentStructure>& ArgumentBuilder::arguments_for(Lit h) {
  auto it = by_conclusion_.find(h.code);
  if (it != by_conclusion_.end()) return it->second;
  harvest();
  std::vector<ArgumentStructure> out;
  if (h.code < supports_.size()) {
    for (const RuleSetKey& s : supports_[h.code]) {
      if (verify(s, h)) out.push_back(make_argument(g_, s, h));
    }
  }
  std::sort(out.begin(), out.end(), argument_order);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return by_conclusion_.emplace(h.code, std::move(out)).first->second;
}

const std::vector<ArgumentStructure>& ArgumentBuilder::all_arguments() {
  if (!all_) {
    std::vector<ArgumentStructure> out;
    for (std::uint32_t c = 0; c < g_.literal_count(); ++c) {
      const auto& args = arguments_for(Lit{c});
      out.insert(out.end(), args.begin(), args.end());
    }
    all_ = std::move(out);
  }
  return *all_;
}

bool ArgumentBuilder::disagree(Lit h, Lit h1) {
  const std::pair key{h.code, h1.code};
  auto it = disagree_cache_.find(key);
  if (it != disagree_cache_.end()) return it->second;
  RuleSet rs = RuleSet::strict_part(g_);
  rs.facts.push_back(h);
  rs.facts.push_back(h1);
  const bool result = closure(g_, rs).complementary_pair().has_value();
  disagree_cache_[key] = result;
  disagree_cache_[{h1.code, h.code}] = result;
  return result;
}

std::vector<ArgumentStructure> ArgumentBuilder::subarguments_for(const ArgumentStructure& target, Lit point) {
  std::vector<ArgumentStructure> out;
  for (const ArgumentStructure& a : arguments_for(point)) {
    if (is_subargument(a, target)) out.push_back(a);
  }
  return out;
}

std::vector<AttackReport> ArgumentBuilder::counter_arguments(const ArgumentStructure& target) {
  std::vector<AttackReport> out;
  const LiteralSet reach = closure_with(target.rules);
  const auto& candidates = all_arguments();
  for (Lit point : reach.members()) {
    if (strict_closure_.contains(point)) continue;
    const auto subs = subarguments_for(target, point);
    if (subs.empty()) continue;
    for (const ArgumentStructure& attacker : candidates) {
      if (!disagree(point, attacker.conclusion)) continue;
      for (const ArgumentStructure& sub : subs) {
        out.push_back({attacker, target, point, sub, AttackKind::Disagreement});
      }
    }
  }
  return out;
}

std::vector<AttackReport> ArgumentBuilder::assumption_attacks(const ArgumentStructure& target) {
  std::vector<AttackReport> out;
  if (!g_.mode().default_negation) return out;
  for (Lit l : target.assumptions) {
    for (const ArgumentStructure& attacker : arguments_for(l)) {
      out.push_back({attacker, target, l, target, AttackKind::Assumption});
    }
  }
  return out;
}

std::vector<ArgumentStructure> arguments_for(const GroundProgram& g, Lit h) {
  return ArgumentBuilder(g).arguments_for(h);
}

bool disagree(const GroundProgram& g, Lit h, Lit h1) { return ArgumentBuilder(g).disagree(h, h1); }

std::vector<AttackReport> counter_arguments(const GroundProgram& g, const ArgumentStructure& target) {
  return ArgumentBuilder(g).counter_arguments(target);
}

std::vector<AttackReport> assumption_attacks(const GroundProgram& g, const ArgumentStructure& target) {
  return ArgumentBuilder(g).assumption_attacks(target);
}

}  // namespace delp
