#include "delp/derivation.hpp"

#include <algorithm>
#include <limits>

namespace delp {

RuleSet RuleSet::strict_part(const GroundProgram& g) {
  RuleSet rs;
  rs.facts = g.facts();
  rs.rules.assign(g.strict_rules().begin(), g.strict_rules().end());
  return rs;
}

RuleSet RuleSet::strict_rules_only(const GroundProgram& g) {
  RuleSet rs;
  rs.rules.assign(g.strict_rules().begin(), g.strict_rules().end());
  return rs;
}

RuleSet RuleSet::everything(const GroundProgram& g) {
  RuleSet rs = strict_part(g);
  rs.add_rules(g.defeasible_rules());
  return rs;
}

RuleSet& RuleSet::add_rules(std::span<const RuleId> more) {
  rules.insert(rules.end(), more.begin(), more.end());
  return *this;
}

RuleSet& RuleSet::add_facts(std::span<const Lit> more) {
  facts.insert(facts.end(), more.begin(), more.end());
  return *this;
}

bool LiteralSet::insert(Lit lit) {
  if (lit.code >= bits_.size()) bits_.resize(lit.code + 1, 0);
  if (bits_[lit.code]) return false;
  bits_[lit.code] = 1;
  ++count_;
  return true;
}

std::vector<Lit> LiteralSet::members() const {
  std::vector<Lit> out;
  out.reserve(count_);
  for (std::uint32_t c = 0; c < bits_.size(); ++c) {
    if (bits_[c]) out.push_back(Lit{c});
  }
  return out;
}

std::optional<std::pair<Lit, Lit>> LiteralSet::complementary_pair() const {
  for (std::uint32_t c = 0; c + 1 < bits_.size(); c += 2) {
    if (bits_[c] && bits_[c + 1]) return std::pair{Lit{c}, Lit{c + 1}};
  }
  return std::nullopt;
}

LiteralSet closure(const GroundProgram& g, const RuleSet& rs) {
  LiteralSet out(g.literal_count());
  const std::size_t n = g.rules().size();
  // remaining[r] counts unsatisfied positive body literals; rules outside rs
  // are marked with the sentinel so they never fire.
  constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> remaining(n, kAbsent);
  std::vector<Lit> agenda;
  auto add = [&](Lit l) {
    if (out.insert(l)) agenda.push_back(l);
  };
  for (RuleId id : rs.rules) {
    if (remaining[id] != kAbsent) continue;
    remaining[id] = static_cast<std::uint32_t>(g.rule(id).body.size());
  }
  for (Lit f : rs.facts) add(f);
  for (RuleId id : rs.rules) {
    if (remaining[id] == 0) add(g.rule(id).head);
  }
  while (!agenda.empty()) {
    const Lit l = agenda.back();
    agenda.pop_back();
    for (RuleId id : g.rules_reading(l)) {
      if (remaining[id] == kAbsent || remaining[id] == 0) continue;
      if (--remaining[id] == 0) add(g.rule(id).head);
    }
  }
  return out;
}

std::vector<Lit> Derivation::literals() const {
  std::vector<Lit> out;
  out.reserve(steps.size());
  for (const DerivationStep& s : steps) out.push_back(s.literal);
  return out;
}

std::vector<RuleId> Derivation::rules_used() const {
  std::vector<RuleId> out;
  for (const DerivationStep& s : steps) {
    if (s.rule) out.push_back(*s.rule);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Derivation> defeasibly_derives(const GroundProgram& g, const RuleSet& rs, Lit goal) {
  if (!closure(g, rs).contains(goal)) return std::nullopt;

  // Smallest proof tree per literal, by relaxation to a fixpoint. Costs only
  // decrease, so this terminates; the chosen rule's body literals are always
  // strictly cheaper than its head, which keeps the proof acyclic.
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  const std::size_t m = g.literal_count();
  std::vector<std::uint64_t> cost(m, kInf);
  std::vector<std::optional<RuleId>> via(m);
  std::vector<char> is_fact(m, 0);
  for (Lit f : rs.facts) {
    cost[f.code] = 1;
    is_fact[f.code] = 1;
  }
  std::vector<RuleId> rules = rs.rules;
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (RuleId id : rules) {
      const GroundRule& r = g.rule(id);
      std::uint64_t c = 1;
      for (Lit b : r.body) {
        if (cost[b.code] == kInf) {
          c = kInf;
          break;
        }
        c += cost[b.code];
      }
      if (c == kInf || is_fact[r.head.code]) continue;
      auto& best = cost[r.head.code];
      if (c < best || (c == best && via[r.head.code] && id < *via[r.head.code])) {
        if (c < best) changed = true;
        best = c;
        via[r.head.code] = id;
      }
    }
  }

  Derivation d;
  std::vector<char> emitted(m, 0);
  auto emit = [&](auto&& self, Lit l) -> void {
    if (emitted[l.code]) return;
    emitted[l.code] = 1;
    if (is_fact[l.code]) {
      d.steps.push_back({l, DerivationStep::Reason::Fact, std::nullopt});
      return;
    }
    const RuleId id = *via[l.code];
    const GroundRule& r = g.rule(id);
    for (Lit b : r.body) self(self, b);
    d.steps.push_back({l, r.is_presumption() ? DerivationStep::Reason::Presumption : DerivationStep::Reason::Rule, id});
    d.assumptions.insert(d.assumptions.end(), r.assumptions.begin(), r.assumptions.end());
  };
  emit(emit, goal);
  std::sort(d.assumptions.begin(), d.assumptions.end());
  d.assumptions.erase(std::unique(d.assumptions.begin(), d.assumptions.end()), d.assumptions.end());
  return d;
}

bool strictly_derives(const GroundProgram& g, const RuleSet& rs, Lit goal) {
  RuleSet strict;
  strict.facts = rs.facts;
  for (RuleId id : rs.rules) {
    if (g.rule(id).is_strict()) strict.rules.push_back(id);
  }
  return closure(g, strict).contains(goal);
}

std::optional<std::pair<Lit, Lit>> is_contradictory(const GroundProgram& g, const RuleSet& rs) {
  return closure(g, rs).complementary_pair();
}

}  // namespace delp
