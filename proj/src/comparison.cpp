#include "delp/comparison.hpp"

#include <algorithm>
#include <cstdint>

namespace delp {

std::string to_string(PreferenceOutcome outcome) {
  switch (outcome) {
    case PreferenceOutcome::FirstStrictlyPreferred: return "first_strictly_preferred";
    case PreferenceOutcome::SecondStrictlyPreferred: return "second_strictly_preferred";
    case PreferenceOutcome::EquiSpecific: return "equi_specific";
    case PreferenceOutcome::Incomparable: return "incomparable";
  }
  return "?";
}

std::string to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::Specificity: return "specificity";
    case Criterion::Priorities: return "priorities";
    case Criterion::Combined: return "combined";
  }
  return "?";
}

Criterion parse_criterion(const std::string& text) {
  if (text == "specificity") return Criterion::Specificity;
  if (text == "priorities") return Criterion::Priorities;
  if (text == "combined") return Criterion::Combined;
  throw Error("unknown criterion '" + text + "'");
}

ActivationContext ActivationContext::make(const GroundProgram& g) {
  ActivationContext ctx;
  ctx.strict_rules.assign(g.strict_rules().begin(), g.strict_rules().end());
  ctx.derivable = closure(g, RuleSet::everything(g));
  ctx.derivable_list = ctx.derivable.members();
  return ctx;
}

bool activates(const GroundProgram& g, const ActivationContext& ctx, const std::vector<Lit>& h_set,
               const ArgumentStructure& a) {
  RuleSet rs;
  rs.facts = h_set;
  rs.rules = ctx.strict_rules;
  rs.add_rules(a.rules);
  return closure(g, rs).contains(a.conclusion);
}

namespace {

constexpr std::size_t kMaxCandidates = 30;
constexpr std::size_t kParallelThreshold = 12;

struct MaskVerdict {
  bool breaks_first = false;  // activates a1 non-trivially but not a2
  bool witnesses_second = false;  // activates a2 non-trivially but not a1
};

MaskVerdict evaluate(const GroundProgram& g, const ActivationContext& ctx, const std::vector<Lit>& candidates,
                     std::uint64_t mask, const ArgumentStructure& a1, const ArgumentStructure& a2) {
  std::vector<Lit> h;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (mask >> i & 1u) h.push_back(candidates[i]);
  }
  RuleSet base;
  base.facts = h;
  base.rules = ctx.strict_rules;
  const LiteralSet trivial = closure(g, base);
  const bool act1 = activates(g, ctx, h, a1);
  const bool act2 = activates(g, ctx, h, a2);
  MaskVerdict v;
  v.breaks_first = act1 && !trivial.contains(a1.conclusion) && !act2;
  v.witnesses_second = act2 && !trivial.contains(a2.conclusion) && !act1;
  return v;
}

bool enumerate_serial(const GroundProgram& g, const ActivationContext& ctx, const std::vector<Lit>& candidates,
                      const ArgumentStructure& a1, const ArgumentStructure& a2) {
  const std::uint64_t total = std::uint64_t{1} << candidates.size();
  bool witness = false;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const MaskVerdict v = evaluate(g, ctx, candidates, mask, a1, a2);
    if (v.breaks_first) return false;
    witness = witness || v.witnesses_second;
  }
  return witness;
}

bool enumerate_parallel(const GroundProgram& g, const ActivationContext& ctx, const std::vector<Lit>& candidates,
                        const ArgumentStructure& a1, const ArgumentStructure& a2) {
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << candidates.size());
  bool broken = false;
  bool witness = false;
#pragma omp parallel for schedule(dynamic, 64) reduction(|| : broken, witness)
  for (std::int64_t mask = 0; mask < total; ++mask) {
    const MaskVerdict v = evaluate(g, ctx, candidates, static_cast<std::uint64_t>(mask), a1, a2);
    broken = broken || v.breaks_first;
    witness = witness || v.witnesses_second;
  }
  return !broken && witness;
}

}  // namespace

std::vector<Lit> activation_candidates(const GroundProgram& g, const ActivationContext& ctx,
                                       const ArgumentStructure& a1, const ArgumentStructure& a2) {
  // Activation and triviality of either argument depend only on the members
  // of H that some relevant rule body reads, plus the conclusions themselves.
  std::vector<RuleId> rules = ctx.strict_rules;
  rules.insert(rules.end(), a1.rules.begin(), a1.rules.end());
  rules.insert(rules.end(), a2.rules.begin(), a2.rules.end());
  LiteralSet relevant(g.literal_count());
  std::vector<Lit> stack{a1.conclusion, a2.conclusion};
  relevant.insert(a1.conclusion);
  relevant.insert(a2.conclusion);
  while (!stack.empty()) {
    const Lit l = stack.back();
    stack.pop_back();
    for (RuleId id : rules) {
      if (g.rule(id).head != l) continue;
      for (Lit b : g.rule(id).body) {
        if (relevant.insert(b)) stack.push_back(b);
      }
    }
  }
  std::vector<Lit> out;
  for (Lit l : relevant.members()) {
    if (ctx.derivable.contains(l)) out.push_back(l);
  }
  return out;
}

bool more_specific(const GroundProgram& g, const ActivationContext& ctx, const ArgumentStructure& a1,
                   const ArgumentStructure& a2) {
  const std::vector<Lit> candidates = activation_candidates(g, ctx, a1, a2);
  if (candidates.size() > kMaxCandidates) {
    throw ResourceLimitError("specificity check over " + std::to_string(candidates.size()) +
                             " activation literals exceeds the limit of " + std::to_string(kMaxCandidates));
  }
  if (candidates.size() >= kParallelThreshold) return enumerate_parallel(g, ctx, candidates, a1, a2);
  return enumerate_serial(g, ctx, candidates, a1, a2);
}

bool more_specific_reference(const GroundProgram& g, const ActivationContext& ctx, const ArgumentStructure& a1,
                             const ArgumentStructure& a2, std::size_t max_literals) {
  if (ctx.derivable_list.size() > max_literals) {
    throw ResourceLimitError("reference specificity check over " + std::to_string(ctx.derivable_list.size()) +
                             " literals exceeds the limit of " + std::to_string(max_literals));
  }
  return enumerate_serial(g, ctx, ctx.derivable_list, a1, a2);
}

bool equi_specific(const GroundProgram& g, const ArgumentStructure& a1, const ArgumentStructure& a2) {
  if (a1.rules != a2.rules) return false;
  auto strictly_with = [&](Lit extra, Lit goal) {
    RuleSet rs = RuleSet::strict_part(g);
    rs.facts.push_back(extra);
    return closure(g, rs).contains(goal);
  };
  return strictly_with(a1.conclusion, a2.conclusion) && strictly_with(a2.conclusion, a1.conclusion);
}

bool priority_preferred(const GroundProgram& g, const ArgumentStructure& a1, const ArgumentStructure& a2) {
  bool some = false;
  for (RuleId r1 : a1.rules) {
    for (RuleId r2 : a2.rules) {
      if (g.outranks(r2, r1)) return false;
      some = some || g.outranks(r1, r2);
    }
  }
  return some;
}

bool uses_presumption(const GroundProgram& g, const ArgumentStructure& a) {
  return std::any_of(a.rules.begin(), a.rules.end(), [&](RuleId id) { return g.rule(id).is_presumption(); });
}

namespace {

PreferenceOutcome by_specificity(const GroundProgram& g, const ActivationContext& ctx, const ArgumentStructure& a1,
                                 const ArgumentStructure& a2) {
  if (equi_specific(g, a1, a2)) return PreferenceOutcome::EquiSpecific;
  const bool first = more_specific(g, ctx, a1, a2);
  const bool second = more_specific(g, ctx, a2, a1);
  if (first && !second) return PreferenceOutcome::FirstStrictlyPreferred;
  if (second && !first) return PreferenceOutcome::SecondStrictlyPreferred;
  return PreferenceOutcome::Incomparable;
}

PreferenceOutcome by_priorities(const GroundProgram& g, const ArgumentStructure& a1, const ArgumentStructure& a2) {
  if (priority_preferred(g, a1, a2)) return PreferenceOutcome::FirstStrictlyPreferred;
  if (priority_preferred(g, a2, a1)) return PreferenceOutcome::SecondStrictlyPreferred;
  if (equi_specific(g, a1, a2)) return PreferenceOutcome::EquiSpecific;
  return PreferenceOutcome::Incomparable;
}

}  // namespace

PreferenceOutcome compare(const GroundProgram& g, const CriterionConfig& cfg, const ActivationContext& ctx,
                          const ArgumentStructure& a1, const ArgumentStructure& a2) {
  if (cfg.presumption_penalty) {
    const bool p1 = uses_presumption(g, a1);
    const bool p2 = uses_presumption(g, a2);
    if (!p1 && p2) return PreferenceOutcome::FirstStrictlyPreferred;
    if (p1 && !p2) return PreferenceOutcome::SecondStrictlyPreferred;
  }
  switch (cfg.criterion) {
    case Criterion::Specificity: return by_specificity(g, ctx, a1, a2);
    case Criterion::Priorities: return by_priorities(g, a1, a2);
    case Criterion::Combined: {
      const PreferenceOutcome s = by_specificity(g, ctx, a1, a2);
      return s == PreferenceOutcome::Incomparable ? by_priorities(g, a1, a2) : s;
    }
  }
  return PreferenceOutcome::Incomparable;
}

Comparator::Comparator(const GroundProgram& g, CriterionConfig cfg)
    : g_(g), cfg_(cfg), ctx_(ActivationContext::make(g)) {}

PreferenceOutcome Comparator::compare(const ArgumentStructure& a1, const ArgumentStructure& a2) {
  auto key = std::pair{a1, a2};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const PreferenceOutcome out = delp::compare(g_, cfg_, ctx_, a1, a2);
  cache_.emplace(std::move(key), out);
  return out;
}

}  // namespace delp
