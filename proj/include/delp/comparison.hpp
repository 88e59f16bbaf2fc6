#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "delp/argumentation.hpp"
#include "delp/derivation.hpp"

namespace delp {

enum class PreferenceOutcome : std::uint8_t {
  FirstStrictlyPreferred,
  SecondStrictlyPreferred,
  EquiSpecific,
  Incomparable,
};

std::string to_string(PreferenceOutcome outcome);

enum class Criterion : std::uint8_t { Specificity, Priorities, Combined };

std::string to_string(Criterion criterion);
Criterion parse_criterion(const std::string& text);

struct CriterionConfig {
  Criterion criterion = Criterion::Specificity;
  /// Prefer arguments without presumptions before applying `criterion`.
  bool presumption_penalty = false;
};

/// Data shared by all specificity checks of one program: the strict rules
/// without facts, and every defeasibly derivable literal.
struct ActivationContext {
  std::vector<RuleId> strict_rules;
  LiteralSet derivable;
  std::vector<Lit> derivable_list;

  static ActivationContext make(const GroundProgram& g);
};

/// H activates <A, h>: strict rules, H as facts and A derive h.
bool activates(const GroundProgram& g, const ActivationContext& ctx, const std::vector<Lit>& h_set,
               const ArgumentStructure& a);

/// Generalized specificity over the activation sets that can matter: the
/// derivable body literals from which either conclusion is reachable.
/// Large candidate sets are enumerated with OpenMP.
bool more_specific(const GroundProgram& g, const ActivationContext& ctx, const ArgumentStructure& a1,
                   const ArgumentStructure& a2);

/// Serial reference: enumerates every subset of the derivable literals.
/// Throws ResourceLimitError above `max_literals`.
bool more_specific_reference(const GroundProgram& g, const ActivationContext& ctx, const ArgumentStructure& a1,
                             const ArgumentStructure& a2, std::size_t max_literals = 20);

/// Candidate literals for activation sets used by more_specific.
std::vector<Lit> activation_candidates(const GroundProgram& g, const ActivationContext& ctx,
                                       const ArgumentStructure& a1, const ArgumentStructure& a2);

bool equi_specific(const GroundProgram& g, const ArgumentStructure& a1, const ArgumentStructure& a2);

/// Some rule of a1 outranks some rule of a2 and no rule of a2 outranks a rule
/// of a1.
bool priority_preferred(const GroundProgram& g, const ArgumentStructure& a1, const ArgumentStructure& a2);

bool uses_presumption(const GroundProgram& g, const ArgumentStructure& a);

PreferenceOutcome compare(const GroundProgram& g, const CriterionConfig& cfg, const ActivationContext& ctx,
                          const ArgumentStructure& a1, const ArgumentStructure& a2);

/// Memoizing wrapper around compare for one query.
class Comparator {
 public:
  Comparator(const GroundProgram& g, CriterionConfig cfg);

  PreferenceOutcome compare(const ArgumentStructure& a1, const ArgumentStructure& a2);
  const ActivationContext& context() const { return ctx_; }
  const CriterionConfig& config() const { return cfg_; }

 private:
  const GroundProgram& g_;
  CriterionConfig cfg_;
  ActivationContext ctx_;
  std::map<std::pair<ArgumentStructure, ArgumentStructure>, PreferenceOutcome> cache_;
};

}  // namespace delp
