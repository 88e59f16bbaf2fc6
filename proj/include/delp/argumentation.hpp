#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delp/derivation.hpp"
#include "delp/ground.hpp"

namespace delp {

/// <A, h>: a minimal, non-contradictory set of defeasible rules A that
/// together with Pi derives h. Rules are kept sorted by id.
struct ArgumentStructure {
  std::vector<RuleId> rules;
  Lit conclusion;
  /// Literals occurring under `not` in the bodies of `rules`, sorted.
  std::vector<Lit> assumptions;

  bool is_strict() const { return rules.empty(); }

  auto operator<=>(const ArgumentStructure&) const = default;
};

/// Builds an argument structure from an arbitrary rule list; sorts,
/// deduplicates and fills the assumptions.
ArgumentStructure make_argument(const GroundProgram& g, std::vector<RuleId> rules, Lit conclusion);

/// Renders as "<{rule, rule}, h>" using angle brackets.
std::string to_string(const GroundProgram& g, const ArgumentStructure& a);

enum class AttackKind : std::uint8_t { Disagreement, Assumption };

struct AttackReport {
  ArgumentStructure attacker;
  ArgumentStructure attacked;
  Lit point;
  ArgumentStructure disagreement_subargument;
  AttackKind kind = AttackKind::Disagreement;
};

/// B is a sub-argument of A iff B's rules are a subset of A's rules.
bool is_subargument(const ArgumentStructure& b, const ArgumentStructure& a);

struct ArgumentOptions {
  /// Turning this off admits non-minimal rule sets; used only to check that
  /// the differential harness notices the defect.
  bool enforce_minimality = true;
};

/// Argument construction for one query. Holds the per-query caches; not
/// shared between threads.
class ArgumentBuilder {
 public:
  explicit ArgumentBuilder(const GroundProgram& g, ArgumentOptions options = {});

  const GroundProgram& program() const { return g_; }

  /// All argument structures for h, ordered by size and then rule ids.
  const std::vector<ArgumentStructure>& arguments_for(Lit h);

  /// Every argument structure of the program, ordered by conclusion.
  const std::vector<ArgumentStructure>& all_arguments();

  /// Pi together with {h, h1} is contradictory.
  bool disagree(Lit h, Lit h1);

  /// Minimal subsets of target.rules deriving `point` with Pi.
  std::vector<ArgumentStructure> subarguments_for(const ArgumentStructure& target, Lit point);

  std::vector<AttackReport> counter_arguments(const ArgumentStructure& target);
  std::vector<AttackReport> assumption_attacks(const ArgumentStructure& target);

  /// closure(Pi).
  const LiteralSet& strict_closure() const { return strict_closure_; }
  /// closure(Pi united with `rules`).
  LiteralSet closure_with(const std::vector<RuleId>& rules) const;
  bool is_contradictory_with(const std::vector<RuleId>& rules) const;

 private:
  using RuleSetKey = std::vector<RuleId>;

  void harvest();
  bool admissible(const RuleSetKey& rules) const;
  bool verify(const RuleSetKey& rules, Lit h) const;

  const GroundProgram& g_;
  ArgumentOptions options_;
  LiteralSet strict_closure_;
  bool harvested_ = false;
  std::vector<std::vector<RuleSetKey>> supports_;
  std::map<std::uint32_t, std::vector<ArgumentStructure>> by_conclusion_;
  std::optional<std::vector<ArgumentStructure>> all_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, bool> disagree_cache_;
};

std::vector<ArgumentStructure> arguments_for(const GroundProgram& g, Lit h);
bool disagree(const GroundProgram& g, Lit h, Lit h1);
std::vector<AttackReport> counter_arguments(const GroundProgram& g, const ArgumentStructure& target);
std::vector<AttackReport> assumption_attacks(const GroundProgram& g, const ArgumentStructure& target);

}  // namespace delp
