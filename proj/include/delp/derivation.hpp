#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "delp/ground.hpp"

namespace delp {

/// Any finite set of ground facts and rules drawn from one GroundProgram,
/// e.g. Pi plus an argument, or strict rules plus an activation set.
struct RuleSet {
  std::vector<Lit> facts;
  std::vector<RuleId> rules;

  /// Facts and strict rules of the program.
  static RuleSet strict_part(const GroundProgram& g);
  /// Strict rules only, without facts.
  static RuleSet strict_rules_only(const GroundProgram& g);
  /// The whole program.
  static RuleSet everything(const GroundProgram& g);

  RuleSet& add_rules(std::span<const RuleId> more);
  RuleSet& add_facts(std::span<const Lit> more);
};

/// Membership bitmap over the literals of one GroundProgram.
class LiteralSet {
 public:
  LiteralSet() = default;
  explicit LiteralSet(std::size_t literal_count) : bits_(literal_count, 0) {}

  bool contains(Lit lit) const { return lit.code < bits_.size() && bits_[lit.code] != 0; }
  bool insert(Lit lit);
  std::size_t size() const { return count_; }

  /// Members in ascending literal order.
  std::vector<Lit> members() const;
  /// First complementary pair (by atom order), if any.
  std::optional<std::pair<Lit, Lit>> complementary_pair() const;

  friend bool operator==(const LiteralSet&, const LiteralSet&) = default;

 private:
  std::vector<char> bits_;
  std::size_t count_ = 0;
};

/// Least fixpoint of forward rule application. Default-negated body atoms are
/// ignored; presumptions fire unconditionally.
LiteralSet closure(const GroundProgram& g, const RuleSet& rs);

struct DerivationStep {
  enum class Reason : std::uint8_t { Fact, Presumption, Rule };

  Lit literal;
  Reason reason = Reason::Fact;
  std::optional<RuleId> rule;
};

/// A defeasible derivation: each literal is a fact or the head of a rule
/// whose body literals appear earlier.
struct Derivation {
  std::vector<DerivationStep> steps;
  /// Literals assumed through `not` by the rules used.
  std::vector<Lit> assumptions;

  std::vector<Lit> literals() const;
  std::vector<RuleId> rules_used() const;
};

/// Returns a witness derivation iff `goal` is in closure(rs). The witness is
/// a smallest proof tree; ties go to the earlier rule.
std::optional<Derivation> defeasibly_derives(const GroundProgram& g, const RuleSet& rs, Lit goal);

/// Derivability from the facts and strict rules of `rs` alone.
bool strictly_derives(const GroundProgram& g, const RuleSet& rs, Lit goal);

/// A complementary pair in closure(rs), or nothing.
std::optional<std::pair<Lit, Lit>> is_contradictory(const GroundProgram& g, const RuleSet& rs);

}  // namespace delp
