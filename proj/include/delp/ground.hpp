#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "delp/core.hpp"

namespace delp {

/// Interned ground literal: atom index times two, plus one when negated.
struct Lit {
  std::uint32_t code = 0;

  static Lit make(std::uint32_t atom, bool negated) { return Lit{atom * 2 + (negated ? 1u : 0u)}; }

  std::uint32_t atom() const { return code >> 1; }
  bool negated() const { return (code & 1u) != 0; }
  Lit complement() const { return Lit{code ^ 1u}; }

  auto operator<=>(const Lit&) const = default;
};

using RuleId = std::uint32_t;

struct GroundRule {
  RuleKind kind = RuleKind::Defeasible;
  Lit head;
  std::vector<Lit> body;         // deduplicated, source order
  std::vector<Lit> assumptions;  // literals under `not`
  std::optional<std::string> label;

  bool is_strict() const { return kind == RuleKind::Strict; }
  bool is_presumption() const { return kind == RuleKind::Defeasible && body.empty() && assumptions.empty(); }
};

/// A fully instantiated program. Immutable once built; safe to share between
/// threads.
class GroundProgram {
 public:
  const std::vector<Lit>& facts() const { return facts_; }
  const std::vector<GroundRule>& rules() const { return rules_; }
  const GroundRule& rule(RuleId id) const { return rules_[id]; }
  std::span<const RuleId> strict_rules() const { return strict_; }
  std::span<const RuleId> defeasible_rules() const { return defeasible_; }

  /// Rules whose positive body mentions `lit`.
  std::span<const RuleId> rules_reading(Lit lit) const { return readers_[lit.code]; }

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t literal_count() const { return atoms_.size() * 2; }

  std::optional<Lit> find(const Literal& literal) const;
  Literal literal(Lit lit) const;
  std::string to_string(Lit lit) const;
  std::string rule_to_string(RuleId id) const;

  const Mode& mode() const { return mode_; }
  const std::vector<std::string>& constants() const { return constants_; }
  const std::set<std::pair<std::string, std::size_t>>& predicates() const { return predicates_; }

  bool has_priorities() const { return !outranks_.empty(); }
  /// True when rule `a` has a higher declared priority than rule `b`
  /// (transitive closure of the declared pairs).
  bool outranks(RuleId a, RuleId b) const;

  friend GroundProgram ground_program(const Program& program);

 private:
  Lit intern(const Literal& literal);

  struct Atom {
    std::string predicate;
    std::vector<std::string> args;
  };

  std::vector<Atom> atoms_;
  std::unordered_map<std::string, std::uint32_t> atom_index_;
  std::vector<Lit> facts_;
  std::vector<GroundRule> rules_;
  std::vector<RuleId> strict_;
  std::vector<RuleId> defeasible_;
  std::vector<std::vector<RuleId>> readers_;
  std::vector<std::string> constants_;
  std::set<std::pair<std::string, std::size_t>> predicates_;
  std::set<std::pair<std::string, std::string>> outranks_;
  Mode mode_;
};

/// Instantiates every schematic rule over all tuples of program constants.
/// Duplicate ground rules are collapsed. Throws Error when variables occur
/// but the program has no constants.
GroundProgram ground_program(const Program& program);

/// Rebuilds an (already ground) Program from a GroundProgram.
Program to_program(const GroundProgram& ground);

/// True iff the predicate/arity and all constants of `literal` occur in the
/// program.
bool in_language(const GroundProgram& ground, const Literal& literal);

}  // namespace delp
