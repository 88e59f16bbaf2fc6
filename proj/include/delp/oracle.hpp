#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delp/comparison.hpp"
#include "delp/dialectics.hpp"
#include "delp/ground.hpp"

// Brute-force reference semantics for differential testing. Only the program
// model and the forward closure are shared with the engine; argument
// enumeration, specificity, defeat and tree search are written out again
// directly from their definitions, trading speed for obviousness.

namespace delp {

struct OracleBounds {
  std::size_t max_defeasible = 12;  // ground defeasible rules
  std::size_t max_derivable = 14;   // literals in F
  std::size_t max_nodes = 200000;   // tree nodes per query
};

/// The program is too large for exhaustive enumeration.
class OracleRefusal : public Error {
 public:
  using Error::Error;
};

struct OracleArgument {
  std::vector<RuleId> rules;
  Lit conclusion;

  auto operator<=>(const OracleArgument&) const = default;
};

class Oracle {
 public:
  Oracle(const GroundProgram& g, CriterionConfig cfg, OracleBounds bounds = {});

  /// Every subset of the defeasible rules meeting the argument conditions.
  std::vector<OracleArgument> arguments_for(Lit h);

  bool more_specific(const OracleArgument& a1, const OracleArgument& a2);
  PreferenceOutcome compare(const OracleArgument& a1, const OracleArgument& a2);

  bool warranted(Lit h);
  AnswerKind answer(const Literal& query);
  std::vector<Lit> warranted_literals();

 private:
  struct Arg {
    std::uint32_t mask = 0;
    Lit conclusion;
    std::vector<Lit> assumptions;
  };
  struct Defeat {
    std::size_t attacker;
    DefeaterKind kind;
  };

  const std::vector<std::size_t>& args_for(Lit h);
  const std::vector<Arg>& all();
  std::size_t index_of(const OracleArgument& a);
  OracleArgument external(const Arg& a) const;
  std::vector<RuleId> rules_of(std::uint32_t mask) const;
  bool disagree(Lit a, Lit b) const;
  bool more_specific_idx(std::size_t i, std::size_t j);
  PreferenceOutcome compare_idx(std::size_t i, std::size_t j);
  const std::vector<bool>& activation(std::size_t i);
  const std::vector<Defeat>& defeaters(std::size_t target);
  bool undefeated(std::vector<std::size_t>& line, std::vector<DefeaterKind>& kinds);

  const GroundProgram& g_;
  CriterionConfig cfg_;
  OracleBounds bounds_;
  std::vector<RuleId> delta_;
  std::vector<LiteralSet> closure_of_mask_;
  std::vector<char> admissible_;
  std::vector<Lit> f_;
  std::vector<LiteralSet> strict_with_h_;  // closure of strict rules and H, per H
  bool specificity_ready_ = false;
  std::vector<Arg> args_;
  bool all_built_ = false;
  std::map<std::uint32_t, std::vector<std::size_t>> by_conclusion_;
  std::map<std::size_t, std::vector<bool>> activation_;
  std::map<std::pair<std::size_t, std::size_t>, PreferenceOutcome> compare_cache_;
  std::map<std::size_t, std::vector<Defeat>> defeaters_;
  std::size_t nodes_ = 0;
};

std::vector<OracleArgument> oracle_arguments_for(const GroundProgram& g, Lit h, OracleBounds bounds = {});
bool oracle_more_specific(const GroundProgram& g, const OracleArgument& a1, const OracleArgument& a2,
                          OracleBounds bounds = {});

struct OracleReport {
  std::string check;    // arguments, specificity, answer-pruned, answer-exhaustive, warranted-*
  std::string subject;  // literal or argument pair
  std::string engine;
  std::string oracle;
  bool agree = true;
  std::string witness;  // engine-side detail when the verdicts differ
};

struct DifferentialOptions {
  DialecticsOptions engine;
  OracleBounds bounds;
  bool check_specificity = true;
};

/// Compares the engine (pruned and exhaustive) with the oracle on every
/// literal of the program. Disagreements are reported, never thrown; an
/// OracleRefusal propagates when the program exceeds the bounds.
std::vector<OracleReport> differential_run(const GroundProgram& g, const CriterionConfig& cfg,
                                           const DifferentialOptions& options = {});

std::size_t count_disagreements(const std::vector<OracleReport>& reports);

/// Human-readable report listing disagreements and a summary line.
std::string reports_to_text(const std::string& program_name, const std::vector<OracleReport>& reports);

/// One JSON record per disagreement.
std::string reports_to_jsonl(const std::string& program_name, const std::vector<OracleReport>& reports);

struct FuzzParams {
  std::size_t max_predicates = 6;
  std::size_t max_constants = 3;
  std::size_t max_rules = 10;
  std::size_t max_facts = 4;
  double strong_negation = 0.3;
  double defeasible_fraction = 0.7;
  /// Probability that a defeasible body atom is default-negated; zero keeps
  /// the core language.
  double default_negation = 0.0;
};

/// Deterministic random program for `seed`. Candidates that fail validation
/// or exceed the oracle bounds are discarded and redrawn.
Program random_program(std::uint64_t seed, const FuzzParams& params = {}, const OracleBounds& bounds = {});

}  // namespace delp
