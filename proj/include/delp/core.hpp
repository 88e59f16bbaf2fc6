#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace delp {

/// Raised for malformed programs, invalid queries and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a configured search ceiling is exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

struct Term {
  enum class Kind : std::uint8_t { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }

  bool is_variable() const { return kind == Kind::Variable; }

  auto operator<=>(const Term&) const = default;
};

/// An atom or a strongly negated atom. Ground when no argument is a variable.
struct Literal {
  bool negated = false;
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  std::string to_string() const;

  auto operator<=>(const Literal&) const = default;
};

/// Flips strong negation. Throws Error on a non-ground literal.
Literal complement(const Literal& literal);

struct BodyAtom {
  bool default_negated = false;
  Literal literal;

  std::string to_string() const;

  auto operator<=>(const BodyAtom&) const = default;
};

enum class RuleKind : std::uint8_t { Strict, Defeasible };

struct Rule {
  std::optional<std::string> label;
  RuleKind kind = RuleKind::Defeasible;
  Literal head;
  std::vector<BodyAtom> body;

  bool is_presumption() const { return kind == RuleKind::Defeasible && body.empty(); }
  std::string to_string() const;

  auto operator<=>(const Rule&) const = default;
};

/// Optional language extensions. Both off means the core language.
struct Mode {
  bool default_negation = false;
  bool presumptions = false;

  auto operator<=>(const Mode&) const = default;
};

std::string to_string(const Mode& mode);

/// Parses "core", "default-negation", "presumptions" or a comma-separated
/// combination of the last two.
Mode parse_mode(const std::string& text);

struct Priority {
  std::string higher;
  std::string lower;

  auto operator<=>(const Priority&) const = default;
};

/// A defeasible logic program (Pi, Delta) with priorities and mode flags.
/// Rules keep source order; equality treats facts, rules, bodies and
/// priorities as sets.
struct Program {
  std::vector<Literal> facts;
  std::vector<Rule> strict_rules;
  std::vector<Rule> defeasible_rules;
  std::vector<Priority> priorities;
  Mode mode;

  /// Sorted and deduplicated copy; bodies sorted and deduplicated too.
  Program canonical() const;

  friend bool operator==(const Program& a, const Program& b);
};

struct Violation {
  std::string message;
  std::vector<std::string> rules;
};

/// Checks that grounded Pi is non-contradictory, priorities are acyclic and
/// relate labelled defeasible rules only, and every feature used is licensed
/// by the program mode. Returns an empty vector when the program is valid.
std::vector<Violation> validate(const Program& program);

}  // namespace delp
