#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "delp/core.hpp"

namespace delp {

struct SourceSpan {
  std::string file;
  std::size_t start_line = 1;
  std::size_t start_column = 1;
  std::size_t end_line = 1;
  std::size_t end_column = 1;
};

struct ParseDiagnostic {
  enum class Severity : std::uint8_t { Error, Warning };

  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;

  /// "file:line:col: error: message"
  std::string to_string() const;
};

struct ParseResult {
  std::optional<Program> program;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

/// Parses a .delp program. Never throws on bad input; every problem becomes a
/// diagnostic and the program is absent when any error was reported.
ParseResult parse_program(std::string_view text, Mode mode = {}, const std::string& file = "<input>");

struct QueryResult {
  std::optional<Literal> literal;
  std::optional<ParseDiagnostic> diagnostic;
};

/// Parses a single ground literal with optional leading `~`.
QueryResult parse_query(std::string_view text);

/// Canonical text: facts, strict rules, defeasible rules, priorities, each
/// group sorted by head then body.
std::string format_program(const Program& program);

}  // namespace delp
