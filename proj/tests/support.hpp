#pragma once

// Helpers shared by the test binaries: corpus loading and literal lookup.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "delp/dialectics.hpp"
#include "delp/ground.hpp"
#include "delp/parser.hpp"

namespace testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) { return std::string(DELP_CORPUS_DIR) + "/" + name + ".delp"; }

/// Mode each corpus program needs.
inline delp::Mode corpus_mode(const std::string& name) {
  delp::Mode m;
  if (name == "ex6_1_default_negation" || name == "railway") m.default_negation = true;
  if (name == "ex6_3_presumptions") m.presumptions = true;
  return m;
}

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "p2_1_birds",     "p2_2_nixon",        "p2_3_strict_conflict", "p2_4_stocks",
      "ex3_2_union",    "ex3_6_priorities",  "ex4_4_reciprocal",     "ex5_1_tree",
      "ex5_2_subtree",  "ex5_6_concordance", "hobbes",               "ex8_1_molluscs",
      "reinstatement",  "ex6_1_default_negation", "ex6_1_transformed", "ex6_3_presumptions",
      "railway",
  };
  return names;
}

inline delp::Program parse_or_throw(const std::string& text, delp::Mode mode = {}) {
  const delp::ParseResult r = delp::parse_program(text, mode);
  if (!r.ok()) {
    std::string msg = "parse failed:";
    for (const auto& d : r.diagnostics) msg += "\n  " + d.to_string();
    throw std::runtime_error(msg);
  }
  return *r.program;
}

inline delp::Program corpus_program(const std::string& name) {
  return parse_or_throw(read_text(corpus_path(name)), corpus_mode(name));
}

inline delp::GroundProgram corpus_ground(const std::string& name) {
  return delp::ground_program(corpus_program(name));
}

inline delp::GroundProgram ground_text(const std::string& text, delp::Mode mode = {}) {
  return delp::ground_program(parse_or_throw(text, mode));
}

inline delp::Literal literal(const std::string& text) {
  const delp::QueryResult q = delp::parse_query(text);
  if (!q.literal) throw std::runtime_error("bad literal " + text);
  return *q.literal;
}

/// Interned literal; throws when the program never mentions it.
inline delp::Lit lit(const delp::GroundProgram& g, const std::string& text) {
  const auto l = g.find(literal(text));
  if (!l) throw std::runtime_error("literal not interned: " + text);
  return *l;
}

inline std::string answer_text(const delp::GroundProgram& g, const std::string& query,
                               delp::CriterionConfig cfg = {}, delp::Search search = delp::Search::Pruned) {
  return delp::to_string(delp::answer(g, cfg, literal(query), search).kind);
}

/// Defeasible rule ids whose rendering matches one of `texts`.
inline std::vector<delp::RuleId> rules_named(const delp::GroundProgram& g, const std::vector<std::string>& texts) {
  std::vector<delp::RuleId> out;
  for (const std::string& t : texts) {
    bool found = false;
    for (delp::RuleId r = 0; r < g.rules().size(); ++r) {
      if (g.rule_to_string(r) == t) {
        out.push_back(r);
        found = true;
      }
    }
    if (!found) throw std::runtime_error("no rule renders as '" + t + "'");
  }
  return out;
}

inline delp::ArgumentStructure argument(const delp::GroundProgram& g, const std::vector<std::string>& rules,
                                        const std::string& conclusion) {
  return delp::make_argument(g, rules_named(g, rules), lit(g, conclusion));
}

}  // namespace testing
