#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>

#include "delp/parser.hpp"
#include "support.hpp"

using namespace delp;

namespace {

const ParseDiagnostic& only_error(const ParseResult& r) {
  REQUIRE_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  return r.diagnostics.front();
}

bool mentions(const ParseResult& r, const std::string& fragment) {
  for (const auto& d : r.diagnostics) {
    if (d.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("strict rule") {
  const ParseResult r = parse_program("bird(X) <- chicken(X).");
  REQUIRE(r.ok());
  REQUIRE(r.program->strict_rules.size() == 1);
  const Rule& rule = r.program->strict_rules[0];
  CHECK(rule.kind == RuleKind::Strict);
  CHECK(rule.head.to_string() == "bird(X)");
  REQUIRE(rule.body.size() == 1);
  CHECK(rule.body[0].literal.to_string() == "chicken(X)");
  CHECK(rule.head.args[0].is_variable());
}

TEST_CASE("defeasible rule with a negated head") {
  const ParseResult r = parse_program("~flies(X) -< chicken(X).");
  REQUIRE(r.ok());
  REQUIRE(r.program->defeasible_rules.size() == 1);
  CHECK(r.program->defeasible_rules[0].head.negated);
  CHECK(r.program->defeasible_rules[0].head.predicate == "flies");
}

TEST_CASE("default negation in a strict rule is rejected") {
  const ParseResult r = parse_program("p <- not q.", Mode{true, false});
  CHECK(only_error(r).message == "default negation not allowed in strict rules");
}

TEST_CASE("default negation needs its mode") {
  CHECK(mentions(parse_program("p -< not q."), "default negation requires default-negation mode"));
  const ParseResult ok = parse_program("p -< q, not s.", Mode{true, false});
  REQUIRE(ok.ok());
  CHECK(ok.program->defeasible_rules[0].body[1].default_negated);
}

TEST_CASE("not is an ordinary identifier unless it prefixes a literal") {
  const ParseResult r = parse_program("not.\np -< not.");
  REQUIRE(r.ok());
  CHECK(r.program->facts[0].predicate == "not");
}

TEST_CASE("presumptions") {
  CHECK(mentions(parse_program("a -< true."), "presumption requires presumptions mode"));
  const ParseResult r = parse_program("a -< true.", Mode{false, true});
  REQUIRE(r.ok());
  CHECK(r.program->defeasible_rules[0].is_presumption());
}

TEST_CASE("labels and priorities") {
  const ParseResult r = parse_program("r1: p -< q.\nr2: ~p -< q.\nq.\nr2 > r1.\n");
  REQUIRE(r.ok());
  CHECK(r.program->defeasible_rules[0].label == std::optional<std::string>("r1"));
  REQUIRE(r.program->priorities.size() == 1);
  CHECK(r.program->priorities[0] == Priority{"r2", "r1"});
}

TEST_CASE("a priority must reference a labelled defeasible rule") {
  CHECK(mentions(parse_program("r1: p -< q.\nq.\nr1 > r9.\n"), "does not name a labelled rule"));
  CHECK(mentions(parse_program("r1: p -< q.\ns1: s <- q.\nq.\nr1 > s1.\n"), "is not a defeasible rule"));
}

TEST_CASE("range restriction") {
  CHECK(mentions(parse_program("p(X) -< q(Y).\nq(a).\n"), "head variable X does not occur in the body"));
}

TEST_CASE("facts must be ground") {
  CHECK(mentions(parse_program("p(X)."), "facts must be ground"));
}

TEST_CASE("diagnostics carry file, line and column") {
  const ParseResult r = parse_program("q.\np -< q\nr.\n", {}, "prog.delp");
  const ParseDiagnostic& d = only_error(r);
  CHECK(d.span.file == "prog.delp");
  CHECK(d.span.start_line == 3);
  CHECK(d.to_string().rfind("prog.delp:3:", 0) == 0);
  CHECK(d.to_string().find(": error: ") != std::string::npos);
}

TEST_CASE("columns count code points") {
  const ParseResult r = parse_program("% é\np -< q, é.\n");
  const ParseDiagnostic& d = only_error(r);
  CHECK(d.span.start_line == 2);
  CHECK(d.span.start_column == 9);  // the é, counted as one column
}

TEST_CASE("recovery reports several errors") {
  const ParseResult r = parse_program("p -< .\nq.\nr <- ).\ns.\n");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics.size() >= 2);
}

TEST_CASE("garbage never throws") {
  std::mt19937_64 rng(5);
  const std::string alphabet = "abXY(),.~:-<>% \n\tnot true_1é";
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const std::size_t n = rng() % 40;
    for (std::size_t k = 0; k < n; ++k) text += alphabet[rng() % alphabet.size()];
    CHECK_NOTHROW(parse_program(text, Mode{true, true}));
    CHECK_NOTHROW(parse_query(text));
  }
}

TEST_CASE("queries") {
  const QueryResult pos = parse_query("flies(tina)");
  REQUIRE(pos.literal);
  CHECK(*pos.literal == Literal{false, "flies", {Term::constant("tina")}});
  const QueryResult neg = parse_query("  ~flies(tweety) ");
  REQUIRE(neg.literal);
  CHECK(neg.literal->negated);
  const QueryResult open = parse_query("flies(X)");
  CHECK_FALSE(open.literal);
  REQUIRE(open.diagnostic);
  CHECK(open.diagnostic->message == "queries must be ground");
  CHECK_FALSE(parse_query("flies(").literal);
  CHECK_FALSE(parse_query("").literal);
  CHECK_FALSE(parse_query("p q").literal);
}

TEST_CASE("formatting") {
  CHECK(format_program(testing::parse_or_throw("penguin(tweety).")) == "penguin(tweety).\n");
  Program p = testing::parse_or_throw("a -< true.", Mode{false, true});
  CHECK(format_program(p) == "a -< true.\n");
}

TEST_CASE("round trip") {
  const Program p23 = testing::corpus_program("p2_3_strict_conflict");
  const ParseResult again = parse_program(format_program(p23));
  REQUIRE(again.ok());
  CHECK(*again.program == p23);

  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    const Program p = testing::corpus_program(name);
    const std::string text = format_program(p);
    const ParseResult r = parse_program(text, testing::corpus_mode(name));
    REQUIRE(r.ok());
    CHECK(*r.program == p);
    CHECK(format_program(*r.program) == text);
  }
}

TEST_CASE("every corpus program parses without diagnostics") {
  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    const ParseResult r =
        parse_program(testing::read_text(testing::corpus_path(name)), testing::corpus_mode(name), name);
    CHECK(r.ok());
    CHECK(r.diagnostics.empty());
  }
}

// The canonical text is the wire format; any change here is a format break.
// Set DELP_UPDATE_GOLDEN=1 to rewrite the files after an intended change.
TEST_CASE("golden canonical forms") {
  const bool update = std::getenv("DELP_UPDATE_GOLDEN") != nullptr;
  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    const std::string path = std::string(DELP_GOLDEN_DIR) + "/" + name + ".delp";
    const std::string text = format_program(testing::corpus_program(name));
    if (update) {
      std::ofstream(path, std::ios::binary) << text;
      continue;
    }
    CHECK(testing::read_text(path) == text);
  }
}
