#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "delp/core.hpp"
#include "delp/ground.hpp"
#include "support.hpp"

using namespace delp;
using testing::literal;

namespace {

bool has_violation(const Program& p, const std::string& fragment) {
  for (const auto& v : validate(p)) {
    if (v.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

// Substitutes constants for variables; the independent instance check below
// recomputes every instance this way.
Literal substitute(const Literal& l, const std::map<std::string, std::string>& theta) {
  Literal out = l;
  for (Term& t : out.args) {
    if (t.is_variable()) t = Term::constant(theta.at(t.name));
  }
  return out;
}

std::string ground_rule_text(const Rule& r, const std::map<std::string, std::string>& theta) {
  std::string out = substitute(r.head, theta).to_string() + (r.kind == RuleKind::Strict ? " <- " : " -< ");
  std::vector<std::string> pos;
  std::vector<std::string> neg;
  for (const BodyAtom& b : r.body) {
    (b.default_negated ? neg : pos).push_back(substitute(b.literal, theta).to_string());
  }
  // Bodies are sets: render them sorted so the comparison ignores order.
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::sort(neg.begin(), neg.end());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
  if (pos.empty() && neg.empty()) return out + "true";
  std::string body;
  for (const auto& s : pos) body += (body.empty() ? "" : ", ") + s;
  for (const auto& s : neg) body += (body.empty() ? "not " : ", not ") + s;
  return out + body;
}

std::string normalized(const GroundProgram& g, RuleId id) {
  const GroundRule& r = g.rule(id);
  std::vector<std::string> pos;
  std::vector<std::string> neg;
  for (Lit l : r.body) pos.push_back(g.to_string(l));
  for (Lit l : r.assumptions) neg.push_back(g.to_string(l));
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  std::string out = g.to_string(r.head) + (r.is_strict() ? " <- " : " -< ");
  if (pos.empty() && neg.empty()) return out + "true";
  std::string body;
  for (const auto& s : pos) body += (body.empty() ? "" : ", ") + s;
  for (const auto& s : neg) body += (body.empty() ? "not " : ", not ") + s;
  return out + body;
}

std::vector<std::string> variables_of(const Rule& r) {
  std::set<std::string> vars;
  auto scan = [&](const Literal& l) {
    for (const Term& t : l.args) {
      if (t.is_variable()) vars.insert(t.name);
    }
  };
  scan(r.head);
  for (const BodyAtom& b : r.body) scan(b.literal);
  return {vars.begin(), vars.end()};
}

std::set<std::string> constants_of(const Program& p) {
  std::set<std::string> out;
  auto scan = [&](const Literal& l) {
    for (const Term& t : l.args) {
      if (!t.is_variable()) out.insert(t.name);
    }
  };
  for (const Literal& f : p.facts) scan(f);
  for (const auto* rules : {&p.strict_rules, &p.defeasible_rules}) {
    for (const Rule& r : *rules) {
      scan(r.head);
      for (const BodyAtom& b : r.body) scan(b.literal);
    }
  }
  return out;
}

// Every instance of every schematic rule, built by brute-force substitution.
std::multiset<std::string> expected_instances(const Program& p) {
  const auto consts = constants_of(p);
  const std::vector<std::string> cs(consts.begin(), consts.end());
  std::set<std::string> out;
  for (const auto* rules : {&p.strict_rules, &p.defeasible_rules}) {
    for (const Rule& r : *rules) {
      const auto vars = variables_of(r);
      std::size_t total = 1;
      for (std::size_t i = 0; i < vars.size(); ++i) total *= cs.size();
      for (std::size_t k = 0; k < total; ++k) {
        std::map<std::string, std::string> theta;
        std::size_t rest = k;
        for (const auto& v : vars) {
          theta[v] = cs[rest % cs.size()];
          rest /= cs.size();
        }
        out.insert(ground_rule_text(r, theta));
      }
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("complement flips strong negation only") {
  CHECK(complement(literal("p")) == literal("~p"));
  CHECK(complement(literal("~p")) == literal("p"));
  CHECK(complement(literal("flies(tina)")) == literal("~flies(tina)"));
  Literal open{false, "flies", {Term::variable("X")}};
  CHECK_THROWS_AS(complement(open), Error);
}

TEST_CASE("interned literals complement by flipping the low bit") {
  const GroundProgram g = testing::corpus_ground("p2_1_birds");
  for (std::uint32_t c = 0; c < g.literal_count(); ++c) {
    const Lit l{c};
    CHECK(l.complement().complement() == l);
    CHECK(g.literal(l.complement()) == complement(g.literal(l)));
  }
}

TEST_CASE("grounding instantiates over the program constants") {
  const GroundProgram g = testing::corpus_ground("p2_1_birds");
  std::size_t flies_bird = 0;
  for (RuleId r : g.defeasible_rules()) {
    const std::string s = g.rule_to_string(r);
    if (s.rfind("flies(", 0) == 0 && s.find("-< bird(") != std::string::npos) ++flies_bird;
  }
  CHECK(flies_bird == 2);
  CHECK(g.constants() == std::vector<std::string>{"tina", "tweety", });
}

TEST_CASE("risky_company over in_fusion has one instance per constant pair") {
  const Program p = testing::corpus_program("p2_4_stocks");
  const GroundProgram g = ground_program(p);
  // Two variables over the two constants acme and steel.
  const std::size_t n = constants_of(p).size();
  std::size_t count = 0;
  for (RuleId r : g.defeasible_rules()) {
    const std::string s = g.rule_to_string(r);
    if (s.rfind("risky_company(", 0) == 0 && s.find("in_fusion(") != std::string::npos) ++count;
  }
  CHECK(n == 2);
  CHECK(count == n * n);
  CHECK(count == 4);
}

TEST_CASE("ground programs are a fixpoint of grounding") {
  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    const GroundProgram g = testing::corpus_ground(name);
    const Program once = to_program(g);
    const Program twice = to_program(ground_program(once));
    CHECK(once == twice);
  }
}

TEST_CASE("grounding produces exactly the substitution instances") {
  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    const Program p = testing::corpus_program(name);
    const GroundProgram g = ground_program(p);
    std::multiset<std::string> got;
    for (RuleId r = 0; r < g.rules().size(); ++r) got.insert(normalized(g, r));
    CHECK(got == expected_instances(p));
  }
}

TEST_CASE("grounding with variables but no constants is an error") {
  const Program p = testing::parse_or_throw("p(X) -< q(X).\n");
  CHECK_THROWS_AS(ground_program(p), Error);
}

TEST_CASE("duplicate ground rules collapse") {
  const GroundProgram g = testing::ground_text("q(a).\np(X) -< q(X).\np(a) -< q(a).\n");
  CHECK(g.defeasible_rules().size() == 1);
}

TEST_CASE("language membership") {
  const GroundProgram ex51 = testing::corpus_ground("ex5_1_tree");
  CHECK_FALSE(in_language(ex51, literal("w")));
  CHECK(in_language(ex51, literal("~a")));
  const GroundProgram stocks = testing::corpus_ground("p2_4_stocks");
  CHECK_FALSE(in_language(stocks, literal("buy_stock(alfa)")));
  CHECK(in_language(stocks, literal("buy_stock(acme)")));
  CHECK_FALSE(in_language(stocks, literal("buy_stock(acme, steel)")));
  const GroundProgram birds = testing::corpus_ground("p2_1_birds");
  CHECK(in_language(birds, literal("flies(tina)")));
  CHECK_FALSE(in_language(birds, literal("flies(pluto)")));
}

TEST_CASE("validation accepts every corpus program") {
  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    CHECK(validate(testing::corpus_program(name)).empty());
  }
}

TEST_CASE("validation rejects complementary facts") {
  CHECK(has_violation(testing::parse_or_throw("b.\n~b.\n"), "contradictory"));
}

TEST_CASE("validation rejects a strict part that derives a contradiction") {
  const Program p = testing::parse_or_throw("a.\nb <- a.\n~b <- a.\n");
  const auto v = validate(p);
  REQUIRE(v.size() == 1);
  CHECK_FALSE(v[0].rules.empty());
}

TEST_CASE("validation rejects cyclic priorities") {
  Program p = testing::parse_or_throw("r1: p -< q.\nr2: ~p -< q.\nq.\n");
  p.priorities = {{"r1", "r2"}, {"r2", "r1"}};
  CHECK(has_violation(p, "cycl"));
  p.priorities = {{"r1", "r1"}};
  CHECK(has_violation(p, "cycl"));
}

TEST_CASE("validation rejects features the mode does not license") {
  Program p;
  p.facts = {literal("q")};
  Rule r;
  r.head = literal("p");
  r.body = {BodyAtom{true, literal("s")}, BodyAtom{false, literal("q")}};
  p.defeasible_rules = {r};
  CHECK_FALSE(validate(p).empty());
  p.mode.default_negation = true;
  CHECK(validate(p).empty());

  Program s;
  Rule strict;
  strict.kind = RuleKind::Strict;
  strict.head = literal("p");
  strict.body = {BodyAtom{true, literal("q")}};
  s.strict_rules = {strict};
  s.mode.default_negation = true;
  CHECK_FALSE(validate(s).empty());

  Program pr;
  Rule presumption;
  presumption.head = literal("a");
  pr.defeasible_rules = {presumption};
  CHECK_FALSE(validate(pr).empty());
  pr.mode.presumptions = true;
  CHECK(validate(pr).empty());
}

TEST_CASE("priorities must name labelled defeasible rules") {
  Program p = testing::parse_or_throw("r1: p -< q.\nq.\n");
  p.priorities = {{"r1", "nope"}};
  CHECK_FALSE(validate(p).empty());
}

TEST_CASE("priority closure is transitive") {
  const GroundProgram g =
      testing::ground_text("r1: p -< q.\nr2: ~p -< q.\nr3: p -< q, s.\nq.\ns.\nr1 > r2.\nr2 > r3.\n");
  const auto ids = testing::rules_named(g, {"p -< q", "~p -< q", "p -< q, s"});
  CHECK(g.outranks(ids[0], ids[1]));
  CHECK(g.outranks(ids[1], ids[2]));
  CHECK(g.outranks(ids[0], ids[2]));
  CHECK_FALSE(g.outranks(ids[2], ids[0]));
  CHECK_FALSE(g.outranks(ids[0], ids[0]));
}

TEST_CASE("program equality ignores order and duplicates") {
  const Program a = testing::parse_or_throw("q.\np -< q, r.\nr.\n");
  const Program b = testing::parse_or_throw("r.\nq.\np -< r, q.\np -< q, r.\n");
  CHECK(a == b);
  CHECK_FALSE(a == testing::parse_or_throw("q.\nr.\np -< q.\n"));
}

TEST_CASE("mode names") {
  CHECK(parse_mode("core") == Mode{});
  CHECK(parse_mode("default-negation,presumptions") == Mode{true, true});
  CHECK(to_string(Mode{true, false}) == "default-negation");
  CHECK_THROWS_AS(parse_mode("bogus"), Error);
}
