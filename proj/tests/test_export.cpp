#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include <json.hpp>

#include "delp/tree_export.hpp"
#include "support.hpp"

using namespace delp;
using testing::argument;

namespace {

std::size_t count_matches(const std::string& text, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

const std::regex kNodeLine(R"(\n  n\d+ \[label=)");
const std::regex kEdgeLine(R"(\n  n\d+ -> n\d+ )");

DialecticalTree ex51_tree(const GroundProgram& g, bool pruned) {
  WarrantEngine e(g, {});
  const auto root = argument(g, {"a -< b", "b -< c"}, "a");
  return pruned ? e.build_pruned_tree(root) : mark_tree(e.build_tree(root));
}

}  // namespace

TEST_CASE("DOT rendering of the exhaustive tree") {
  const GroundProgram g = testing::corpus_ground("ex5_1_tree");
  const std::string dot = to_dot(g, ex51_tree(g, false), "fig");
  CHECK(dot.rfind("digraph \"fig\" {\n", 0) == 0);
  CHECK(count_matches(dot, kNodeLine) == 7);
  CHECK(count_matches(dot, kEdgeLine) == 6);
  CHECK(dot.find("n0 [label=\"⟨{a -< b; b -< c}, a⟩ / D\"") != std::string::npos);
  CHECK(dot.find("style=bold") != std::string::npos);  // blocking edges
  CHECK(dot.find("style=dashed") == std::string::npos);
}

TEST_CASE("DOT rendering of a single node") {
  const GroundProgram g = testing::corpus_ground("p2_1_birds");
  WarrantEngine e(g, {});
  const auto t = mark_tree(e.build_tree(argument(g, {}, "~flies(tweety)")));
  const std::string dot = to_dot(g, t);
  CHECK(count_matches(dot, kNodeLine) == 1);
  CHECK(count_matches(dot, kEdgeLine) == 0);
  CHECK(dot.find("/ U\"") != std::string::npos);
}

TEST_CASE("DOT rendering of the pruned tree") {
  const GroundProgram g = testing::corpus_ground("ex5_1_tree");
  const std::string dot = to_dot(g, ex51_tree(g, true));
  CHECK(count_matches(dot, kNodeLine) <= 4);
  CHECK(dot.find("/ pruned\", style=dashed") != std::string::npos);
}

TEST_CASE("assumption edges are dotted") {
  const std::string text = testing::read_text(testing::corpus_path("railway")) + "heard_whistle.\n";
  const GroundProgram g = testing::ground_text(text, Mode{true, false});
  const Answer a = answer(g, {}, testing::literal("cross_railway_tracks"), Search::Exhaustive);
  REQUIRE(a.examined.size() == 1);
  CHECK(to_dot(g, a.examined[0]).find("label=\"assumption\", style=dotted") != std::string::npos);
}

TEST_CASE("JSON lines: one sorted-key object per node") {
  const GroundProgram g = testing::corpus_ground("ex5_1_tree");
  const std::string jsonl = to_jsonl(g, ex51_tree(g, false), 3);
  std::size_t lines = 0;
  std::istringstream in(jsonl);
  for (std::string line; std::getline(in, line);) {
    ++lines;
    const auto j = nlohmann::json::parse(line);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"conclusion", "edge", "id", "mark", "parent", "pruned", "rules", "tree"});
    CHECK(j["tree"] == 3);
    // Key order in the text itself, not just in the parsed object.
    CHECK(line.rfind("{\"conclusion\":", 0) == 0);
  }
  CHECK(lines == 7);
  CHECK(jsonl.back() == '\n');
}

TEST_CASE("exported trees re-mark to the same marks") {
  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    const GroundProgram g = testing::corpus_ground(name);
    for (std::uint32_t c = 0; c < g.literal_count(); ++c) {
      for (const Search s : {Search::Pruned, Search::Exhaustive}) {
        const Answer a = answer(g, {}, g.literal(Lit{c}), s);
        std::string text;
        std::size_t index = 0;
        for (const auto& t : a.examined) text += to_jsonl(g, t, index++);
        const auto parsed = parse_jsonl(text);
        std::vector<ExportedNode> direct;
        index = 0;
        for (const auto& t : a.examined) {
          const auto recs = to_records(g, t, index++);
          direct.insert(direct.end(), recs.begin(), recs.end());
        }
        CHECK(parsed == direct);
        CHECK(remark(parsed) == parsed);
      }
    }
  }
}

TEST_CASE("re-marking repairs tampered marks") {
  const GroundProgram g = testing::corpus_ground("ex5_1_tree");
  auto records = parse_jsonl(to_jsonl(g, ex51_tree(g, false)));
  const auto original = records;
  for (auto& r : records) r.mark = Mark::Undefeated;
  CHECK(remark(records) == original);
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(parse_jsonl("{\"id\": 0}\n"), Error);
  CHECK_THROWS_AS(parse_jsonl("not json\n"), Error);
  const std::string bad_mark =
      R"({"conclusion":"a","edge":null,"id":0,"mark":"X","parent":null,"pruned":false,"rules":[],"tree":0})";
  CHECK_THROWS_AS(parse_jsonl(bad_mark + "\n"), Error);
  const std::string orphan =
      R"({"conclusion":"a","edge":"proper","id":1,"mark":"U","parent":7,"pruned":false,"rules":[],"tree":0})";
  CHECK_THROWS_AS(remark(parse_jsonl(orphan + "\n")), Error);
}

TEST_CASE("trace names the broken condition") {
  const GroundProgram g = testing::corpus_ground("hobbes");
  const Answer a = answer(g, {}, testing::literal("~dangerous(hobbes)"), Search::Exhaustive);
  std::string trace;
  for (const auto& t : a.examined) trace += to_trace(g, t);
  CHECK(trace.find("rejected: blocking after blocking") != std::string::npos);
  CHECK(trace.rfind("+ <{~dangerous(hobbes) -< baby(hobbes)}, ~dangerous(hobbes)> D\n", 0) == 0);

  const GroundProgram ex56 = testing::corpus_ground("ex5_6_concordance");
  const Answer p = answer(ex56, {}, testing::literal("p"), Search::Exhaustive);
  std::string t56;
  for (const auto& t : p.examined) t56 += to_trace(ex56, t);
  CHECK(t56.find("rejected: concordance") != std::string::npos);
  const GroundProgram ex52 = testing::corpus_ground("ex5_2_subtree");
  const Answer q = answer(ex52, {}, testing::literal("a"), Search::Exhaustive);
  std::string t52;
  for (const auto& t : q.examined) t52 += to_trace(ex52, t);
  CHECK(t52.find("rejected: sub-argument repetition, blocking after blocking") != std::string::npos);
}

TEST_CASE("pruned placeholders appear in the trace") {
  const GroundProgram g = testing::corpus_ground("ex5_1_tree");
  const std::string trace = to_trace(g, ex51_tree(g, true));
  CHECK(trace.find(", pruned)\n") != std::string::npos);
}
