#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delp/argumentation.hpp"
#include "delp/comparison.hpp"

namespace delp {

enum class DefeaterKind : std::uint8_t { Proper, Blocking, Assumption };

std::string to_string(DefeaterKind kind);

struct Defeater {
  ArgumentStructure argument;
  DefeaterKind kind = DefeaterKind::Proper;
  /// Every attack by `argument` on the target that makes it a defeater.
  std::vector<AttackReport> attacks;
};

/// The conditions an argumentation line must keep when it grows.
enum class LineCondition : std::uint8_t {
  Concordance,            // each side stays non-contradictory with Pi
  SubArgument,            // no argument repeats (part of) an earlier one
  BlockingAfterBlocking,  // a blocking defeater may only be answered properly
};

std::string to_string(LineCondition condition);

struct ArgumentationLine {
  std::vector<ArgumentStructure> arguments;
  /// kinds[i] is how arguments[i + 1] defeats arguments[i].
  std::vector<DefeaterKind> kinds;

  std::vector<ArgumentStructure> supporting() const;
  std::vector<ArgumentStructure> interfering() const;
};

/// Conditions broken by appending `next` to an acceptable line; empty when
/// the extension is acceptable.
std::vector<LineCondition> extension_violations(const GroundProgram& g, const ArgumentationLine& line,
                                                const Defeater& next);

bool is_acceptable_extension(const GroundProgram& g, const ArgumentationLine& line, const Defeater& next);

enum class Mark : std::uint8_t { Undefeated, Defeated };

struct RejectedDefeater {
  ArgumentStructure argument;
  DefeaterKind kind = DefeaterKind::Proper;
  std::vector<LineCondition> violated;
};

struct TreeNode {
  ArgumentStructure argument;
  std::optional<DefeaterKind> edge;  // how this node defeats its parent
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  std::optional<Mark> mark;
  /// Acceptable defeater left unexplored by pruning.
  bool pruned = false;
  std::vector<RejectedDefeater> rejected;
};

/// Flat tree; nodes[0] is the root and children are indices into `nodes`.
struct DialecticalTree {
  std::vector<TreeNode> nodes;
  std::size_t expanded = 0;
  std::size_t pruned = 0;

  const TreeNode& root() const { return nodes.front(); }
  ArgumentationLine line_to(std::size_t node) const;
};

/// Marks leaves U and inner nodes U iff every child is D. Pruned
/// placeholders take no part in marking.
DialecticalTree mark_tree(DialecticalTree tree);

struct WarrantResult {
  ArgumentStructure argument;
  DialecticalTree tree;
};

enum class AnswerKind : std::uint8_t { Yes, No, Undecided, Unknown };

std::string to_string(AnswerKind kind);

struct Answer {
  AnswerKind kind = AnswerKind::Unknown;
  /// Warrant for the query (YES) or for its complement (NO).
  std::optional<WarrantResult> witness;
  /// Every tree examined, in order; all root-D trees for UNDECIDED.
  std::vector<DialecticalTree> examined;
};

enum class Search : std::uint8_t { Pruned, Exhaustive };

struct DialecticsOptions {
  std::size_t max_nodes = 10000;
  ArgumentOptions arguments;
};

/// Dialectical analysis for one query. Holds the per-query caches.
class WarrantEngine {
 public:
  WarrantEngine(const GroundProgram& g, CriterionConfig cfg, DialecticsOptions options = {});

  /// Defeaters ordered proper, blocking, assumption; then by conclusion, rule
  /// count and rule ids.
  const std::vector<Defeater>& defeaters_of(const ArgumentStructure& target);

  /// Exhaustive, unmarked tree.
  DialecticalTree build_tree(const ArgumentStructure& root);

  /// Depth-first construction that stops expanding a node once one child is
  /// undefeated. The returned tree is marked and may be partial.
  DialecticalTree build_pruned_tree(const ArgumentStructure& root);

  std::optional<WarrantResult> warrants(Lit h, std::vector<DialecticalTree>* examined = nullptr);
  std::optional<WarrantResult> warrants_pruned(Lit h, std::vector<DialecticalTree>* examined = nullptr);

  Answer answer(const Literal& query, Search search = Search::Pruned);

  ArgumentBuilder& arguments() { return builder_; }
  Comparator& comparator() { return comparator_; }

 private:
  void expand(DialecticalTree& tree, std::size_t node, ArgumentationLine& line);
  bool defeated_pruned(DialecticalTree& tree, std::size_t node, ArgumentationLine& line);
  std::size_t add_child(DialecticalTree& tree, std::size_t parent, const Defeater& d);
  void charge_node(const DialecticalTree& tree) const;

  const GroundProgram& g_;
  DialecticsOptions options_;
  ArgumentBuilder builder_;
  Comparator comparator_;
  std::map<ArgumentStructure, std::vector<Defeater>> defeaters_;
};

Answer answer(const GroundProgram& g, const CriterionConfig& cfg, const Literal& query,
              Search search = Search::Pruned, DialecticsOptions options = {});

/// Every literal with answer YES, in literal order.
std::vector<Lit> warranted_literals(const GroundProgram& g, const CriterionConfig& cfg,
                                    Search search = Search::Pruned, DialecticsOptions options = {});

/// Same result as warranted_literals; literals are decided in parallel.
std::vector<Lit> warranted_literals_parallel(const GroundProgram& g, const CriterionConfig& cfg,
                                             Search search = Search::Pruned, DialecticsOptions options = {});

}  // namespace delp
