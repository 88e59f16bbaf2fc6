#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delp/dialectics.hpp"

namespace delp {

/// One node of a serialized dialectical tree.
struct ExportedNode {
  std::size_t tree = 0;  // position among the trees of one export
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::string conclusion;
  std::vector<std::string> rules;
  std::optional<Mark> mark;
  std::optional<DefeaterKind> edge;
  bool pruned = false;

  friend bool operator==(const ExportedNode&, const ExportedNode&) = default;
};

std::vector<ExportedNode> to_records(const GroundProgram& g, const DialecticalTree& tree, std::size_t tree_index = 0);

/// Graphviz rendering: one node per argument labelled "<{rules}, h> / U|D",
/// edges styled by defeater kind, pruned placeholders dashed.
std::string to_dot(const GroundProgram& g, const DialecticalTree& tree, const std::string& name = "tree");

/// One JSON object per node and line, keys in sorted order.
std::string to_jsonl(const GroundProgram& g, const DialecticalTree& tree, std::size_t tree_index = 0);

/// Parses the output of to_jsonl. Throws Error on malformed input.
std::vector<ExportedNode> parse_jsonl(const std::string& text);

/// Recomputes marks from the tree shape alone, ignoring pruned placeholders.
std::vector<ExportedNode> remark(std::vector<ExportedNode> nodes);

/// Argumentation lines in depth-first order: "+" for each accepted
/// extension, "x" for each rejected defeater with the conditions it breaks,
/// "~" for pruned placeholders.
std::string to_trace(const GroundProgram& g, const DialecticalTree& tree);

}  // namespace delp
