#include "delp/tree_export.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace delp {

namespace {

std::string mark_text(const std::optional<Mark>& m) {
  if (!m) return "-";
  return *m == Mark::Undefeated ? "U" : "D";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

DefeaterKind parse_kind(const std::string& s) {
  if (s == "proper") return DefeaterKind::Proper;
  if (s == "blocking") return DefeaterKind::Blocking;
  if (s == "assumption") return DefeaterKind::Assumption;
  throw Error("unknown defeater kind '" + s + "'");
}

}  // namespace

std::vector<ExportedNode> to_records(const GroundProgram& g, const DialecticalTree& tree, std::size_t tree_index) {
  std::vector<ExportedNode> out;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& n = tree.nodes[i];
    ExportedNode e;
    e.tree = tree_index;
    e.id = i;
    e.parent = n.parent;
    e.conclusion = g.to_string(n.argument.conclusion);
    for (RuleId r : n.argument.rules) e.rules.push_back(g.rule_to_string(r));
    e.mark = n.mark;
    e.edge = n.edge;
    e.pruned = n.pruned;
    out.push_back(std::move(e));
  }
  return out;
}

std::string to_dot(const GroundProgram& g, const DialecticalTree& tree, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << escape(name) << "\" {\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (const ExportedNode& e : to_records(g, tree)) {
    std::string rules;
    for (std::size_t i = 0; i < e.rules.size(); ++i) rules += (i ? "; " : "") + e.rules[i];
    const std::string label = "⟨{" + rules + "}, " + e.conclusion + "⟩ / " + (e.pruned ? "pruned" : mark_text(e.mark));
    out << "  n" << e.id << " [label=\"" << escape(label) << "\"" << (e.pruned ? ", style=dashed" : "") << "];\n";
  }
  for (const ExportedNode& e : to_records(g, tree)) {
    if (!e.parent) continue;
    std::string style = "solid";
    if (e.pruned) {
      style = "dashed";
    } else if (e.edge == DefeaterKind::Blocking) {
      style = "bold";
    } else if (e.edge == DefeaterKind::Assumption) {
      style = "dotted";
    }
    out << "  n" << *e.parent << " -> n" << e.id << " [label=\"" << (e.edge ? to_string(*e.edge) : "")
        << "\", style=" << style << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_jsonl(const GroundProgram& g, const DialecticalTree& tree, std::size_t tree_index) {
  std::string out;
  for (const ExportedNode& e : to_records(g, tree, tree_index)) {
    nlohmann::json j;
    j["tree"] = e.tree;
    j["id"] = e.id;
    j["parent"] = e.parent ? nlohmann::json(*e.parent) : nlohmann::json(nullptr);
    j["conclusion"] = e.conclusion;
    j["rules"] = e.rules;
    j["mark"] = e.mark ? nlohmann::json(mark_text(e.mark)) : nlohmann::json(nullptr);
    j["edge"] = e.edge ? nlohmann::json(to_string(*e.edge)) : nlohmann::json(nullptr);
    j["pruned"] = e.pruned;
    out += j.dump() + '\n';
  }
  return out;
}

std::vector<ExportedNode> parse_jsonl(const std::string& text) {
  std::vector<ExportedNode> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ExportedNode e;
      e.tree = j.value("tree", std::size_t{0});
      e.id = j.at("id").get<std::size_t>();
      if (!j.at("parent").is_null()) e.parent = j.at("parent").get<std::size_t>();
      e.conclusion = j.at("conclusion").get<std::string>();
      e.rules = j.at("rules").get<std::vector<std::string>>();
      if (!j.at("mark").is_null()) {
        const auto m = j.at("mark").get<std::string>();
        if (m != "U" && m != "D") throw Error("bad mark '" + m + "'");
        e.mark = m == "U" ? Mark::Undefeated : Mark::Defeated;
      }
      if (!j.at("edge").is_null()) e.edge = parse_kind(j.at("edge").get<std::string>());
      e.pruned = j.at("pruned").get<bool>();
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw Error("tree record " + std::to_string(number) + ": " + ex.what());
    }
  }
  return out;
}

std::vector<ExportedNode> remark(std::vector<ExportedNode> nodes) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!index.emplace(std::pair{nodes[i].tree, nodes[i].id}, i).second) {
      throw Error("duplicate tree record " + std::to_string(nodes[i].id));
    }
  }
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].parent) continue;
    auto it = index.find({nodes[i].tree, *nodes[i].parent});
    if (it == index.end()) throw Error("tree record " + std::to_string(nodes[i].id) + " has an unknown parent");
    children[it->second].push_back(i);
  }
  std::vector<char> state(nodes.size(), 0);
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (state[i] == 2) return;
    if (state[i] == 1) throw Error("tree records contain a cycle");
    state[i] = 1;
    bool some_undefeated = false;
    for (std::size_t c : children[i]) {
      self(self, c);
      if (!nodes[c].pruned && nodes[c].mark == Mark::Undefeated) some_undefeated = true;
    }
    if (nodes[i].pruned) {
      nodes[i].mark.reset();
    } else {
      nodes[i].mark = some_undefeated ? Mark::Defeated : Mark::Undefeated;
    }
    state[i] = 2;
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) visit(visit, i);
  return nodes;
}

std::string to_trace(const GroundProgram& g, const DialecticalTree& tree) {
  std::string out;
  auto walk = [&](auto&& self, std::size_t i, const std::string& prefix) -> void {
    const TreeNode& n = tree.nodes[i];
    std::string path = prefix.empty() ? to_string(g, n.argument) : prefix + " | " + to_string(g, n.argument);
    if (n.pruned) {
      out += "~ " + path + " (" + to_string(*n.edge) + ", pruned)\n";
      return;
    }
    out += "+ " + path;
    if (n.edge) out += " (" + to_string(*n.edge) + ")";
    if (n.mark) out += *n.mark == Mark::Undefeated ? " U" : " D";
    out += '\n';
    for (const RejectedDefeater& r : n.rejected) {
      out += "x " + path + " | " + to_string(g, r.argument) + " (" + to_string(r.kind) + ") rejected:";
      for (std::size_t k = 0; k < r.violated.size(); ++k) out += (k ? ", " : " ") + to_string(r.violated[k]);
      out += '\n';
    }
    for (std::size_t c : n.children) self(self, c, path);
  };
  if (!tree.nodes.empty()) walk(walk, 0, "");
  return out;
}

}  // namespace delp
