#include "delp/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "delp/derivation.hpp"
#include "delp/ground.hpp"

namespace delp {

bool Literal::is_ground() const {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::string Literal::to_string() const {
  std::string out = negated ? "~" : "";
  out += predicate;
  if (!args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      out += args[i].name;
    }
    out += ')';
  }
  return out;
}

Literal complement(const Literal& literal) {
  if (!literal.is_ground()) throw Error("complement of non-ground literal " + literal.to_string());
  Literal out = literal;
  out.negated = !out.negated;
  return out;
}

std::string BodyAtom::to_string() const {
  return (default_negated ? "not " : "") + literal.to_string();
}

std::string Rule::to_string() const {
  std::string out;
  if (label) out += *label + ": ";
  out += head.to_string();
  out += kind == RuleKind::Strict ? " <- " : " -< ";
  if (body.empty()) {
    out += "true";
  } else {
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i].to_string();
    }
  }
  return out;
}

std::string to_string(const Mode& mode) {
  if (!mode.default_negation && !mode.presumptions) return "core";
  std::string out;
  if (mode.default_negation) out = "default-negation";
  if (mode.presumptions) out += out.empty() ? "presumptions" : ",presumptions";
  return out;
}

Mode parse_mode(const std::string& text) {
  Mode mode;
  std::stringstream in(text);
  std::string item;
  bool any = false;
  while (std::getline(in, item, ',')) {
    any = true;
    if (item == "core") continue;
    if (item == "default-negation") {
      mode.default_negation = true;
    } else if (item == "presumptions") {
      mode.presumptions = true;
    } else {
      throw Error("unknown mode '" + item + "'");
    }
  }
  if (!any) throw Error("empty mode");
  return mode;
}

namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Program Program::canonical() const {
  Program out = *this;
  sort_unique(out.facts);
  for (auto* rules : {&out.strict_rules, &out.defeasible_rules}) {
    for (Rule& r : *rules) sort_unique(r.body);
    sort_unique(*rules);
  }
  sort_unique(out.priorities);
  return out;
}

bool operator==(const Program& a, const Program& b) {
  const Program ca = a.canonical();
  const Program cb = b.canonical();
  return ca.facts == cb.facts && ca.strict_rules == cb.strict_rules && ca.defeasible_rules == cb.defeasible_rules &&
         ca.priorities == cb.priorities && ca.mode == cb.mode;
}

namespace {

void check_rule_shape(const Program& p, const Rule& r, std::vector<Violation>& out) {
  const std::string text = r.to_string();
  if (r.kind == RuleKind::Strict) {
    if (r.body.empty()) out.push_back({"strict rule with empty body", {text}});
    for (const BodyAtom& b : r.body) {
      if (b.default_negated) {
        out.push_back({"default negation not allowed in strict rules", {text}});
        break;
      }
    }
  } else {
    if (r.body.empty() && !p.mode.presumptions) {
      out.push_back({"presumption requires presumptions mode", {text}});
    }
    const bool uses_not = std::any_of(r.body.begin(), r.body.end(), [](const BodyAtom& b) { return b.default_negated; });
    if (uses_not && !p.mode.default_negation) {
      out.push_back({"default negation requires default-negation mode", {text}});
    }
  }
  std::set<std::string> body_vars;
  for (const BodyAtom& b : r.body) {
    for (const Term& t : b.literal.args) {
      if (t.is_variable()) body_vars.insert(t.name);
    }
  }
  for (const Term& t : r.head.args) {
    if (t.is_variable() && !body_vars.count(t.name)) {
      out.push_back({"head variable " + t.name + " does not occur in the body", {text}});
    }
  }
}

void check_priorities(const Program& p, std::vector<Violation>& out) {
  std::map<std::string, RuleKind> labels;
  for (const auto* rules : {&p.strict_rules, &p.defeasible_rules}) {
    for (const Rule& r : *rules) {
      if (!r.label) continue;
      if (labels.count(*r.label)) out.push_back({"duplicate rule label " + *r.label, {r.to_string()}});
      labels[*r.label] = r.kind;
    }
  }
  std::map<std::string, std::vector<std::string>> edges;
  for (const Priority& pr : p.priorities) {
    const std::string text = pr.higher + " > " + pr.lower;
    bool ok = true;
    for (const std::string& l : {pr.higher, pr.lower}) {
      auto it = labels.find(l);
      if (it == labels.end()) {
        out.push_back({"priority refers to unknown label " + l, {text}});
        ok = false;
      } else if (it->second != RuleKind::Defeasible) {
        out.push_back({"priority relates non-defeasible rule " + l, {text}});
        ok = false;
      }
    }
    if (ok) edges[pr.higher].push_back(pr.lower);
  }
  // Cycle detection by depth-first search; reports one cycle.
  std::map<std::string, int> state;
  std::vector<std::string> stack;
  bool found = false;
  auto dfs = [&](auto&& self, const std::string& v) -> void {
    if (found) return;
    state[v] = 1;
    stack.push_back(v);
    for (const std::string& w : edges[v]) {
      if (found) return;
      if (state[w] == 1) {
        auto from = std::find(stack.begin(), stack.end(), w);
        std::vector<std::string> cycle(from, stack.end());
        cycle.push_back(w);
        std::string text;
        for (std::size_t i = 0; i < cycle.size(); ++i) text += (i ? " > " : "") + cycle[i];
        out.push_back({"cyclic priorities", {text}});
        found = true;
        return;
      }
      if (state[w] == 0) self(self, w);
    }
    stack.pop_back();
    state[v] = 2;
  };
  for (const auto& [v, _] : edges) {
    if (state[v] == 0) dfs(dfs, v);
  }
}

}  // namespace

std::vector<Violation> validate(const Program& program) {
  std::vector<Violation> out;
  for (const Literal& f : program.facts) {
    if (!f.is_ground()) out.push_back({"facts must be ground", {f.to_string()}});
  }
  for (const Rule& r : program.strict_rules) check_rule_shape(program, r, out);
  for (const Rule& r : program.defeasible_rules) check_rule_shape(program, r, out);
  check_priorities(program, out);
  if (!out.empty()) return out;

  GroundProgram g;
  try {
    g = ground_program(program);
  } catch (const Error& e) {
    out.push_back({e.what(), {}});
    return out;
  }
  if (auto pair = is_contradictory(g, RuleSet::strict_part(g))) {
    out.push_back({"strict part is contradictory", {g.to_string(pair->first), g.to_string(pair->second)}});
  }
  return out;
}

}  // namespace delp
