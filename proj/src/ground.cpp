#include "delp/ground.hpp"

#include <algorithm>
#include <map>

namespace delp {

namespace {

std::string atom_key(const std::string& predicate, const std::vector<std::string>& args) {
  std::string key = predicate;
  key += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) key += ',';
    key += args[i];
  }
  key += ')';
  return key;
}

using Binding = std::map<std::string, std::string>;

Literal substitute(const Literal& l, const Binding& b) {
  Literal out = l;
  for (Term& t : out.args) {
    if (t.is_variable()) t = Term::constant(b.at(t.name));
  }
  return out;
}

void note_variables(const Literal& l, std::vector<std::string>& vars) {
  for (const Term& t : l.args) {
    if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end()) vars.push_back(t.name);
  }
}

}  // namespace

Lit GroundProgram::intern(const Literal& literal) {
  std::vector<std::string> args;
  args.reserve(literal.args.size());
  for (const Term& t : literal.args) args.push_back(t.name);
  const std::string key = atom_key(literal.predicate, args);
  auto [it, inserted] = atom_index_.try_emplace(key, static_cast<std::uint32_t>(atoms_.size()));
  if (inserted) atoms_.push_back({literal.predicate, std::move(args)});
  return Lit::make(it->second, literal.negated);
}

std::optional<Lit> GroundProgram::find(const Literal& literal) const {
  if (!literal.is_ground()) return std::nullopt;
  std::vector<std::string> args;
  for (const Term& t : literal.args) args.push_back(t.name);
  auto it = atom_index_.find(atom_key(literal.predicate, args));
  if (it == atom_index_.end()) return std::nullopt;
  return Lit::make(it->second, literal.negated);
}

Literal GroundProgram::literal(Lit lit) const {
  const Atom& a = atoms_.at(lit.atom());
  Literal out;
  out.negated = lit.negated();
  out.predicate = a.predicate;
  for (const std::string& c : a.args) out.args.push_back(Term::constant(c));
  return out;
}

std::string GroundProgram::to_string(Lit lit) const { return literal(lit).to_string(); }

std::string GroundProgram::rule_to_string(RuleId id) const {
  const GroundRule& r = rules_.at(id);
  std::string out = to_string(r.head);
  out += r.is_strict() ? " <- " : " -< ";
  if (r.body.empty() && r.assumptions.empty()) return out + "true";
  bool first = true;
  for (Lit l : r.body) {
    out += (first ? "" : ", ") + to_string(l);
    first = false;
  }
  for (Lit l : r.assumptions) {
    out += (first ? "not " : ", not ") + to_string(l);
    first = false;
  }
  return out;
}

bool GroundProgram::outranks(RuleId a, RuleId b) const {
  const auto& la = rules_.at(a).label;
  const auto& lb = rules_.at(b).label;
  if (!la || !lb) return false;
  return outranks_.count({*la, *lb}) != 0;
}

GroundProgram ground_program(const Program& program) {
  GroundProgram g;
  g.mode_ = program.mode;

  auto note_literal = [&](const Literal& l) {
    g.predicates_.insert({l.predicate, l.args.size()});
    for (const Term& t : l.args) {
      if (!t.is_variable() && std::find(g.constants_.begin(), g.constants_.end(), t.name) == g.constants_.end()) {
        g.constants_.push_back(t.name);
      }
    }
  };
  for (const Literal& f : program.facts) note_literal(f);
  for (const auto* rules : {&program.strict_rules, &program.defeasible_rules}) {
    for (const Rule& r : *rules) {
      note_literal(r.head);
      for (const BodyAtom& b : r.body) note_literal(b.literal);
    }
  }

  for (const Literal& f : program.facts) {
    if (!f.is_ground()) throw Error("facts must be ground: " + f.to_string());
    Lit l = g.intern(f);
    if (std::find(g.facts_.begin(), g.facts_.end(), l) == g.facts_.end()) g.facts_.push_back(l);
  }

  struct Key {
    RuleKind kind;
    Lit head;
    std::vector<Lit> body;
    std::vector<Lit> assumptions;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, RuleId> seen;

  auto add_instance = [&](const Rule& r, const Binding& b) {
    GroundRule gr;
    gr.kind = r.kind;
    gr.label = r.label;
    gr.head = g.intern(substitute(r.head, b));
    for (const BodyAtom& atom : r.body) {
      Lit l = g.intern(substitute(atom.literal, b));
      auto& dst = atom.default_negated ? gr.assumptions : gr.body;
      if (std::find(dst.begin(), dst.end(), l) == dst.end()) dst.push_back(l);
    }
    Key key{gr.kind, gr.head, gr.body, gr.assumptions};
    std::sort(key.body.begin(), key.body.end());
    std::sort(key.assumptions.begin(), key.assumptions.end());
    if (seen.count(key)) return;
    const auto id = static_cast<RuleId>(g.rules_.size());
    seen.emplace(std::move(key), id);
    (gr.is_strict() ? g.strict_ : g.defeasible_).push_back(id);
    g.rules_.push_back(std::move(gr));
  };

  for (const auto* rules : {&program.strict_rules, &program.defeasible_rules}) {
    for (const Rule& r : *rules) {
      std::vector<std::string> vars;
      note_variables(r.head, vars);
      for (const BodyAtom& b : r.body) note_variables(b.literal, vars);
      if (vars.empty()) {
        add_instance(r, {});
        continue;
      }
      if (g.constants_.empty()) throw Error("rule with variables but no constants in the program: " + r.to_string());
      // Odometer over constant tuples, first variable most significant.
      std::vector<std::size_t> idx(vars.size(), 0);
      while (true) {
        Binding b;
        for (std::size_t i = 0; i < vars.size(); ++i) b[vars[i]] = g.constants_[idx[i]];
        add_instance(r, b);
        std::size_t pos = vars.size();
        while (pos > 0 && ++idx[pos - 1] == g.constants_.size()) {
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
  }

  g.readers_.assign(g.literal_count(), {});
  for (RuleId id = 0; id < g.rules_.size(); ++id) {
    for (Lit l : g.rules_[id].body) g.readers_[l.code].push_back(id);
  }

  // Transitive closure of the declared priorities.
  for (const Priority& p : program.priorities) g.outranks_.insert({p.higher, p.lower});
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : std::vector(g.outranks_.begin(), g.outranks_.end())) {
      for (auto it = g.outranks_.lower_bound({b, ""}); it != g.outranks_.end() && it->first == b; ++it) {
        if (g.outranks_.insert({a, it->second}).second) changed = true;
      }
    }
  }
  return g;
}

Program to_program(const GroundProgram& ground) {
  Program p;
  p.mode = ground.mode();
  for (Lit f : ground.facts()) p.facts.push_back(ground.literal(f));
  for (RuleId id = 0; id < ground.rules().size(); ++id) {
    const GroundRule& gr = ground.rule(id);
    Rule r;
    r.kind = gr.kind;
    r.label = gr.label;
    r.head = ground.literal(gr.head);
    for (Lit l : gr.body) r.body.push_back({false, ground.literal(l)});
    for (Lit l : gr.assumptions) r.body.push_back({true, ground.literal(l)});
    (gr.is_strict() ? p.strict_rules : p.defeasible_rules).push_back(std::move(r));
  }
  // Recover the priority pairs between labels present in the ground program.
  std::vector<std::string> labels;
  for (const GroundRule& gr : ground.rules()) {
    if (gr.label && std::find(labels.begin(), labels.end(), *gr.label) == labels.end()) labels.push_back(*gr.label);
  }
  for (const std::string& a : labels) {
    for (const std::string& b : labels) {
      RuleId ra = 0;
      RuleId rb = 0;
      for (RuleId id = 0; id < ground.rules().size(); ++id) {
        if (ground.rule(id).label == a) ra = id;
        if (ground.rule(id).label == b) rb = id;
      }
      if (ground.outranks(ra, rb)) p.priorities.push_back({a, b});
    }
  }
  return p;
}

bool in_language(const GroundProgram& ground, const Literal& literal) {
  if (!literal.is_ground()) return false;
  if (!ground.predicates().count({literal.predicate, literal.args.size()})) return false;
  const auto& cs = ground.constants();
  return std::all_of(literal.args.begin(), literal.args.end(),
                     [&](const Term& t) { return std::find(cs.begin(), cs.end(), t.name) != cs.end(); });
}

}  // namespace delp
