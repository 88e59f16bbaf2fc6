#include "delp/dialectics.hpp"

#include <algorithm>
#include <exception>

namespace delp {

std::string to_string(DefeaterKind kind) {
  switch (kind) {
    case DefeaterKind::Proper: return "proper";
    case DefeaterKind::Blocking: return "blocking";
    case DefeaterKind::Assumption: return "assumption";
  }
  return "?";
}

std::string to_string(LineCondition condition) {
  switch (condition) {
    case LineCondition::Concordance: return "concordance";
    case LineCondition::SubArgument: return "sub-argument repetition";
    case LineCondition::BlockingAfterBlocking: return "blocking after blocking";
  }
  return "?";
}

std::string to_string(AnswerKind kind) {
  switch (kind) {
    case AnswerKind::Yes: return "YES";
    case AnswerKind::No: return "NO";
    case AnswerKind::Undecided: return "UNDECIDED";
    case AnswerKind::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::vector<ArgumentStructure> ArgumentationLine::supporting() const {
  std::vector<ArgumentStructure> out;
  for (std::size_t i = 0; i < arguments.size(); i += 2) out.push_back(arguments[i]);
  return out;
}

std::vector<ArgumentStructure> ArgumentationLine::interfering() const {
  std::vector<ArgumentStructure> out;
  for (std::size_t i = 1; i < arguments.size(); i += 2) out.push_back(arguments[i]);
  return out;
}

std::vector<LineCondition> extension_violations(const GroundProgram& g, const ArgumentationLine& line,
                                                const Defeater& next) {
  std::vector<LineCondition> out;

  // The side that receives `next` must stay concordant.
  const std::size_t position = line.arguments.size();
  RuleSet side = RuleSet::strict_part(g);
  for (std::size_t i = position % 2; i < position; i += 2) side.add_rules(line.arguments[i].rules);
  side.add_rules(next.argument.rules);
  if (is_contradictory(g, side)) out.push_back(LineCondition::Concordance);

  if (std::any_of(line.arguments.begin(), line.arguments.end(),
                  [&](const ArgumentStructure& earlier) { return is_subargument(next.argument, earlier); })) {
    out.push_back(LineCondition::SubArgument);
  }

  // Assumption defeaters count as proper here.
  if (!line.kinds.empty() && line.kinds.back() == DefeaterKind::Blocking && next.kind == DefeaterKind::Blocking) {
    out.push_back(LineCondition::BlockingAfterBlocking);
  }
  return out;
}

bool is_acceptable_extension(const GroundProgram& g, const ArgumentationLine& line, const Defeater& next) {
  return extension_violations(g, line, next).empty();
}

ArgumentationLine DialecticalTree::line_to(std::size_t node) const {
  ArgumentationLine line;
  std::vector<std::size_t> path;
  for (std::optional<std::size_t> n = node; n; n = nodes[*n].parent) path.push_back(*n);
  std::reverse(path.begin(), path.end());
  for (std::size_t n : path) {
    line.arguments.push_back(nodes[n].argument);
    if (nodes[n].edge) line.kinds.push_back(*nodes[n].edge);
  }
  return line;
}

DialecticalTree mark_tree(DialecticalTree tree) {
  // Children always follow their parent in `nodes`.
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    TreeNode& n = tree.nodes[i];
    if (n.pruned) {
      n.mark.reset();
      continue;
    }
    bool some_undefeated = false;
    for (std::size_t c : n.children) {
      const TreeNode& child = tree.nodes[c];
      if (!child.pruned && child.mark == Mark::Undefeated) some_undefeated = true;
    }
    n.mark = some_undefeated ? Mark::Defeated : Mark::Undefeated;
  }
  return tree;
}

WarrantEngine::WarrantEngine(const GroundProgram& g, CriterionConfig cfg, DialecticsOptions options)
    : g_(g), options_(options), builder_(g, options.arguments), comparator_(g, cfg) {}

const std::vector<Defeater>& WarrantEngine::defeaters_of(const ArgumentStructure& target) {
  auto it = defeaters_.find(target);
  if (it != defeaters_.end()) return it->second;

  std::vector<Defeater> out;
  auto slot = [&](const ArgumentStructure& attacker) -> Defeater& {
    for (Defeater& d : out) {
      if (d.argument == attacker) return d;
    }
    out.push_back({attacker, DefeaterKind::Blocking, {}});
    return out.back();
  };
  // Per attacker: proper if any attack is proper, else assumption, else blocking.
  std::map<ArgumentStructure, std::pair<bool, bool>> flags;  // proper, assumption
  for (const AttackReport& r : builder_.counter_arguments(target)) {
    const PreferenceOutcome o = comparator_.compare(r.attacker, r.disagreement_subargument);
    if (o != PreferenceOutcome::FirstStrictlyPreferred && o != PreferenceOutcome::Incomparable) continue;
    slot(r.attacker).attacks.push_back(r);
    if (o == PreferenceOutcome::FirstStrictlyPreferred) flags[r.attacker].first = true;
  }
  for (const AttackReport& r : builder_.assumption_attacks(target)) {
    slot(r.attacker).attacks.push_back(r);
    flags[r.attacker].second = true;
  }
  for (Defeater& d : out) {
    const auto [proper, assumption] = flags[d.argument];
    d.kind = proper ? DefeaterKind::Proper : assumption ? DefeaterKind::Assumption : DefeaterKind::Blocking;
  }
  auto rank = [](DefeaterKind k) {
    switch (k) {
      case DefeaterKind::Proper: return 0;
      case DefeaterKind::Blocking: return 1;
      case DefeaterKind::Assumption: return 2;
    }
    return 3;
  };
  std::sort(out.begin(), out.end(), [&](const Defeater& a, const Defeater& b) {
    if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind);
    if (a.argument.conclusion != b.argument.conclusion) return a.argument.conclusion < b.argument.conclusion;
    if (a.argument.rules.size() != b.argument.rules.size()) return a.argument.rules.size() < b.argument.rules.size();
    return a.argument.rules < b.argument.rules;
  });
  return defeaters_.emplace(target, std::move(out)).first->second;
}

void WarrantEngine::charge_node(const DialecticalTree& tree) const {
  if (tree.nodes.size() >= options_.max_nodes) {
    throw ResourceLimitError("dialectical tree exceeds " + std::to_string(options_.max_nodes) + " nodes");
  }
}

std::size_t WarrantEngine::add_child(DialecticalTree& tree, std::size_t parent, const Defeater& d) {
  charge_node(tree);
  TreeNode child;
  child.argument = d.argument;
  child.edge = d.kind;
  child.parent = parent;
  const std::size_t id = tree.nodes.size();
  tree.nodes.push_back(std::move(child));
  tree.nodes[parent].children.push_back(id);
  return id;
}

void WarrantEngine::expand(DialecticalTree& tree, std::size_t node, ArgumentationLine& line) {
  // Copy: the cache may rehash while children are expanded.
  const std::vector<Defeater> defeaters = defeaters_of(tree.nodes[node].argument);
  for (const Defeater& d : defeaters) {
    auto violated = extension_violations(g_, line, d);
    if (!violated.empty()) {
      tree.nodes[node].rejected.push_back({d.argument, d.kind, std::move(violated)});
      continue;
    }
    const std::size_t child = add_child(tree, node, d);
    ++tree.expanded;
    line.arguments.push_back(d.argument);
    line.kinds.push_back(d.kind);
    expand(tree, child, line);
    line.arguments.pop_back();
    line.kinds.pop_back();
  }
}

DialecticalTree WarrantEngine::build_tree(const ArgumentStructure& root) {
  DialecticalTree tree;
  tree.nodes.push_back({root, std::nullopt, std::nullopt, {}, std::nullopt, false, {}});
  tree.expanded = 1;
  ArgumentationLine line;
  line.arguments.push_back(root);
  expand(tree, 0, line);
  return tree;
}

bool WarrantEngine::defeated_pruned(DialecticalTree& tree, std::size_t node, ArgumentationLine& line) {
  const std::vector<Defeater> defeaters = defeaters_of(tree.nodes[node].argument);
  bool defeated = false;
  for (const Defeater& d : defeaters) {
    auto violated = extension_violations(g_, line, d);
    if (!violated.empty()) {
      tree.nodes[node].rejected.push_back({d.argument, d.kind, std::move(violated)});
      continue;
    }
    const std::size_t child = add_child(tree, node, d);
    if (defeated) {
      // An undefeated sibling already decides this node.
      tree.nodes[child].pruned = true;
      ++tree.pruned;
      continue;
    }
    ++tree.expanded;
    line.arguments.push_back(d.argument);
    line.kinds.push_back(d.kind);
    const bool child_defeated = defeated_pruned(tree, child, line);
    line.arguments.pop_back();
    line.kinds.pop_back();
    tree.nodes[child].mark = child_defeated ? Mark::Defeated : Mark::Undefeated;
    if (!child_defeated) defeated = true;
  }
  return defeated;
}

DialecticalTree WarrantEngine::build_pruned_tree(const ArgumentStructure& root) {
  DialecticalTree tree;
  tree.nodes.push_back({root, std::nullopt, std::nullopt, {}, std::nullopt, false, {}});
  tree.expanded = 1;
  ArgumentationLine line;
  line.arguments.push_back(root);
  const bool defeated = defeated_pruned(tree, 0, line);
  tree.nodes[0].mark = defeated ? Mark::Defeated : Mark::Undefeated;
  return tree;
}

std::optional<WarrantResult> WarrantEngine::warrants(Lit h, std::vector<DialecticalTree>* examined) {
  const std::vector<ArgumentStructure> candidates = builder_.arguments_for(h);
  for (const ArgumentStructure& a : candidates) {
    DialecticalTree tree = mark_tree(build_tree(a));
    const bool undefeated = tree.root().mark == Mark::Undefeated;
    if (examined) examined->push_back(tree);
    if (undefeated) return WarrantResult{a, std::move(tree)};
  }
  return std::nullopt;
}

std::optional<WarrantResult> WarrantEngine::warrants_pruned(Lit h, std::vector<DialecticalTree>* examined) {
  const std::vector<ArgumentStructure> candidates = builder_.arguments_for(h);
  for (const ArgumentStructure& a : candidates) {
    DialecticalTree tree = build_pruned_tree(a);
    const bool undefeated = tree.root().mark == Mark::Undefeated;
    if (examined) examined->push_back(tree);
    if (undefeated) return WarrantResult{a, std::move(tree)};
  }
  return std::nullopt;
}

Answer WarrantEngine::answer(const Literal& query, Search search) {
  Answer out;
  if (!in_language(g_, query)) {
    out.kind = AnswerKind::Unknown;
    return out;
  }
  out.kind = AnswerKind::Undecided;
  const std::optional<Lit> lit = g_.find(query);
  if (!lit) return out;  // in the language but never mentioned: no argument either way
  auto run = [&](Lit h) {
    return search == Search::Pruned ? warrants_pruned(h, &out.examined) : warrants(h, &out.examined);
  };
  if (auto w = run(*lit)) {
    out.kind = AnswerKind::Yes;
    out.witness = std::move(w);
  } else if (auto w2 = run(lit->complement())) {
    out.kind = AnswerKind::No;
    out.witness = std::move(w2);
  }
  return out;
}

Answer answer(const GroundProgram& g, const CriterionConfig& cfg, const Literal& query, Search search,
              DialecticsOptions options) {
  WarrantEngine engine(g, cfg, options);
  return engine.answer(query, search);
}

namespace {

bool is_warranted(const GroundProgram& g, const CriterionConfig& cfg, Lit h, Search search,
                  const DialecticsOptions& options) {
  WarrantEngine engine(g, cfg, options);
  return (search == Search::Pruned ? engine.warrants_pruned(h) : engine.warrants(h)).has_value();
}

}  // namespace

std::vector<Lit> warranted_literals(const GroundProgram& g, const CriterionConfig& cfg, Search search,
                                    DialecticsOptions options) {
  std::vector<Lit> out;
  for (std::uint32_t c = 0; c < g.literal_count(); ++c) {
    if (is_warranted(g, cfg, Lit{c}, search, options)) out.push_back(Lit{c});
  }
  return out;
}

std::vector<Lit> warranted_literals_parallel(const GroundProgram& g, const CriterionConfig& cfg, Search search,
                                             DialecticsOptions options) {
  const auto n = static_cast<std::int64_t>(g.literal_count());
  std::vector<char> verdict(static_cast<std::size_t>(n), 0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < n; ++c) {
    try {
      verdict[c] = is_warranted(g, cfg, Lit{static_cast<std::uint32_t>(c)}, search, options) ? 1 : 0;
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  // Rethrow the first failure in literal order so errors are deterministic too.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Lit> out;
  for (std::int64_t c = 0; c < n; ++c) {
    if (verdict[c]) out.push_back(Lit{static_cast<std::uint32_t>(c)});
  }
  return out;
}

}  // namespace delp
