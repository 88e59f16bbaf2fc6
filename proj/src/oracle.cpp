#include "delp/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "delp/argumentation.hpp"
#include "delp/derivation.hpp"

namespace delp {

Oracle::Oracle(const GroundProgram& g, CriterionConfig cfg, OracleBounds bounds) : g_(g), cfg_(cfg), bounds_(bounds) {
  delta_.assign(g.defeasible_rules().begin(), g.defeasible_rules().end());
  if (delta_.size() > bounds_.max_defeasible) {
    throw OracleRefusal("oracle refuses " + std::to_string(delta_.size()) + " ground defeasible rules (bound " +
                        std::to_string(bounds_.max_defeasible) + ")");
  }
  const std::uint32_t masks = 1u << delta_.size();
  closure_of_mask_.reserve(masks);
  admissible_.resize(masks);
  for (std::uint32_t m = 0; m < masks; ++m) {
    RuleSet rs = RuleSet::strict_part(g);
    for (RuleId r : rules_of(m)) rs.rules.push_back(r);
    LiteralSet c = closure(g, rs);
    bool ok = !c.complementary_pair();
    for (RuleId r : rules_of(m)) {
      for (Lit l : g.rule(r).assumptions) {
        if (c.contains(l)) ok = false;
      }
    }
    admissible_[m] = ok ? 1 : 0;
    closure_of_mask_.push_back(std::move(c));
  }
}

std::vector<RuleId> Oracle::rules_of(std::uint32_t mask) const {
  std::vector<RuleId> out;
  for (std::size_t i = 0; i < delta_.size(); ++i) {
    if (mask >> i & 1u) out.push_back(delta_[i]);
  }
  return out;
}

OracleArgument Oracle::external(const Arg& a) const { return {rules_of(a.mask), a.conclusion}; }

const std::vector<std::size_t>& Oracle::args_for(Lit h) {
  auto it = by_conclusion_.find(h.code);
  if (it != by_conclusion_.end()) return it->second;
  std::vector<std::size_t> out;
  const std::uint32_t masks = 1u << delta_.size();
  auto supports = [&](std::uint32_t m) { return admissible_[m] && closure_of_mask_[m].contains(h); };
  for (std::uint32_t m = 0; m < masks; ++m) {
    if (!supports(m)) continue;
    // No proper subset may also be a support.
    bool minimal = true;
    for (std::uint32_t s = (m - 1) & m; minimal; s = (s - 1) & m) {
      if (s != m && supports(s)) minimal = false;
      if (s == 0) break;
    }
    if (!minimal) continue;
    Arg a;
    a.mask = m;
    a.conclusion = h;
    for (RuleId r : rules_of(m)) {
      for (Lit l : g_.rule(r).assumptions) a.assumptions.push_back(l);
    }
    std::sort(a.assumptions.begin(), a.assumptions.end());
    a.assumptions.erase(std::unique(a.assumptions.begin(), a.assumptions.end()), a.assumptions.end());
    out.push_back(args_.size());
    args_.push_back(std::move(a));
  }
  return by_conclusion_.emplace(h.code, std::move(out)).first->second;
}

const std::vector<Oracle::Arg>& Oracle::all() {
  if (!all_built_) {
    for (std::uint32_t c = 0; c < g_.literal_count(); ++c) args_for(Lit{c});
    all_built_ = true;
  }
  return args_;
}

std::vector<OracleArgument> Oracle::arguments_for(Lit h) {
  std::vector<OracleArgument> out;
  for (std::size_t i : args_for(h)) out.push_back(external(args_[i]));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Oracle::index_of(const OracleArgument& a) {
  for (std::size_t i : args_for(a.conclusion)) {
    if (rules_of(args_[i].mask) == a.rules) return i;
  }
  throw Error("oracle: not an argument structure");
}

bool Oracle::disagree(Lit a, Lit b) const {
  RuleSet rs = RuleSet::strict_part(g_);
  rs.facts.push_back(a);
  rs.facts.push_back(b);
  return closure(g_, rs).complementary_pair().has_value();
}

const std::vector<bool>& Oracle::activation(std::size_t i) {
  if (!specificity_ready_) {
    f_ = closure(g_, RuleSet::everything(g_)).members();
    if (f_.size() > bounds_.max_derivable) {
      throw OracleRefusal("oracle refuses " + std::to_string(f_.size()) + " derivable literals (bound " +
                          std::to_string(bounds_.max_derivable) + ")");
    }
    const std::uint32_t subsets = 1u << f_.size();
    strict_with_h_.reserve(subsets);
    for (std::uint32_t h = 0; h < subsets; ++h) {
      RuleSet rs = RuleSet::strict_rules_only(g_);
      for (std::size_t k = 0; k < f_.size(); ++k) {
        if (h >> k & 1u) rs.facts.push_back(f_[k]);
      }
      strict_with_h_.push_back(closure(g_, rs));
    }
    specificity_ready_ = true;
  }
  auto it = activation_.find(i);
  if (it != activation_.end()) return it->second;
  const Arg& a = args_[i];
  const std::uint32_t subsets = 1u << f_.size();
  std::vector<bool> act(subsets);
  for (std::uint32_t h = 0; h < subsets; ++h) {
    RuleSet rs = RuleSet::strict_rules_only(g_);
    for (RuleId r : rules_of(a.mask)) rs.rules.push_back(r);
    for (std::size_t k = 0; k < f_.size(); ++k) {
      if (h >> k & 1u) rs.facts.push_back(f_[k]);
    }
    act[h] = closure(g_, rs).contains(a.conclusion);
  }
  return activation_.emplace(i, std::move(act)).first->second;
}

// Strictly more specific: every H activating a1 non-trivially activates a2,
// and some H activates a2 non-trivially without activating a1.
bool Oracle::more_specific_idx(std::size_t i, std::size_t j) {
  const std::vector<bool> act1 = activation(i);
  const std::vector<bool>& act2 = activation(j);
  const Lit h1 = args_[i].conclusion;
  const Lit h2 = args_[j].conclusion;
  bool witness = false;
  for (std::size_t h = 0; h < act1.size(); ++h) {
    if (act1[h] && !strict_with_h_[h].contains(h1) && !act2[h]) return false;
    if (act2[h] && !strict_with_h_[h].contains(h2) && !act1[h]) witness = true;
  }
  return witness;
}

bool Oracle::more_specific(const OracleArgument& a1, const OracleArgument& a2) {
  return more_specific_idx(index_of(a1), index_of(a2));
}

PreferenceOutcome Oracle::compare_idx(std::size_t i, std::size_t j) {
  auto key = std::pair{i, j};
  auto cached = compare_cache_.find(key);
  if (cached != compare_cache_.end()) return cached->second;

  const Arg& a1 = args_[i];
  const Arg& a2 = args_[j];
  auto presumptive = [&](const Arg& a) {
    for (RuleId r : rules_of(a.mask)) {
      if (g_.rule(r).body.empty() && g_.rule(r).assumptions.empty()) return true;
    }
    return false;
  };
  auto equi = [&] {
    if (a1.mask != a2.mask) return false;
    RuleSet one = RuleSet::strict_part(g_);
    one.facts.push_back(a1.conclusion);
    RuleSet two = RuleSet::strict_part(g_);
    two.facts.push_back(a2.conclusion);
    return closure(g_, one).contains(a2.conclusion) && closure(g_, two).contains(a1.conclusion);
  };
  auto ranked_over = [&](const Arg& x, const Arg& y) {
    bool some = false;
    for (RuleId rx : rules_of(x.mask)) {
      for (RuleId ry : rules_of(y.mask)) {
        if (g_.outranks(ry, rx)) return false;
        if (g_.outranks(rx, ry)) some = true;
      }
    }
    return some;
  };
  auto specificity = [&] {
    if (equi()) return PreferenceOutcome::EquiSpecific;
    const bool first = more_specific_idx(i, j);
    const bool second = more_specific_idx(j, i);
    if (first && !second) return PreferenceOutcome::FirstStrictlyPreferred;
    if (second && !first) return PreferenceOutcome::SecondStrictlyPreferred;
    return PreferenceOutcome::Incomparable;
  };
  auto priorities = [&] {
    if (ranked_over(a1, a2)) return PreferenceOutcome::FirstStrictlyPreferred;
    if (ranked_over(a2, a1)) return PreferenceOutcome::SecondStrictlyPreferred;
    if (equi()) return PreferenceOutcome::EquiSpecific;
    return PreferenceOutcome::Incomparable;
  };

  PreferenceOutcome out = PreferenceOutcome::Incomparable;
  const bool p1 = presumptive(a1);
  const bool p2 = presumptive(a2);
  if (cfg_.presumption_penalty && p1 != p2) {
    out = p2 ? PreferenceOutcome::FirstStrictlyPreferred : PreferenceOutcome::SecondStrictlyPreferred;
  } else if (cfg_.criterion == Criterion::Specificity) {
    out = specificity();
  } else if (cfg_.criterion == Criterion::Priorities) {
    out = priorities();
  } else {
    out = specificity();
    if (out == PreferenceOutcome::Incomparable) out = priorities();
  }
  compare_cache_.emplace(key, out);
  return out;
}

PreferenceOutcome Oracle::compare(const OracleArgument& a1, const OracleArgument& a2) {
  return compare_idx(index_of(a1), index_of(a2));
}

const std::vector<Oracle::Defeat>& Oracle::defeaters(std::size_t target) {
  auto it = defeaters_.find(target);
  if (it != defeaters_.end()) return it->second;
  all();
  const Arg t = args_[target];
  std::vector<Defeat> out;
  for (std::size_t b = 0; b < args_.size(); ++b) {
    bool proper = false;
    bool blocking = false;
    // Counter-argument at the conclusion of any sub-argument of the target.
    for (std::size_t s = 0; s < args_.size(); ++s) {
      if ((args_[s].mask & ~t.mask) != 0) continue;
      if (!disagree(args_[s].conclusion, args_[b].conclusion)) continue;
      const PreferenceOutcome o = compare_idx(b, s);
      if (o == PreferenceOutcome::FirstStrictlyPreferred) proper = true;
      if (o == PreferenceOutcome::Incomparable) blocking = true;
    }
    const bool assumption = g_.mode().default_negation &&
                            std::binary_search(t.assumptions.begin(), t.assumptions.end(), args_[b].conclusion);
    if (proper) {
      out.push_back({b, DefeaterKind::Proper});
    } else if (assumption) {
      out.push_back({b, DefeaterKind::Assumption});
    } else if (blocking) {
      out.push_back({b, DefeaterKind::Blocking});
    }
  }
  return defeaters_.emplace(target, std::move(out)).first->second;
}

bool Oracle::undefeated(std::vector<std::size_t>& line, std::vector<DefeaterKind>& kinds) {
  if (++nodes_ > bounds_.max_nodes) throw OracleRefusal("oracle tree search exceeds its node bound");
  const std::vector<Defeat> ds = defeaters(line.back());
  for (const Defeat& d : ds) {
    const Arg& next = args_[d.attacker];
    bool acceptable = true;
    // Each side of the line must stay non-contradictory with the strict part.
    std::uint32_t side = next.mask;
    for (std::size_t k = line.size() % 2; k < line.size(); k += 2) side |= args_[line[k]].mask;
    if (closure_of_mask_[side].complementary_pair()) acceptable = false;
    // No argument may be a sub-argument of an earlier one.
    for (std::size_t earlier : line) {
      if ((next.mask & ~args_[earlier].mask) == 0) acceptable = false;
    }
    // A blocking defeater can only be answered by a non-blocking one.
    if (!kinds.empty() && kinds.back() == DefeaterKind::Blocking && d.kind == DefeaterKind::Blocking) {
      acceptable = false;
    }
    if (!acceptable) continue;
    line.push_back(d.attacker);
    kinds.push_back(d.kind);
    const bool child_undefeated = undefeated(line, kinds);
    line.pop_back();
    kinds.pop_back();
    if (child_undefeated) return false;
  }
  return true;
}

bool Oracle::warranted(Lit h) {
  for (std::size_t a : std::vector<std::size_t>(args_for(h))) {
    std::vector<std::size_t> line{a};
    std::vector<DefeaterKind> kinds;
    if (undefeated(line, kinds)) return true;
  }
  return false;
}

AnswerKind Oracle::answer(const Literal& query) {
  if (!in_language(g_, query)) return AnswerKind::Unknown;
  const std::optional<Lit> lit = g_.find(query);
  if (!lit) return AnswerKind::Undecided;
  if (warranted(*lit)) return AnswerKind::Yes;
  if (warranted(lit->complement())) return AnswerKind::No;
  return AnswerKind::Undecided;
}

std::vector<Lit> Oracle::warranted_literals() {
  std::vector<Lit> out;
  for (std::uint32_t c = 0; c < g_.literal_count(); ++c) {
    if (warranted(Lit{c})) out.push_back(Lit{c});
  }
  return out;
}

std::vector<OracleArgument> oracle_arguments_for(const GroundProgram& g, Lit h, OracleBounds bounds) {
  return Oracle(g, {}, bounds).arguments_for(h);
}

bool oracle_more_specific(const GroundProgram& g, const OracleArgument& a1, const OracleArgument& a2,
                          OracleBounds bounds) {
  return Oracle(g, {}, bounds).more_specific(a1, a2);
}

namespace {

std::string rules_text(const GroundProgram& g, const std::vector<RuleId>& rules) {
  std::string out = "{";
  for (std::size_t i = 0; i < rules.size(); ++i) out += (i ? "; " : "") + g.rule_to_string(rules[i]);
  return out + "}";
}

std::string argument_list(const GroundProgram& g, std::vector<std::vector<RuleId>> sets) {
  std::sort(sets.begin(), sets.end());
  std::string out = "[";
  for (std::size_t i = 0; i < sets.size(); ++i) out += (i ? ", " : "") + rules_text(g, sets[i]);
  return out + "]";
}

std::string literal_list(const GroundProgram& g, const std::vector<Lit>& lits) {
  std::string out = "{";
  for (std::size_t i = 0; i < lits.size(); ++i) out += (i ? ", " : "") + g.to_string(lits[i]);
  return out + "}";
}

std::string tree_dump(const GroundProgram& g, const std::vector<DialecticalTree>& trees) {
  std::string out;
  for (const DialecticalTree& t : trees) {
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const TreeNode& n = t.nodes[i];
      std::size_t depth = 0;
      for (auto p = n.parent; p; p = t.nodes[*p].parent) ++depth;
      out += std::string(2 * depth, ' ') + to_string(g, n.argument);
      if (n.pruned) {
        out += " (pruned)";
      } else if (n.mark) {
        out += *n.mark == Mark::Undefeated ? " U" : " D";
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace

std::vector<OracleReport> differential_run(const GroundProgram& g, const CriterionConfig& cfg,
                                           const DifferentialOptions& options) {
  std::vector<OracleReport> out;
  Oracle oracle(g, cfg, options.bounds);
  ArgumentBuilder builder(g, options.engine.arguments);

  auto add = [&](std::string check, std::string subject, std::string engine, std::string ref, std::string witness) {
    OracleReport r;
    r.check = std::move(check);
    r.subject = std::move(subject);
    r.agree = engine == ref;
    r.engine = std::move(engine);
    r.oracle = std::move(ref);
    if (!r.agree) r.witness = std::move(witness);
    out.push_back(std::move(r));
  };

  for (std::uint32_t c = 0; c < g.literal_count(); ++c) {
    const Lit h{c};
    std::vector<std::vector<RuleId>> mine;
    for (const ArgumentStructure& a : builder.arguments_for(h)) mine.push_back(a.rules);
    std::vector<std::vector<RuleId>> theirs;
    for (const OracleArgument& a : oracle.arguments_for(h)) theirs.push_back(a.rules);
    add("arguments", g.to_string(h), argument_list(g, mine), argument_list(g, theirs), "");
  }

  if (options.check_specificity && cfg.criterion != Criterion::Priorities) {
    const ActivationContext ctx = ActivationContext::make(g);
    std::vector<ArgumentStructure> engine_args;
    for (std::uint32_t c = 0; c < g.literal_count(); ++c) {
      for (const OracleArgument& a : oracle.arguments_for(Lit{c})) engine_args.push_back(make_argument(g, a.rules, a.conclusion));
    }
    for (const ArgumentStructure& a1 : engine_args) {
      for (const ArgumentStructure& a2 : engine_args) {
        const bool mine = more_specific(g, ctx, a1, a2);
        const bool theirs = oracle.more_specific({a1.rules, a1.conclusion}, {a2.rules, a2.conclusion});
        add("specificity", to_string(g, a1) + " > " + to_string(g, a2), mine ? "true" : "false",
            theirs ? "true" : "false", "");
      }
    }
  }

  std::vector<Lit> yes_pruned;
  std::vector<Lit> yes_exhaustive;
  std::vector<Lit> yes_oracle;
  for (std::uint32_t c = 0; c < g.literal_count(); ++c) {
    const Lit h{c};
    const Literal query = g.literal(h);
    const AnswerKind expected = oracle.answer(query);
    if (expected == AnswerKind::Yes) yes_oracle.push_back(h);
    for (const Search search : {Search::Pruned, Search::Exhaustive}) {
      WarrantEngine engine(g, cfg, options.engine);
      const Answer got = engine.answer(query, search);
      const bool pruned = search == Search::Pruned;
      if (got.kind == AnswerKind::Yes) (pruned ? yes_pruned : yes_exhaustive).push_back(h);
      add(pruned ? "answer-pruned" : "answer-exhaustive", query.to_string(), to_string(got.kind), to_string(expected),
          tree_dump(g, got.examined));
    }
  }
  const std::string expected_set = literal_list(g, yes_oracle);
  add("warranted-pruned", "program", literal_list(g, warranted_literals(g, cfg, Search::Pruned, options.engine)),
      expected_set, "answers: " + literal_list(g, yes_pruned));
  add("warranted-exhaustive", "program",
      literal_list(g, warranted_literals(g, cfg, Search::Exhaustive, options.engine)), expected_set,
      "answers: " + literal_list(g, yes_exhaustive));
  return out;
}

std::size_t count_disagreements(const std::vector<OracleReport>& reports) {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const OracleReport& r) { return !r.agree; }));
}

std::string reports_to_text(const std::string& program_name, const std::vector<OracleReport>& reports) {
  std::ostringstream out;
  for (const OracleReport& r : reports) {
    if (r.agree) continue;
    out << program_name << ": DISAGREE " << r.check << " " << r.subject << "\n";
    out << "  engine: " << r.engine << "\n";
    out << "  oracle: " << r.oracle << "\n";
    if (!r.witness.empty()) {
      std::istringstream lines(r.witness);
      std::string line;
      while (std::getline(lines, line)) out << "  | " << line << "\n";
    }
  }
  out << program_name << ": " << reports.size() << " checks, " << count_disagreements(reports)
      << " disagreements\n";
  return out.str();
}

std::string reports_to_jsonl(const std::string& program_name, const std::vector<OracleReport>& reports) {
  std::string out;
  for (const OracleReport& r : reports) {
    if (r.agree) continue;
    nlohmann::json j;
    j["program"] = program_name;
    j["check"] = r.check;
    j["subject"] = r.subject;
    j["engine"] = r.engine;
    j["oracle"] = r.oracle;
    j["agree"] = r.agree;
    j["witness"] = r.witness;
    out += j.dump() + '\n';
  }
  return out;
}

namespace {

// Portable draws: the standard distributions are implementation-defined, and
// fuzz corpora should not change with the standard library.
struct Draw {
  std::mt19937_64 rng;

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }
};

Program draw_program(Draw& d, const FuzzParams& params) {
  static const char* const kPredicates[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  static const char* const kConstants[] = {"k1", "k2", "k3", "k4", "k5"};
  const std::size_t n_pred = d.between(1, std::min<std::size_t>(params.max_predicates, 8));
  const std::size_t n_const = d.between(1, std::min<std::size_t>(params.max_constants, 5));
  std::vector<std::size_t> arity(n_pred);
  for (auto& a : arity) a = d.below(2);
  std::vector<std::size_t> unary;
  for (std::size_t i = 0; i < n_pred; ++i) {
    if (arity[i] == 1) unary.push_back(i);
  }

  auto make = [&](std::size_t pred, const std::optional<std::string>& var) {
    Literal l;
    l.negated = d.chance(params.strong_negation);
    l.predicate = kPredicates[pred];
    if (arity[pred] == 1) {
      if (var && d.chance(0.7)) {
        l.args.push_back(Term::variable(*var));
      } else {
        l.args.push_back(Term::constant(kConstants[d.below(n_const)]));
      }
    }
    return l;
  };

  Program p;
  p.mode.default_negation = params.default_negation > 0;
  const std::size_t n_facts = d.between(1, std::max<std::size_t>(params.max_facts, 1));
  for (std::size_t i = 0; i < n_facts; ++i) p.facts.push_back(make(d.below(n_pred), std::nullopt));
  const std::size_t n_rules = d.between(1, std::max<std::size_t>(params.max_rules, 1));
  for (std::size_t i = 0; i < n_rules; ++i) {
    Rule r;
    r.kind = d.chance(params.defeasible_fraction) ? RuleKind::Defeasible : RuleKind::Strict;
    const bool schematic = !unary.empty() && d.chance(0.5);
    const std::optional<std::string> var = schematic ? std::optional<std::string>("X") : std::nullopt;
    const std::size_t body_size = d.between(1, 2);
    for (std::size_t k = 0; k < body_size; ++k) {
      BodyAtom b;
      // The first body atom binds the variable, keeping the rule range-restricted.
      if (k == 0 && schematic) {
        b.literal = make(unary[d.below(unary.size())], std::nullopt);
        b.literal.args = {Term::variable("X")};
      } else {
        b.literal = make(d.below(n_pred), var);
        b.default_negated = r.kind == RuleKind::Defeasible && d.chance(params.default_negation);
      }
      r.body.push_back(std::move(b));
    }
    r.head = make(d.below(n_pred), var);
    (r.kind == RuleKind::Strict ? p.strict_rules : p.defeasible_rules).push_back(std::move(r));
  }
  return p;
}

}  // namespace

Program random_program(std::uint64_t seed, const FuzzParams& params, const OracleBounds& bounds) {
  Draw d{std::mt19937_64(seed)};
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Program p = draw_program(d, params);
    if (!validate(p).empty()) continue;
    const GroundProgram g = ground_program(p);
    if (g.defeasible_rules().size() > bounds.max_defeasible) continue;
    if (closure(g, RuleSet::everything(g)).size() > bounds.max_derivable) continue;
    return p;
  }
  throw Error("random_program: no valid program within 10000 draws");
}

}  // namespace delp
