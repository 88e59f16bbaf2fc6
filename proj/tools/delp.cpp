// delp: command-line interpreter for defeasible logic programs.

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "delp/dialectics.hpp"
#include "delp/ground.hpp"
#include "delp/oracle.hpp"
#include "delp/parser.hpp"
#include "delp/tree_export.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kResource = 3;
constexpr int kDisagreement = 4;

struct Config {
  std::string criterion = "specificity";
  std::string mode = "core";
  std::string tree = "none";
  std::string tree_out;
  bool trace = false;
  bool presumption_penalty = false;
  bool exhaustive = false;
  std::size_t max_nodes = 10000;
};

/// Thrown to abandon a command with a specific exit status after the message
/// has already been printed.
struct Exit {
  int code;
};

struct Loaded {
  std::string path;
  delp::Program program;
  delp::GroundProgram ground;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "delp: cannot read " << path << "\n";
    throw Exit{kInvalid};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Loaded load(const std::string& path, const Config& cfg) {
  const delp::Mode mode = delp::parse_mode(cfg.mode);
  const delp::ParseResult parsed = delp::parse_program(read_file(path), mode, path);
  for (const auto& d : parsed.diagnostics) std::cerr << d.to_string() << "\n";
  if (!parsed.ok()) throw Exit{kInvalid};
  const auto violations = delp::validate(*parsed.program);
  if (!violations.empty()) {
    for (const auto& v : violations) {
      std::cerr << path << ": invalid program: " << v.message;
      for (const auto& r : v.rules) std::cerr << "\n  " << r;
      std::cerr << "\n";
    }
    throw Exit{kInvalid};
  }
  Loaded out{path, *parsed.program, delp::ground_program(*parsed.program)};
  if (delp::parse_criterion(cfg.criterion) != delp::Criterion::Specificity && !out.ground.has_priorities()) {
    std::cerr << path << ": criterion '" << cfg.criterion << "' needs at least one priority declaration\n";
    throw Exit{kInvalid};
  }
  return out;
}

delp::CriterionConfig criterion_of(const Config& cfg) {
  return {delp::parse_criterion(cfg.criterion), cfg.presumption_penalty};
}

delp::DialecticsOptions options_of(const Config& cfg) {
  delp::DialecticsOptions o;
  o.max_nodes = cfg.max_nodes;
  return o;
}

void write_trees(const delp::GroundProgram& g, const std::vector<const delp::DialecticalTree*>& trees,
                 const Config& cfg, std::ostream& console) {
  if (cfg.tree == "none" || trees.empty()) return;
  std::string text;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (cfg.tree == "dot") {
      text += delp::to_dot(g, *trees[i], "tree" + std::to_string(i));
    } else {
      text += delp::to_jsonl(g, *trees[i], i);
    }
  }
  if (cfg.tree_out.empty()) {
    console << text;
    return;
  }
  std::ofstream out(cfg.tree_out, std::ios::binary);
  if (!out) {
    std::cerr << "delp: cannot write " << cfg.tree_out << "\n";
    throw Exit{kUsage};
  }
  out << text;
}

/// Answers one query and prints the answer, trace and trees.
void answer_query(const Loaded& loaded, const std::string& text, const Config& cfg, std::ostream& out) {
  const delp::QueryResult q = delp::parse_query(text);
  if (!q.literal) {
    std::cerr << q.diagnostic->to_string() << "\n";
    throw Exit{kInvalid};
  }
  delp::WarrantEngine engine(loaded.ground, criterion_of(cfg), options_of(cfg));
  const delp::Answer a =
      engine.answer(*q.literal, cfg.exhaustive ? delp::Search::Exhaustive : delp::Search::Pruned);
  out << delp::to_string(a.kind) << "\n";
  if (cfg.trace) {
    for (const auto& t : a.examined) out << delp::to_trace(loaded.ground, t);
  }
  std::vector<const delp::DialecticalTree*> trees;
  if (a.witness) {
    trees.push_back(&a.witness->tree);
  } else {
    for (const auto& t : a.examined) trees.push_back(&t);
  }
  write_trees(loaded.ground, trees, cfg, out);
}

int cmd_query(const std::string& file, const std::string& query, const Config& cfg) {
  const Loaded loaded = load(file, cfg);
  answer_query(loaded, query, cfg, std::cout);
  return kOk;
}

int cmd_check(const std::string& file, const Config& cfg) {
  const Loaded loaded = load(file, cfg);
  std::cout << file << ": ok (" << loaded.program.facts.size() << " facts, " << loaded.program.strict_rules.size()
            << " strict rules, " << loaded.program.defeasible_rules.size() << " defeasible rules, "
            << loaded.ground.rules().size() << " ground rules)\n";
  return kOk;
}

void print_warranted(const Loaded& loaded, const Config& cfg, std::ostream& out) {
  const auto search = cfg.exhaustive ? delp::Search::Exhaustive : delp::Search::Pruned;
  for (delp::Lit l : delp::warranted_literals_parallel(loaded.ground, criterion_of(cfg), search, options_of(cfg))) {
    out << loaded.ground.to_string(l) << "\n";
  }
}

int cmd_warranted(const std::string& file, const Config& cfg) {
  print_warranted(load(file, cfg), cfg, std::cout);
  return kOk;
}

int cmd_repl(const std::string& file, Config cfg) {
  std::optional<Loaded> loaded;
  try {
    loaded = load(file, cfg);
  } catch (const Exit&) {
    // Start anyway; :load can fix it.
  }
  const bool interactive = isatty(STDIN_FILENO) != 0;
  std::string line;
  while (true) {
    if (interactive) std::cout << "delp> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    std::istringstream words(line);
    std::string head;
    words >> head;
    try {
      if (head == ":quit" || head == ":q") break;
      if (head == ":load") {
        std::string path;
        words >> path;
        loaded = load(path, cfg);
        std::cout << "loaded " << path << "\n";
      } else if (head == ":criterion") {
        std::string name;
        words >> name;
        delp::parse_criterion(name);
        const std::string previous = cfg.criterion;
        cfg.criterion = name;
        if (loaded && name != "specificity" && !loaded->ground.has_priorities()) {
          cfg.criterion = previous;
          std::cout << "error: criterion '" << name << "' needs at least one priority declaration\n";
        } else {
          std::cout << "criterion " << name << "\n";
        }
      } else if (head == ":tree") {
        words >> cfg.tree >> cfg.tree_out;
        if (cfg.tree != "dot" && cfg.tree != "json" && cfg.tree != "none") {
          std::cout << "error: tree format must be dot, json or none\n";
          cfg.tree = "none";
        }
      } else if (head == ":warranted") {
        if (!loaded) {
          std::cout << "error: no program loaded\n";
          continue;
        }
        print_warranted(*loaded, cfg, std::cout);
      } else if (!head.empty() && head[0] == ':') {
        std::cout << "error: unknown command " << head << "\n";
      } else if (!loaded) {
        std::cout << "error: no program loaded\n";
      } else {
        answer_query(*loaded, line, cfg, std::cout);
      }
    } catch (const Exit&) {
      std::cout << "error: see diagnostics\n";
    } catch (const delp::Error& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return kOk;
}

int cmd_oracle(const std::vector<std::string>& files, std::size_t fuzz, std::uint64_t seed, bool default_negation,
               const std::string& jsonl_path, const delp::OracleBounds& bounds, const Config& cfg) {
  delp::DifferentialOptions options;
  options.engine = options_of(cfg);
  options.bounds = bounds;
  std::string jsonl;
  std::size_t disagreements = 0;
  std::size_t refused = 0;
  auto run = [&](const std::string& name, const delp::GroundProgram& g) {
    std::vector<delp::OracleReport> reports;
    try {
      reports = delp::differential_run(g, criterion_of(cfg), options);
    } catch (const delp::OracleRefusal& e) {
      ++refused;
      std::cout << name << ": refused: " << e.what() << "\n";
      return;
    }
    disagreements += delp::count_disagreements(reports);
    std::cout << delp::reports_to_text(name, reports);
    jsonl += delp::reports_to_jsonl(name, reports);
  };
  for (const std::string& f : files) {
    const Loaded loaded = load(f, cfg);
    run(f, loaded.ground);
  }
  delp::FuzzParams params;
  if (default_negation) params.default_negation = 0.3;
  for (std::size_t i = 0; i < fuzz; ++i) {
    const delp::Program p = delp::random_program(seed + i, params, options.bounds);
    run("fuzz-" + std::to_string(seed + i), delp::ground_program(p));
  }
  if (!jsonl_path.empty()) {
    std::ofstream out(jsonl_path, std::ios::binary);
    out << jsonl;
  }
  std::cout << "total disagreements: " << disagreements << "\n";
  if (refused) std::cout << "refused programs: " << refused << "\n";
  if (disagreements) return kDisagreement;
  return refused ? kResource : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Defeasible logic programming interpreter"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--criterion", cfg.criterion, "Preference criterion")
        ->check(CLI::IsMember({"specificity", "priorities", "combined"}));
    sub->add_option("--mode", cfg.mode, "core, default-negation, presumptions, or a comma list");
    sub->add_flag("--presumption-penalty", cfg.presumption_penalty,
                  "Prefer arguments that use no presumption before applying the criterion");
    sub->add_option("--max-nodes", cfg.max_nodes, "Dialectical tree node ceiling")->check(CLI::PositiveNumber);
    sub->add_flag("--exhaustive", cfg.exhaustive, "Build complete trees instead of pruning");
  };

  std::string file;
  std::string query;
  auto* q = app.add_subcommand("query", "Answer one query");
  q->add_option("file", file, "Program file")->required();
  q->add_option("literal", query, "Ground literal")->required();
  q->add_option("--tree", cfg.tree, "Export trees")->check(CLI::IsMember({"dot", "json", "none"}));
  q->add_option("--tree-out", cfg.tree_out, "Write trees to this file instead of stdout");
  q->add_flag("--trace", cfg.trace, "Print every argumentation line considered");
  common(q);

  auto* repl = app.add_subcommand("repl", "Interactive session");
  repl->add_option("file", file, "Program file")->required();
  repl->add_flag("--trace", cfg.trace, "Print every argumentation line considered");
  common(repl);

  auto* check = app.add_subcommand("check", "Validate a program");
  check->add_option("file", file, "Program file")->required();
  common(check);

  auto* warranted = app.add_subcommand("warranted", "List every warranted literal");
  warranted->add_option("file", file, "Program file")->required();
  common(warranted);

  std::vector<std::string> files;
  std::size_t fuzz = 0;
  std::uint64_t seed = 1;
  bool fuzz_not = false;
  std::string jsonl_path;
  auto* oracle = app.add_subcommand("oracle", "Differential run against the brute-force oracle");
  oracle->add_option("files", files, "Program files");
  oracle->add_option("--fuzz", fuzz, "Number of random programs to check");
  oracle->add_option("--seed", seed, "First random seed");
  oracle->add_flag("--fuzz-default-negation", fuzz_not, "Random programs use default negation");
  oracle->add_option("--report-jsonl", jsonl_path, "Write disagreements as JSON lines");
  delp::OracleBounds bounds;
  oracle->add_option("--max-defeasible", bounds.max_defeasible, "Oracle bound on ground defeasible rules")
      ->check(CLI::Range(1, 20));
  oracle->add_option("--max-derivable", bounds.max_derivable, "Oracle bound on derivable literals")
      ->check(CLI::Range(1, 20));
  common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*q) return cmd_query(file, query, cfg);
    if (*repl) return cmd_repl(file, cfg);
    if (*check) return cmd_check(file, cfg);
    if (*warranted) return cmd_warranted(file, cfg);
    if (*oracle) return cmd_oracle(files, fuzz, seed, fuzz_not, jsonl_path, bounds, cfg);
  } catch (const Exit& e) {
    return e.code;
  } catch (const delp::ResourceLimitError& e) {
    std::cerr << "delp: resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const delp::OracleRefusal& e) {
    std::cerr << "delp: " << e.what() << "\n";
    return kResource;
  } catch (const delp::Error& e) {
    std::cerr << "delp: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
