// Serial reference kernels against their OpenMP counterparts.
//
//   delp_bench [repetitions]
//
// Specificity: the reference enumerates every subset of the derivable
// literals; the optimized kernel enumerates only the relevant candidates and
// splits large enumerations across threads. Warranted sets: one literal at a
// time versus literals decided in parallel.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "delp/comparison.hpp"
#include "delp/dialectics.hpp"
#include "delp/oracle.hpp"
#include "delp/parser.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double millis(int reps, F&& f) {
  const auto start = Clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count() / reps;
}

// p needs all k facts; ~p needs only the first. F has k + 2 literals.
delp::Program wide_rule(std::size_t k) {
  std::string text;
  std::string body;
  for (std::size_t i = 0; i < k; ++i) {
    text += "f" + std::to_string(i) + ".\n";
    body += (i ? ", f" : "f") + std::to_string(i);
  }
  text += "p -< " + body + ".\n~p -< f0.\n";
  return *delp::parse_program(text).program;
}

// Same conflict over three facts, padded with facts no rule reads.
delp::Program padded(std::size_t noise) {
  std::string text = "f0.\nf1.\nf2.\np -< f0, f1, f2.\n~p -< f0.\n";
  for (std::size_t i = 0; i < noise; ++i) text += "noise" + std::to_string(i) + ".\n";
  return *delp::parse_program(text).program;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::cout << "threads " << omp_get_max_threads() << "\n";
  std::cout << std::left << std::setw(28) << "kernel" << std::right << std::setw(12) << "serial ms" << std::setw(14)
            << "parallel ms" << std::setw(8) << "agree" << "\n";

  bool all_agree = true;
  std::vector<std::pair<std::string, delp::Program>> fixtures;
  for (std::size_t k : {10, 14, 16, 18}) fixtures.emplace_back("wide", wide_rule(k));
  for (std::size_t n : {8, 12, 15}) fixtures.emplace_back("padded", padded(n));
  for (const auto& [family, program] : fixtures) {
    const delp::GroundProgram g = delp::ground_program(program);
    const delp::ActivationContext ctx = delp::ActivationContext::make(g);
    delp::ArgumentBuilder b(g);
    const auto& pro = b.arguments_for(*g.find(delp::Literal{false, "p", {}}));
    const auto& con = b.arguments_for(*g.find(delp::Literal{true, "p", {}}));
    bool serial = false;
    bool parallel = false;
    const double ts = millis(reps, [&] { serial = delp::more_specific_reference(g, ctx, pro[0], con[0], 24); });
    const double tp = millis(reps, [&] { parallel = delp::more_specific(g, ctx, pro[0], con[0]); });
    all_agree = all_agree && serial == parallel;
    std::cout << std::left << std::setw(28) << ("specificity " + family + " |F|=" + std::to_string(ctx.derivable_list.size()))
              << std::right << std::fixed << std::setprecision(2) << std::setw(12) << ts << std::setw(14) << tp
              << std::setw(8) << (serial == parallel ? "yes" : "NO") << "\n";
  }

  delp::FuzzParams params;
  params.max_predicates = 8;
  params.max_constants = 4;
  params.max_rules = 16;
  delp::OracleBounds loose;
  loose.max_defeasible = 40;
  loose.max_derivable = 40;
  for (std::uint64_t seed : {7u, 11u, 13u}) {
    const delp::GroundProgram g = delp::ground_program(delp::random_program(seed, params, loose));
    std::vector<delp::Lit> serial;
    std::vector<delp::Lit> parallel;
    const double ts = millis(reps, [&] { serial = delp::warranted_literals(g, {}); });
    const double tp = millis(reps, [&] { parallel = delp::warranted_literals_parallel(g, {}); });
    all_agree = all_agree && serial == parallel;
    std::cout << std::left << std::setw(28)
              << ("warranted seed=" + std::to_string(seed) + " lits=" + std::to_string(g.literal_count()))
              << std::right << std::setw(12) << ts << std::setw(14) << tp << std::setw(8)
              << (serial == parallel ? "yes" : "NO") << "\n";
  }
  return all_agree ? 0 : 1;
}
