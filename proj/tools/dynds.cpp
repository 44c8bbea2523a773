#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dynds/bench.hpp"
#include "dynds/crosscheck.hpp"
#include "dynds/solve.hpp"
#include "dynds/trace.hpp"

using namespace dynds;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kOpError = 3;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

/// Writes to --out when given, else to stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << text;
}

int cmd_solve(const std::string& file, const std::string& structure, const std::string& out_path) {
  std::ifstream in = open_input(file);
  const OpTrace t = parse_trace(in);
  std::string text;
  for (const auto& line : solve_trace(t, structure)) text += line + "\n";
  emit(out_path, text);
  return kOk;
}

int cmd_reduce(const std::string& file, const std::string& reduction, const std::string& adapter,
               const std::string& out_path) {
  const ReductionInfo& info = reduction_info(reduction);
  std::ifstream in = open_input(file);
  const Instance inst = info.graph_input ? Instance(parse_graph(in)) : Instance(parse_oumv(in));
  const ReductionResult r = run_reduction(reduction, adapter, inst);
  std::ostringstream out;
  for (bool b : r.answers) out << (b ? "true" : "false") << "\n";
  out << "calls builds=" << r.calls.builds << " updates=" << r.calls.updates << " queries=" << r.calls.queries
      << " phases=" << r.phases << "\n";
  emit(out_path, out.str());
  return kOk;
}

int cmd_crosscheck(uint64_t seed, const std::string& scope, const std::string& reduction, const std::string& adapter,
                   size_t instances, size_t cases, const std::string& out_path) {
  std::string text;
  size_t mismatches = 0;
  auto take = [&](const CrosscheckReport& r) {
    text += r.text;
    mismatches += r.mismatches;
  };
  if (scope == "fault") {
    for (int k : {2, 3}) take(crosscheck_suite(seed, "hyperclique", k, "fault", instances));
  } else {
    if (scope == "all" || scope == "reductions") {
      for (const auto& c : default_suite(instances)) {
        if (!reduction.empty() && c.reduction != reduction) continue;
        if (!adapter.empty() && c.adapter != adapter) continue;
        take(crosscheck_suite(seed, c.reduction, c.param, c.adapter, c.instances));
      }
    }
    if (scope == "all" || scope == "structures")
      for (const auto& s : structure_suite_ids()) take(structure_suite(seed, s, cases));
  }
  text += "total mismatches=" + std::to_string(mismatches) + "\n";
  emit(out_path, text);
  return mismatches == 0 ? kOk : kMismatch;
}

int cmd_bench(const std::string& structure, const std::vector<int64_t>& sizes, uint64_t seed, double tol,
              const std::string& out_path) {
  const auto used = sizes.empty() ? default_bench_sizes(structure) : sizes;
  const BenchReport r = run_bench(structure, used, seed, tol);
  emit(out_path, r.csv());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic data structures with oracle crosschecks and reduction drivers"};
  app.require_subcommand(1);
  uint64_t seed = 1;
  std::string structure = "real", reduction, adapter = "oracle", out_path, scope = "all", file;
  std::vector<int64_t> sizes;
  size_t instances = 200, cases = 1000;
  double tol = 0.20;

  auto* solve = app.add_subcommand("solve", "Answer the queries of an op trace");
  solve->add_option("trace", file, "Trace file")->required();
  solve->add_option("--structure", structure, "oracle, real, or a variant name")->capture_default_str();
  solve->add_option("--out", out_path, "Write answers here instead of stdout");

  auto* reduce = app.add_subcommand("reduce", "Run a reduction on a graph or OuMv instance");
  reduce->add_option("instance", file, "Graph or OuMv file")->required();
  reduce->add_option("--reduction", reduction, "Reduction id")->required();
  reduce->add_option("--adapter", adapter, "Target adapter")->capture_default_str();
  reduce->add_option("--out", out_path, "Write the result here instead of stdout");

  auto* cross = app.add_subcommand("crosscheck", "Seeded suites against brute force and scan oracles");
  cross->add_option("--seed", seed, "Suite seed")->capture_default_str();
  cross->add_option("--scope", scope, "all, reductions, structures or fault")
      ->check(CLI::IsMember({"all", "reductions", "structures", "fault"}))
      ->capture_default_str();
  cross->add_option("--reduction", reduction, "Only this reduction");
  cross->add_option("--adapter", adapter, "Only this adapter");
  cross->add_option("--instances", instances, "Instances per reduction suite")->capture_default_str();
  cross->add_option("--cases", cases, "Traces per structure suite")->capture_default_str();
  cross->add_option("--out", out_path, "Write the report here instead of stdout");

  auto* bench = app.add_subcommand("bench", "Counter-based scaling run with an exponent fit");
  bench->add_option("--structure", structure, "Bench id")->required();
  bench->add_option("--sizes", sizes, "Comma separated sizes, at least 4")->delimiter(',');
  bench->add_option("--seed", seed, "Workload seed")->capture_default_str();
  bench->add_option("--tol", tol, "Accepted distance from the target exponent")->capture_default_str();
  bench->add_option("--out", out_path, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  // An explicit --adapter narrows crosscheck; the oracle default does not.
  if (cross->parsed() && cross->count("--adapter") == 0) adapter.clear();

  try {
    if (solve->parsed()) return cmd_solve(file, structure, out_path);
    if (reduce->parsed()) return cmd_reduce(file, reduction, adapter, out_path);
    if (cross->parsed()) return cmd_crosscheck(seed, scope, reduction, adapter, instances, cases, out_path);
    return cmd_bench(structure, sizes, seed, tol, out_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const OpError& e) {
    std::cerr << "op error: " << e.what() << "\n";
    return kOpError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOpError;
  }
}
