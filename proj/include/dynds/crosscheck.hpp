#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dynds/reductions.hpp"
#include "dynds/trace.hpp"

namespace dynds {

using Instance = std::variant<KPartiteGraph, OuMvInstance>;

struct ReductionInfo {
  std::string id;
  bool graph_input = true;            // false: OuMv instance
  std::vector<std::string> adapters;  // first entry is the oracle target
};

const std::vector<ReductionInfo>& reduction_catalog();
const ReductionInfo& reduction_info(const std::string& id);

/// Runs one reduction over the named adapter. Throws ArityError when the
/// instance shape does not fit and std::invalid_argument for unknown ids.
ReductionResult run_reduction(const std::string& id, const std::string& adapter, const Instance& inst,
                              CounterPtr counter = nullptr);

/// Answers by direct detection: clique search or OuMv brute force.
std::vector<bool> direct_answers(const std::string& id, const Instance& inst);

/// Small seeded instance for the reduction; param is d for the mode
/// reductions on graphs and k for the OuMv reductions.
Instance random_instance(const std::string& id, int param, std::mt19937_64& rng);

std::string serialize_instance(const Instance& inst);

struct CrosscheckReport {
  std::string text;
  size_t instances = 0;
  size_t mismatches = 0;
};

CrosscheckReport crosscheck_suite(uint64_t seed, const std::string& reduction, int param, const std::string& adapter,
                                  size_t instances);

struct SuiteCase {
  std::string reduction;
  int param = 0;
  std::string adapter;
  size_t instances = 0;
};

/// Every reduction at every required parameter, against each of its adapters.
std::vector<SuiteCase> default_suite(size_t instances = 200);

/// Randomized trace suites comparing a structure with its scan oracle.
const std::vector<std::string>& structure_suite_ids();
OpTrace random_structure_trace(const std::string& suite, std::mt19937_64& rng);
CrosscheckReport structure_suite(uint64_t seed, const std::string& suite, size_t cases);

/// Bounded uniform draw that does not depend on the standard library's
/// distribution implementation.
int64_t draw(std::mt19937_64& rng, int64_t lo, int64_t hi);

}  // namespace dynds
