#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dynds {

struct BenchRow {
  int64_t n = 0;
  uint64_t ops = 0;
  uint64_t visits = 0;
  uint64_t ns = 0;
  double visits_per_op = 0;
};

struct BenchReport {
  std::string structure;
  uint64_t seed = 0;
  std::vector<BenchRow> rows;
  double fit = 0;
  double target = 0;
  double tol = 0.20;
  bool pass = false;

  /// Header, one row per size, the fit trailer and a config comment.
  std::string csv() const;
};

const std::vector<std::string>& bench_ids();
double bench_target(const std::string& id);
std::vector<int64_t> default_bench_sizes(const std::string& id);

/// Least-squares slope of log(visits_per_op) against log(n); needs 4 sizes.
double fit_exponent(const std::vector<BenchRow>& rows);

/// Runs the workload for each size with a fresh visit counter. Throws
/// std::invalid_argument for an unknown id or fewer than 4 sizes.
BenchReport run_bench(const std::string& id, const std::vector<int64_t>& sizes, uint64_t seed, double tol = 0.20);

}  // namespace dynds
