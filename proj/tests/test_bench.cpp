#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "dynds/bench.hpp"

using namespace dynds;

TEST_CASE("fit recovers an exact power law") {
  std::vector<BenchRow> rows;
  for (int64_t n : {10, 20, 40, 80, 160}) rows.push_back({n, 1, 0, 0, 3.0 * std::pow(static_cast<double>(n), 0.75)});
  CHECK(fit_exponent(rows) == doctest::Approx(0.75).epsilon(1e-9));
  rows.pop_back();
  CHECK(fit_exponent(rows) == doctest::Approx(0.75).epsilon(1e-9));
  rows.pop_back();
  CHECK_THROWS_AS(fit_exponent(rows), std::invalid_argument);
}

TEST_CASE("bench rejects short size lists and unknown ids") {
  CHECK_THROWS_AS(run_bench("oracle-scan", {8, 16, 32}, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_bench("nope", {8, 16, 32, 64}, 1), std::invalid_argument);
}

TEST_CASE("linear scan fits exponent one") {
  const BenchReport r = run_bench("oracle-scan", {64, 128, 256, 512, 1024}, 3);
  CHECK(r.fit == doctest::Approx(1.0).epsilon(0.01));
  CHECK(r.pass);
  const std::string csv = r.csv();
  CHECK(csv.rfind("n,ops,visits,ns,visits_per_op\n", 0) == 0);
  CHECK(csv.find("fit_exponent=1.0000 target=1.0000 tol=0.2000 pass=true\n") != std::string::npos);
  CHECK(csv.find("# structure=oracle-scan seed=3") != std::string::npos);
}

TEST_CASE("visit counts are deterministic for a seed") {
  const auto a = run_bench("langerman-d1", {16, 32, 64, 128}, 7);
  const auto b = run_bench("langerman-d1", {16, 32, 64, 128}, 7);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].visits == b.rows[i].visits);
    CHECK(a.rows[i].ops == b.rows[i].ops);
  }
  CHECK(a.fit == b.fit);
}

TEST_CASE("langerman update cost on a line grows like the square root") {
  const BenchReport r = run_bench("langerman-d1", default_bench_sizes("langerman-d1"), 1);
  CHECK(r.rows.size() >= 5);
  CHECK(r.pass);
}
