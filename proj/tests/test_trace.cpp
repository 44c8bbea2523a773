#include <random>
#include <sstream>

#include "doctest.h"
#include "dynds/crosscheck.hpp"
#include "dynds/solve.hpp"
#include "dynds/trace.hpp"

using namespace dynds;

namespace {

size_t parse_error_line(const std::string& text) {
  try {
    parse_trace_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

size_t op_error_index(const std::string& text, const std::string& structure) {
  try {
    solve_trace(parse_trace_text(text), structure);
  } catch (const OpError& e) {
    return e.index();
  }
  return SIZE_MAX;
}

const std::string kSeq =
    "problem sequence-mode\n"
    "header dim=1 cap=0 scale=1 threshold=-\n"
    "SINS 1 4   # a comment\n"
    "\n"
    "SINS 2 9\n"
    "SINS 3 4\n"
    "SQRY 1 3\n"
    "SQRY 2 2\n";

}  // namespace

TEST_CASE("trace parsing with comments and blank lines") {
  const OpTrace t = parse_trace_text(kSeq);
  CHECK(t.problem == "sequence-mode");
  CHECK(t.header.dim == 1);
  CHECK_FALSE(t.header.threshold.has_value());
  REQUIRE(t.ops.size() == 5);
  CHECK(t.ops[0] == TraceOp{"SINS", {1, 4}});
  CHECK(parse_trace_text(serialize_trace(t)) == t);
}

TEST_CASE("parse errors carry the line number") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("problem nope\n") == 1);
  CHECK(parse_error_line("problem klee\n") == 2);
  CHECK(parse_error_line("problem klee\nheader dim=2 bogus=1\n") == 2);
  CHECK(parse_error_line("problem klee\nheader dim=0\n") == 2);
  CHECK(parse_error_line("# lead\nproblem klee\nheader dim=2\nKINS 1 2\nKINS 1\n") == 5);
  CHECK(parse_error_line("problem klee\nheader dim=2\nKVOL\nSQRY 1 1\n") == 4);
  CHECK(parse_error_line("problem sequence-mode\nheader dim=1\nSINS 1 x\n") == 3);
  CHECK(parse_error_line("problem range-mode\nheader dim=2\nQRY 1 2 3\n") == 3);
}

TEST_CASE("op arity follows the dimension") {
  CHECK(op_arity("range-mode", "INS", 2) == 3u);
  CHECK(op_arity("range-mode", "QRY", 3) == 6u);
  CHECK(op_arity("halfspace", "HINS", 2) == 4u);
  CHECK(op_arity("skyline", "SOINS", 3) == 4u);
  CHECK_FALSE(op_arity("klee", "SINS", 2).has_value());
  CHECK(trace_problems().size() == 10);
}

TEST_CASE("generated traces round-trip") {
  std::mt19937_64 rng(12);
  for (const auto& suite : structure_suite_ids())
    for (int rep = 0; rep < 20; ++rep) {
      const OpTrace t = random_structure_trace(suite, rng);
      CHECK(parse_trace_text(serialize_trace(t)) == t);
    }
}

TEST_CASE("graph and OuMv files round-trip and reject bad lines") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    const Instance g = random_instance("mode", 0, rng);
    std::istringstream gs(serialize_instance(g));
    CHECK(serialize_graph(parse_graph(gs)) == serialize_instance(g));
    const Instance o = random_instance("halfspace", 3, rng);
    std::istringstream os(serialize_instance(o));
    const OuMvInstance back = parse_oumv(os);
    CHECK(serialize_oumv(back) == serialize_instance(o));
  }
  auto graph_line = [](const std::string& s) {
    std::istringstream in(s);
    try {
      parse_graph(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return size_t{0};
  };
  CHECK(graph_line("2 1 1\n2 1 1 1\n") == 2);
  CHECK(graph_line("2 1 1\n1 2 2 1\n") == 2);
  auto oumv_line = [](const std::string& s) {
    std::istringstream in(s);
    try {
      parse_oumv(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return size_t{0};
  };
  CHECK(oumv_line("2 2 1 1\n1 3\n1\n2\n") == 2);
  CHECK(oumv_line("2 2 2 0\n1 1\n1 1\n") == 3);
  CHECK(oumv_line("2 2 0 1\n1 1\n-\n") == 2);
  CHECK(oumv_line("2 2 0 1\n1\n") == 3);
  std::istringstream empty_subsets("2 2 0 1\n-\n-\n");
  CHECK(parse_oumv(empty_subsets).queries[0] == SubsetQuery{{}, {}});
}

TEST_CASE("solving a sequence trace") {
  const auto want = std::vector<std::string>{"4 2", "9 1"};
  CHECK(solve_trace(parse_trace_text(kSeq), "oracle") == want);
  CHECK(solve_trace(parse_trace_text(kSeq), "real") == want);
  CHECK(solve_trace(parse_trace_text("problem sequence-mode\nheader dim=1\n"), "real").empty());
  CHECK_THROWS_AS(solve_trace(parse_trace_text(kSeq), "lazy"), std::invalid_argument);
}

TEST_CASE("semantic op errors carry the op index") {
  const std::string bad_delete = "problem sequence-mode\nheader dim=1\nSINS 1 4\nSQRY 1 1\nSDEL 2\n";
  CHECK(op_error_index(bad_delete, "oracle") == 2);
  CHECK(op_error_index(bad_delete, "real") == 2);
  const std::string absent = "problem range-mode\nheader dim=1\nINS 3 1\nDEL 4 1\n";
  CHECK(op_error_index(absent, "oracle") == 1);
  CHECK(op_error_index(absent, "real") == 1);
  const std::string color = "problem common-colors\nheader dim=1\nARR 1 2 2\nCON 7\n";
  CHECK(op_error_index(color, "real") == 1);
  const std::string sky = "problem skyline\nheader dim=3\nSOINS 1 1 1 1\nSOQRY\n";
  CHECK(op_error_index(sky, "real") == 0);
}

TEST_CASE("solving the other problems") {
  const auto klee = parse_trace_text("problem klee\nheader dim=2 scale=2 threshold=2\nKINS 2 2\nKVOL\nKINS 3 3\nKVOL\n");
  CHECK(solve_trace(klee, "oracle") == std::vector<std::string>{"1", "7/4"});
  CHECK_THROWS_AS(solve_trace(klee, "real"), std::invalid_argument);
  CHECK(format_volume(6, 2, 2) == "3/2");
  CHECK(format_volume(0, 3, 2) == "0");

  const auto eri = parse_trace_text("problem erickson\nheader dim=2 cap=3\nEINC 1 2\nEINC 2 2\nEMAX\nEINC 2 3\nEMAX\n");
  for (const auto* s : {"oracle", "lazy", "eager", "real"}) CHECK(solve_trace(eri, s) == std::vector<std::string>{"2", "2"});

  const auto hyp = parse_trace_text("problem hyperclique\nheader dim=2 cap=3\nHEINS 0 1\nHEINS 1 2\nHSQ\nHEINS 2 0\nHSQ\n");
  for (const auto* s : {"oracle", "lazy", "counting"}) CHECK(solve_trace(hyp, s) == std::vector<std::string>{"false", "true"});

  const auto lan = parse_trace_text("problem langerman\nheader dim=1 cap=3\nLSET 1 1\nLSET 2 1\nLSET 3 1\nLQRY\nLSET 2 -1\nLQRY\n");
  for (const auto* s : {"oracle", "real"}) CHECK(solve_trace(lan, s) == std::vector<std::string>{"false", "true"});

  const auto sky = parse_trace_text(
      "problem skyline\nheader dim=3\nSOINS 1 1 1 3\nSOINS 2 0 0 -1\nSOQRY\nSODEL\nSOQRY\n");
  for (const auto* s : {"oracle", "real"}) CHECK(solve_trace(sky, s) == std::vector<std::string>{"2", "1"});

  const auto half = parse_trace_text(
      "problem halfspace\nheader dim=2\nHPIN 0 0\nHPIN 3 3\nHINS 1 0 2 1\nHMIN\nHINS -1 0 -1 1\nHMIN\n");
  for (const auto* s : {"oracle", "real"}) CHECK(solve_trace(half, s) == std::vector<std::string>{"0", "1"});

  const auto cc = parse_trace_text("problem color-count\nheader dim=2\nPINS 1 1 5\nPINS 2 2 5\nPINS 2 1 6\nPQRY 0 2 0 2\nPDEL 2 1 6\nPQRY 0 2 0 2\n");
  for (const auto* s : {"oracle", "real"}) CHECK(solve_trace(cc, s) == std::vector<std::string>{"2", "1"});

  const auto com = parse_trace_text("problem common-colors\nheader dim=1\nARR 1 2 1 3\nCON 1\nCQRY 1 1 3 3\nCQRY 1 2 4 4\n");
  for (const auto* s : {"oracle", "real"}) CHECK(solve_trace(com, s) == std::vector<std::string>{"1", "0"});
}

TEST_CASE("structure suites agree with their oracles") {
  for (const auto& suite : structure_suite_ids()) {
    CAPTURE(suite);
    const CrosscheckReport r = structure_suite(9, suite, 40);
    CHECK(r.instances == 40);
    CHECK(r.mismatches == 0);
  }
  CHECK(structure_suite(9, "sequence", 5).text == structure_suite(9, "sequence", 5).text);
}
