#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DYNDS_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("dynds_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("solve prints one line per query") {
  const auto t = write("seq.trace", "problem sequence-mode\nheader dim=1\nSINS 1 3\nSINS 2 3\nSINS 3 8\nSQRY 1 3\n");
  const Run oracle = run("solve " + t.string() + " --structure oracle");
  const Run real = run("solve " + t.string() + " --structure real");
  CHECK(oracle.code == 0);
  CHECK(oracle.out == "3 2\n");
  CHECK(real.out == oracle.out);
  const auto empty = write("empty.trace", "problem range-mode\nheader dim=2\n");
  const Run e = run("solve " + empty.string());
  CHECK(e.code == 0);
  CHECK(e.out.empty());
}

TEST_CASE("solve exit codes") {
  CHECK(run("solve " + write("bad.trace", "problem sequence-mode\nheader dim=1\nSQRY 1\n").string()).code == 2);
  CHECK(run("solve " + write("op.trace", "problem sequence-mode\nheader dim=1\nSDEL 1\n").string()).code == 3);
  CHECK(run("solve " + write("k.trace", "problem klee\nheader dim=1 threshold=1\n").string() + " --structure real")
            .code == 2);
  CHECK(run("solve /nonexistent/trace").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("reduce prints answers and call counts") {
  const auto g = write("k4.graph", "4 1 1 1 1\n1 1 2 1\n1 1 3 1\n1 1 4 1\n2 1 3 1\n2 1 4 1\n3 1 4 1\n");
  const Run r = run("reduce " + g.string() + " --reduction subconn");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("true\ncalls builds=1 ", 0) == 0);
  const auto m0 = write("empty.oumv", "2 3 0 2\n1 2\n3\n-\n1\n");
  const Run h = run("reduce " + m0.string() + " --reduction halfspace --adapter real");
  CHECK(h.out.rfind("false\nfalse\ncalls ", 0) == 0);
  const auto o = write("small.oumv", "2 2 2 2\n1 2\n2 1\n1\n2\n2\n2\n");
  CHECK(run("reduce " + o.string() + " --reduction erickson --adapter lazy").out ==
        run("reduce " + o.string() + " --reduction erickson --adapter eager").out);
  CHECK(run("reduce " + write("g3.graph", "3 1 1 1\n").string() + " --reduction mode").code == 2);
  CHECK(run("reduce " + o.string() + " --reduction langerman").code == 0);
  CHECK(run("reduce " + write("n3.oumv", "3 3 0 0\n").string() + " --reduction langerman").code == 2);
}

TEST_CASE("crosscheck exit status and determinism") {
  const Run a = run("crosscheck --seed 11 --instances 8 --cases 8");
  const Run b = run("crosscheck --seed 11 --instances 8 --cases 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("total mismatches=0") != std::string::npos);
  CHECK(run("crosscheck --scope fault --instances 5").code == 1);
  const fs::path out = fs::temp_directory_path() / "dynds_cli_report.txt";
  CHECK(run("crosscheck --scope structures --cases 5 --out " + out.string()).code == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("structures suite=halfspace") != std::string::npos);
}

TEST_CASE("bench csv and size checks") {
  const Run r = run("bench --structure oracle-scan --sizes 64,128,256,512");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,ops,visits,ns,visits_per_op\n64,", 0) == 0);
  CHECK(r.out.find("pass=true") != std::string::npos);
  CHECK(run("bench --structure oracle-scan --sizes 64,128,256").code == 2);
  CHECK(run("bench --structure unknown --sizes 1,2,3,4").code == 2);
}
