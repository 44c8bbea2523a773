#include "dynds/trace.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace dynds {

namespace {

struct Line {
  size_t number = 0;
  std::vector<std::string> tokens;
};

std::vector<std::string> tokenize(const std::string& raw) {
  std::string s = raw.substr(0, raw.find('#'));
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

/// Non-empty, comment-stripped lines.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  for (size_t n = 1; std::getline(in, raw); ++n) {
    auto toks = tokenize(raw);
    if (!toks.empty()) out.push_back({n, std::move(toks)});
  }
  return out;
}

int64_t to_int(const std::string& s, size_t line) {
  int64_t v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

std::vector<int64_t> ints(const Line& l, size_t from = 0) {
  std::vector<int64_t> out;
  for (size_t i = from; i < l.tokens.size(); ++i) out.push_back(to_int(l.tokens[i], l.number));
  return out;
}

struct KindSpec {
  const char* kind;
  int fixed;     // constant part of the arity
  int per_dim;   // plus this many per dimension
};

const std::map<std::string, std::vector<KindSpec>>& problem_kinds() {
  static const std::map<std::string, std::vector<KindSpec>> m = {
      {"range-mode", {{"INS", 1, 1}, {"DEL", 1, 1}, {"QRY", 0, 2}}},
      {"sequence-mode", {{"SINS", 2, 0}, {"SDEL", 1, 0}, {"SQRY", 2, 0}}},
      {"common-colors", {{"ARR", -1, 0}, {"CON", 1, 0}, {"COFF", 1, 0}, {"CQRY", 4, 0}}},
      {"color-count", {{"PINS", 3, 0}, {"PDEL", 3, 0}, {"PQRY", 4, 0}}},
      {"klee", {{"KINS", 0, 1}, {"KDEL", 0, 1}, {"KVOL", 0, 0}}},
      {"halfspace",
       {{"HINS", 2, 1}, {"HDEL", 2, 1}, {"HPIN", 0, 1}, {"HPDEL", 0, 1}, {"HMIN", 0, 0}}},
      {"skyline", {{"SOINS", 1, 1}, {"SODEL", 0, 0}, {"SOQRY", 0, 0}}},
      {"langerman", {{"LSET", 1, 1}, {"LQRY", 0, 0}}},
      {"erickson", {{"EINC", 2, 0}, {"EMAX", 0, 0}}},
      {"hyperclique", {{"HEINS", 0, 1}, {"HEDEL", 0, 1}, {"HSQ", 0, 0}}},
  };
  return m;
}

void write_subset(std::ostream& os, const std::vector<int64_t>& u) {
  if (u.empty()) {
    os << "-\n";
    return;
  }
  for (size_t i = 0; i < u.size(); ++i) os << (i ? " " : "") << u[i];
  os << '\n';
}

}  // namespace

const std::vector<std::string>& trace_problems() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, _] : problem_kinds()) v.push_back(id);
    return v;
  }();
  return ids;
}

std::optional<size_t> op_arity(const std::string& problem, const std::string& kind, int dim) {
  auto it = problem_kinds().find(problem);
  if (it == problem_kinds().end()) return std::nullopt;
  for (const auto& k : it->second)
    if (kind == k.kind) {
      if (k.fixed < 0) return SIZE_MAX;
      return static_cast<size_t>(k.fixed + k.per_dim * dim);
    }
  return std::nullopt;
}

OpTrace parse_trace(std::istream& in) {
  const auto lines = read_lines(in);
  OpTrace t;
  if (lines.empty()) throw ParseError(1, "empty trace: missing problem line");
  const Line& first = lines[0];
  if (first.tokens.size() != 2 || first.tokens[0] != "problem")
    throw ParseError(first.number, "expected 'problem <id>'");
  t.problem = first.tokens[1];
  if (!problem_kinds().count(t.problem)) throw ParseError(first.number, "unknown problem '" + t.problem + "'");
  if (lines.size() < 2 || lines[1].tokens[0] != "header")
    throw ParseError(lines.size() < 2 ? first.number + 1 : lines[1].number, "expected a header line");
  const Line& hl = lines[1];
  std::set<std::string> seen;
  for (size_t i = 1; i < hl.tokens.size(); ++i) {
    const std::string& tok = hl.tokens[i];
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError(hl.number, "header fields look like key=value");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (!seen.insert(key).second) throw ParseError(hl.number, "duplicate header field '" + key + "'");
    if (key == "dim")
      t.header.dim = static_cast<int>(to_int(val, hl.number));
    else if (key == "cap")
      t.header.cap = to_int(val, hl.number);
    else if (key == "scale")
      t.header.scale = to_int(val, hl.number);
    else if (key == "threshold")
      t.header.threshold = val == "-" ? std::nullopt : std::optional<int64_t>(to_int(val, hl.number));
    else
      throw ParseError(hl.number, "unknown header field '" + key + "'");
  }
  if (t.header.dim < 1 || t.header.dim > 16) throw ParseError(hl.number, "dim out of range");
  if (t.header.cap < 0) throw ParseError(hl.number, "cap must be non-negative");
  if (t.header.scale < 1) throw ParseError(hl.number, "scale must be positive");
  for (size_t i = 2; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const auto arity = op_arity(t.problem, l.tokens[0], t.header.dim);
    if (!arity) throw ParseError(l.number, "op '" + l.tokens[0] + "' does not belong to " + t.problem);
    TraceOp op{l.tokens[0], ints(l, 1)};
    if (*arity != SIZE_MAX && op.args.size() != *arity)
      throw ParseError(l.number, op.kind + " takes " + std::to_string(*arity) + " arguments, got " +
                                     std::to_string(op.args.size()));
    t.ops.push_back(std::move(op));
  }
  return t;
}

OpTrace parse_trace_text(const std::string& text) {
  std::istringstream is(text);
  return parse_trace(is);
}

std::string serialize_trace(const OpTrace& t) {
  std::ostringstream os;
  os << "problem " << t.problem << '\n';
  os << "header dim=" << t.header.dim << " cap=" << t.header.cap << " scale=" << t.header.scale << " threshold=";
  if (t.header.threshold)
    os << *t.header.threshold;
  else
    os << '-';
  os << '\n';
  for (const auto& op : t.ops) {
    os << op.kind;
    for (int64_t a : op.args) os << ' ' << a;
    os << '\n';
  }
  return os.str();
}

KPartiteGraph parse_graph(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(1, "empty graph file");
  const auto head = ints(lines[0]);
  if (head.empty() || head[0] < 1 || static_cast<int64_t>(head.size()) != head[0] + 1)
    throw ParseError(lines[0].number, "header must be 'k n1 .. nk'");
  std::vector<int> sizes;
  for (size_t i = 1; i < head.size(); ++i) {
    if (head[i] < 0 || head[i] > 1'000'000) throw ParseError(lines[0].number, "part size out of range");
    sizes.push_back(static_cast<int>(head[i]));
  }
  KPartiteGraph g(sizes);
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto e = ints(lines[i]);
    const size_t ln = lines[i].number;
    if (e.size() != 4) throw ParseError(ln, "edge lines are 'p u q v'");
    const int64_t p = e[0], u = e[1], q = e[2], v = e[3];
    if (p < 1 || q < 1 || p > head[0] || q > head[0]) throw ParseError(ln, "part out of range");
    if (p >= q) throw ParseError(ln, "edge parts must satisfy p < q");
    if (u < 1 || u > head[static_cast<size_t>(p)] || v < 1 || v > head[static_cast<size_t>(q)])
      throw ParseError(ln, "vertex out of range");
    g.add_edge(static_cast<int>(p - 1), static_cast<int>(u - 1), static_cast<int>(q - 1), static_cast<int>(v - 1));
  }
  return g;
}

std::string serialize_graph(const KPartiteGraph& g) {
  std::ostringstream os;
  os << g.k();
  for (int s : g.sizes()) os << ' ' << s;
  os << '\n';
  for (const auto& e : g.edges()) os << e[0] + 1 << ' ' << e[1] + 1 << ' ' << e[2] + 1 << ' ' << e[3] + 1 << '\n';
  return os.str();
}

OuMvInstance parse_oumv(std::istream& in) {
  // Subset lines may be a bare '-', so tokens are read line by line here.
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError(1, "empty OuMv file");
  const auto head = ints(lines[0]);
  const size_t hl = lines[0].number;
  if (head.size() != 4) throw ParseError(hl, "header must be 'k n |M| q'");
  OuMvInstance inst;
  if (head[0] < 1 || head[0] > 16) throw ParseError(hl, "k out of range");
  if (head[1] < 1) throw ParseError(hl, "n must be positive");
  if (head[2] < 0 || head[3] < 0) throw ParseError(hl, "counts must be non-negative");
  inst.k = static_cast<int>(head[0]);
  inst.n = head[1];
  const size_t msize = static_cast<size_t>(head[2]), q = static_cast<size_t>(head[3]);
  const size_t k = static_cast<size_t>(inst.k);
  const size_t need = 1 + msize + q * k;
  if (lines.size() < need)
    throw ParseError(lines.back().number + 1, "file ends early: expected " + std::to_string(need) + " lines");
  if (lines.size() > need) throw ParseError(lines[need].number, "unexpected trailing line");
  std::set<Tuple> seen;
  for (size_t i = 0; i < msize; ++i) {
    const Line& l = lines[1 + i];
    Tuple t = ints(l);
    if (t.size() != k) throw ParseError(l.number, "tuple arity must be " + std::to_string(k));
    for (int64_t v : t)
      if (v < 1 || v > inst.n) throw ParseError(l.number, "tuple coordinate out of range");
    if (!seen.insert(t).second) throw ParseError(l.number, "duplicate tuple");
    inst.m.push_back(std::move(t));
  }
  for (size_t b = 0; b < q; ++b) {
    SubsetQuery sq;
    for (size_t i = 0; i < k; ++i) {
      const Line& l = lines[1 + msize + b * k + i];
      std::vector<int64_t> u;
      if (!(l.tokens.size() == 1 && l.tokens[0] == "-")) u = ints(l);
      std::set<int64_t> uniq;
      for (int64_t v : u) {
        if (v < 1 || v > inst.n) throw ParseError(l.number, "subset member out of range");
        if (!uniq.insert(v).second) throw ParseError(l.number, "duplicate subset member");
      }
      sq.push_back(std::move(u));
    }
    inst.queries.push_back(std::move(sq));
  }
  return inst;
}

std::string serialize_oumv(const OuMvInstance& inst) {
  std::ostringstream os;
  os << inst.k << ' ' << inst.n << ' ' << inst.m.size() << ' ' << inst.queries.size() << '\n';
  for (const Tuple& t : inst.m) write_subset(os, t);
  for (const auto& q : inst.queries)
    for (const auto& u : q) write_subset(os, u);
  return os.str();
}

}  // namespace dynds
