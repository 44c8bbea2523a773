#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynds/graph.hpp"
#include "dynds/tensor.hpp"

namespace dynds {

/// Malformed input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

struct TraceHeader {
  int dim = 1;
  int64_t cap = 0;
  int64_t scale = 1;
  std::optional<int64_t> threshold;
  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct TraceOp {
  std::string kind;
  std::vector<int64_t> args;
  friend bool operator==(const TraceOp&, const TraceOp&) = default;
};

/// Text trace:
///   problem <id>
///   header dim=<d> cap=<n> scale=<s> threshold=<t|->
///   <KIND> <args...>
/// '#' starts a comment; blank lines are ignored.
struct OpTrace {
  std::string problem;
  TraceHeader header;
  std::vector<TraceOp> ops;
  friend bool operator==(const OpTrace&, const OpTrace&) = default;
};

/// Known problem ids, in a fixed order.
const std::vector<std::string>& trace_problems();

/// Number of integer arguments an op takes, or nullopt if the kind does not
/// belong to the problem. ARR takes any number.
std::optional<size_t> op_arity(const std::string& problem, const std::string& kind, int dim);

OpTrace parse_trace(std::istream& in);
OpTrace parse_trace_text(const std::string& text);
std::string serialize_trace(const OpTrace& t);

/// Graph file: "k n1 .. nk" then one "p u q v" line per edge, 1-based, p < q.
KPartiteGraph parse_graph(std::istream& in);
std::string serialize_graph(const KPartiteGraph& g);

/// OuMv file: "k n |M| q", |M| tuple lines, then q blocks of k subset lines
/// ('-' is the empty subset).
OuMvInstance parse_oumv(std::istream& in);
std::string serialize_oumv(const OuMvInstance& inst);

}  // namespace dynds
