#pragma once

#include <string>
#include <vector>

#include "dynds/counter.hpp"
#include "dynds/trace.hpp"

namespace dynds {

/// Structure ids accepted for a problem; the first entry is the reference.
std::vector<std::string> trace_structures(const std::string& problem);

/// Runs a trace and returns one output line per query. Semantic failures
/// surface as OpError with the 0-based op index; an unknown structure id is
/// std::invalid_argument.
std::vector<std::string> solve_trace(const OpTrace& trace, const std::string& structure,
                                     CounterPtr counter = nullptr);

/// Exact rational rendering of raw / scale^dim.
std::string format_volume(int64_t raw, int64_t scale, int dim);

}  // namespace dynds
