#pragma once

// Trace export. CSV columns are `k,f,gap,alpha,e,L,time_ns` with reals
// printed to 17 significant digits so that a read-back is bit-exact; L is
// empty for rules without a Lipschitz estimate.

#include <iosfwd>
#include <string>
#include <string_view>

#include "scfw/solvers.hpp"

namespace scfw {

/// %.17g formatting, the exact round-trip representation of a double.
std::string format_real(double v);

void write_trace_csv(std::ostream& out, const RunTrace& trace);
/// Reads the CSV columns back; fields not in the CSV stay default.
RunTrace read_trace_csv(std::istream& in);

/// JSON document with every record field plus an echo of the run configuration.
void write_trace_json(std::ostream& out, const RunTrace& trace, const RunConfig& config,
                      std::string_view problem);

}  // namespace scfw
