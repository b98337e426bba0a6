#pragma once

#include <string>
#include <vector>

#include "gpckit/sim.hpp"
#include "gpckit/stability.hpp"

namespace gpckit {

/// Formats a number with 9 significant digits (the CLI-wide convention).
std::string format_number(double v);

/// Writes content atomically (write to a temp file, then rename).
void atomic_write(const std::string& path, const std::string& content);

/// Pole dump CSV: header `P,lambda,R,vref,pole_index,re,im,modulus,stable`.
std::string pole_csv(const std::vector<SweepRecord>& records);

/// Sweep summary CSV: header `P,lambda,R,vref,max_modulus,stable`; rows that
/// failed to evaluate carry `stable=error`.
std::string summary_csv(const std::vector<SweepRecord>& records);

/// Trace CSV: header `t,iL,vO,duty,ref`.
std::string trace_csv(const SimTrace& trace);

/// Metrics as a flat key-value text block.
std::string metrics_text(const SimMetrics& m);

/// Metrics as a JSON object (with the scenario note when present).
std::string metrics_json(const SimMetrics& m, const SimTrace& trace, const std::string& note);

}  // namespace gpckit
