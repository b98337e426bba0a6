#pragma once

#include <string>

#include "gpckit/gpc.hpp"
#include "gpckit/plant.hpp"
#include "gpckit/sim.hpp"

namespace gpckit {

/// Toolkit configuration: converter parameters, controller configuration,
/// discretization choice, stability margin and output directory.
struct ConfigFile {
    ConverterParams converter;
    GpcConfig gpc;
    Discretization discretization = Discretization::kZoh;
    double margin = 0.0;
    std::string output_dir = "out";

    void validate() const;
};

/// Parses a config JSON document. Unknown keys are rejected with a
/// diagnostic naming the key; all referenced blocks validate per their own
/// invariants. Throws ConfigError.
ConfigFile load_config(const std::string& path);
ConfigFile parse_config(const std::string& json_text);

/// Serializes a config back to JSON; parse(dump(c)) == c.
std::string dump_config(const ConfigFile& cfg);

/// Parses a scenario JSON document (same unknown-key policy).
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

}  // namespace gpckit
