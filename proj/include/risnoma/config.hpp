#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "risnoma/engine.hpp"

namespace risnoma {

// A fully-resolved run description: what `simulate` and the presets execute
// and what gets written back out as the manifest. Re-running a manifest
// reproduces the CSV byte for byte (wall-clock timing is only recorded when
// `timing` is on, and is then explicitly outside the determinism contract).
struct RunSpec {
    SimConfig sim;
    SweepSpec sweep{"none", {}};
    std::vector<std::string> schemes{"proposed", "traditional"};
    std::string preset;  // empty unless created by `preset <name>`
    bool timing = false;
    int threads = 0;     // 0 = all available

    bool is_resilience() const { return sweep.param == "failed_uavs"; }
};

// Flat key = value file with [sim], [sweep], [scenario] and [run] sections.
// Unspecified keys keep their defaults. Throws ParseError (malformed input,
// with line number) or ConfigError (bad value, naming the key).
RunSpec parse_config(std::istream& in);
RunSpec parse_config_file(const std::string& path);

// Canonical manifest text; parse_config(serialize_manifest(spec)) round-trips.
std::string serialize_manifest(const RunSpec& spec);
void write_manifest(const RunSpec& spec, const std::string& path);

// Expand "lo:step:hi" or a comma list into sweep values.
std::vector<double> expand_sweep_values(const std::string& text);

} // namespace risnoma
