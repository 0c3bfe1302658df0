#pragma once

// Serialization of plans and audit reports. JSON goes through nlohmann::json;
// CSV files start with '#' comment lines carrying the package version and
// the generating parameters. Output depends only on the inputs.

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgctl/carleman.hpp"
#include "bgctl/cutoff.hpp"
#include "bgctl/mass_bounds.hpp"
#include "bgctl/moments.hpp"
#include "bgctl/observability.hpp"
#include "bgctl/sweep.hpp"

namespace bgctl {

using nlohmann::json;

const char* version();

// Shortest decimal that round-trips.
std::string format_number(double v);

// {"tool": "bgctl", "version": ..., "command": ..., "parameters": ...}
json provenance(const std::string& command, const json& parameters);

// "# bgctl <version> <command>" then "# key=value" per parameter.
void write_csv_header(std::ostream& os, const std::string& command, const json& parameters);

json to_json(const ControlPlan& plan);
json to_json(const SweepReport& rep);       // summary only
json to_json(const CarlemanAudit& audit);
json to_json(const CompositionResult& res);  // audit fields, no samples
json to_json(const ObservabilityResult& r);
json to_json(const DissipationReport& r);
json to_json(const SSeriesReport& r);
json to_json(const GapAuditReport& r);

// Row writers (no header).
void write_sweep_rows(std::ostream& os, const SweepReport& rep);
void write_mass_bound_rows(std::ostream& os, const std::vector<MassBoundReport>& rows);
void write_control_samples(std::ostream& os, const CompositionResult& res);

}  // namespace bgctl
