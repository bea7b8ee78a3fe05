#pragma once

// JSON (de)serialization for the domain types. Field names and shapes are
// frozen in docs/schemas.md; bump the schema version string if they change.
//
// Rationals are emitted as {"rational": "p/q", "decimal": x} so downstream
// tooling can choose exactness or floats. On input a rational may be that
// object, a "p/q" / decimal string, or an integer JSON number; non-integer
// JSON numbers are rejected (binary floats are not exact).

#include <json.hpp>

#include "qregen/flow_graph.hpp"
#include "qregen/params.hpp"
#include "qregen/rational.hpp"
#include "qregen/repair_sim.hpp"

namespace qregen {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "qregen 1.0.0";

inline constexpr const char* kConfigSchema = "qregen-config/1";
inline constexpr const char* kLogSchema = "qregen-log/1";
inline constexpr const char* kGraphSchema = "qregen-graph/1";
inline constexpr const char* kVerifySchema = "qregen-verify/1";
inline constexpr const char* kOutputSchema = "qregen-output/1";

Json rational_to_json(const Rational& r);
// path names the field in diagnostics, e.g. "params.file_size".
Rational rational_from_json(const Json& j, const std::string& path);

Json params_to_json(const SystemParams& params);
SystemParams params_from_json(const Json& j, const std::string& path = "params");

Json point_to_json(const OperatingPoint& point);
OperatingPoint point_from_json(const Json& j, const std::string& path = "point");

Json regen_point_to_json(const RegenPoint& point);
Json curve_to_json(const TradeoffCurve& curve);

Json event_to_json(const Event& event);
Event event_from_json(const Json& j, const std::string& path);

Json script_to_json(const EvolutionScript& script);
EvolutionScript script_from_json(const Json& j, const std::string& path = "script");

// Simulation config: {"schema": "qregen-config/1", "params": …, "point": …,
// "script": […]}.
struct SimulationConfig {
    SystemParams params;
    OperatingPoint point;
    EvolutionScript script;
};
Json config_to_json(const SimulationConfig& config);
SimulationConfig config_from_json(const Json& j);

Json ledger_to_json(const ResourceLedger& ledger);
Json retrieval_to_json(const RetrievalReport& report);
Json log_to_json(const SimulationLog& log);

// Graph dump: instances, explicit edge list, repair rounds, DC attachment.
Json graph_to_json(const FlowGraph& graph);
Json cut_to_json(const Cut& cut, const std::optional<Rational>& value);
Json verify_report_to_json(const VerificationReport& report);

// Standard CLI envelope: {"schema": "qregen-output/1", "command": …,
// "inputs": …, "results": …, "provenance": …}.
Json make_output_record(const std::string& command, Json inputs, Json results);

}  // namespace qregen
