#include "qregen/json_io.hpp"

#include <stdexcept>
#include <string>

namespace qregen {

namespace {

// Schema violations surface as std::runtime_error with the offending field
// path, e.g. `config: script[2].node: expected an integer`.

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

const Json& require(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

int require_int(const Json& j, const char* key, const std::string& path) {
    const Json& field = require(j, key, path);
    if (!field.is_number_integer()) fail(path + "." + key, "expected an integer");
    return field.get<int>();
}

Mode mode_from_json(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected \"classical\" or \"quantum\"");
    std::string s = j.get<std::string>();
    if (s == "classical") return Mode::Classical;
    if (s == "quantum") return Mode::Quantum;
    fail(path, "expected \"classical\" or \"quantum\", got \"" + s + "\"");
}

std::string vertex_name(const Vertex& v) {
    switch (v.kind) {
        case VertexKind::Source: return "source";
        case VertexKind::DataCollector: return "dc";
        case VertexKind::XIn:
            return "in(" + std::to_string(v.node_id) + "," + std::to_string(v.generation) + ")";
        default:
            return "out(" + std::to_string(v.node_id) + "," + std::to_string(v.generation) + ")";
    }
}

Json instance_to_json(const NodeInstance& inst) {
    return Json{{"node_id", inst.node_id}, {"generation", inst.generation}};
}

}  // namespace

Json rational_to_json(const Rational& r) {
    return Json{{"rational", r.str()}, {"decimal", r.to_double()}};
}

namespace {
Rational parse_rational_str(const std::string& s, const std::string& path) {
    try {
        return Rational::parse(s);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}
}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
    if (j.is_object()) {
        const Json& field = require(j, "rational", path);
        if (!field.is_string()) fail(path + ".rational", "expected a \"p/q\" string");
        return parse_rational_str(field.get<std::string>(), path + ".rational");
    }
    if (j.is_string()) return parse_rational_str(j.get<std::string>(), path);
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float())
        fail(path, "non-integer JSON numbers are not exact; write a \"p/q\" or decimal string");
    fail(path, "expected a rational (string, integer, or {\"rational\": \"p/q\"})");
}

Json params_to_json(const SystemParams& params) {
    return Json{{"n", params.n},
                {"k", params.k},
                {"d", params.d},
                {"file_size", rational_to_json(params.file_size)}};
}

SystemParams params_from_json(const Json& j, const std::string& path) {
    int n = require_int(j, "n", path);
    int k = require_int(j, "k", path);
    int d = require_int(j, "d", path);
    Rational B = rational_from_json(require(j, "file_size", path), path + ".file_size");
    return SystemParams(n, k, d, B);
}

Json point_to_json(const OperatingPoint& point) {
    return Json{{"alpha", rational_to_json(point.alpha)},
                {"beta", rational_to_json(point.beta)},
                {"mode", mode_name(point.mode)}};
}

OperatingPoint point_from_json(const Json& j, const std::string& path) {
    Rational alpha = rational_from_json(require(j, "alpha", path), path + ".alpha");
    Rational beta = rational_from_json(require(j, "beta", path), path + ".beta");
    Mode mode = mode_from_json(require(j, "mode", path), path + ".mode");
    return OperatingPoint(alpha, beta, mode);
}

Json regen_point_to_json(const RegenPoint& point) {
    return Json{{"label", regen_label_name(point.label)},
                {"alpha", rational_to_json(point.alpha)},
                {"total_bandwidth", rational_to_json(point.total_bandwidth)},
                {"per_helper", rational_to_json(point.per_helper)}};
}

Json curve_to_json(const TradeoffCurve& curve) {
    Json breakpoints = Json::array();
    for (const auto& [gamma, alpha] : curve.breakpoints)
        breakpoints.push_back(
            Json{{"gamma", rational_to_json(gamma)}, {"alpha", rational_to_json(alpha)}});
    return Json{{"mode", mode_name(curve.mode)},
                {"feasible_gamma_min", rational_to_json(curve.feasible_gamma_min)},
                {"breakpoints", std::move(breakpoints)}};
}

Json event_to_json(const Event& event) {
    if (const auto* f = std::get_if<FailEvent>(&event))
        return Json{{"type", "fail"}, {"node", f->node_id}};
    if (const auto* r = std::get_if<RepairEvent>(&event))
        return Json{{"type", "repair"}, {"node", r->node_id}, {"helpers", r->helper_ids}};
    const auto& c = std::get<CheckRetrievalEvent>(event);
    Json j{{"type", "check_retrieval"}};
    j["budget"] = c.budget ? Json(*c.budget) : Json(nullptr);
    return j;
}

Event event_from_json(const Json& j, const std::string& path) {
    const Json& type = require(j, "type", path);
    if (!type.is_string()) fail(path + ".type", "expected an event type string");
    std::string t = type.get<std::string>();
    if (t == "fail") return FailEvent{require_int(j, "node", path)};
    if (t == "repair") {
        RepairEvent r{require_int(j, "node", path), {}};
        if (auto it = j.find("helpers"); it != j.end() && !it->is_null()) {
            if (!it->is_array()) fail(path + ".helpers", "expected an array of node ids");
            for (std::size_t i = 0; i < it->size(); ++i) {
                const Json& h = (*it)[i];
                if (!h.is_number_integer())
                    fail(path + ".helpers[" + std::to_string(i) + "]", "expected an integer");
                r.helper_ids.push_back(h.get<int>());
            }
        }
        return r;
    }
    if (t == "check_retrieval") {
        CheckRetrievalEvent c{std::nullopt};
        if (auto it = j.find("budget"); it != j.end() && !it->is_null()) {
            if (!it->is_number_integer()) fail(path + ".budget", "expected an integer or null");
            c.budget = it->get<int>();
        }
        return c;
    }
    fail(path + ".type", "unknown event type \"" + t +
                             "\" (expected fail, repair, or check_retrieval)");
}

Json script_to_json(const EvolutionScript& script) {
    Json arr = Json::array();
    for (const Event& e : script) arr.push_back(event_to_json(e));
    return arr;
}

EvolutionScript script_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of events");
    EvolutionScript script;
    for (std::size_t i = 0; i < j.size(); ++i)
        script.push_back(event_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return script;
}

Json config_to_json(const SimulationConfig& config) {
    return Json{{"schema", kConfigSchema},
                {"params", params_to_json(config.params)},
                {"point", point_to_json(config.point)},
                {"script", script_to_json(config.script)}};
}

SimulationConfig config_from_json(const Json& j) {
    const Json& schema = require(j, "schema", "config");
    if (!schema.is_string() || schema.get<std::string>() != kConfigSchema)
        fail("config.schema", std::string("expected \"") + kConfigSchema + "\"");
    return SimulationConfig{params_from_json(require(j, "params", "config"), "config.params"),
                            point_from_json(require(j, "point", "config"), "config.point"),
                            script_from_json(require(j, "script", "config"), "config.script")};
}

Json ledger_to_json(const ResourceLedger& ledger) {
    return Json{{"dits_stored", rational_to_json(ledger.dits_stored)},
                {"classical_dits_sent", rational_to_json(ledger.classical_dits_sent)},
                {"qudits_sent", rational_to_json(ledger.qudits_sent)},
                {"entangled_qudits_consumed", rational_to_json(ledger.entangled_qudits_consumed)},
                {"repairs_completed", ledger.repairs_completed}};
}

Json retrieval_to_json(const RetrievalReport& report) {
    return Json{{"checked_subsets", report.checked_subsets},
                {"failing_subsets", report.failing_subsets},
                {"pass", report.pass}};
}

Json log_to_json(const SimulationLog& log) {
    Json entries = Json::array();
    for (const LogEntry& entry : log.entries) {
        Json e{{"event", event_to_json(entry.event)}, {"ledger", ledger_to_json(entry.ledger)}};
        e["retrieval"] = entry.retrieval ? retrieval_to_json(*entry.retrieval) : Json(nullptr);
        entries.push_back(std::move(e));
    }
    return Json{{"schema", kLogSchema},
                {"params", params_to_json(log.params)},
                {"point", point_to_json(log.point)},
                {"seed", log.seed},
                {"entries", std::move(entries)},
                {"final_ledger", ledger_to_json(log.final_ledger)},
                {"all_retrievals_passed", log.all_retrievals_passed},
                {"accounting_note", log.accounting_note}};
}

Json graph_to_json(const FlowGraph& graph) {
    const auto& instances = graph.instances();

    Json inst_arr = Json::array();
    for (std::size_t i = 0; i < instances.size(); ++i) {
        Json inst = instance_to_json(instances[i]);
        inst["active"] = graph.is_active(static_cast<int>(i));
        inst_arr.push_back(std::move(inst));
    }

    Json edges = Json::array();
    auto edge = [](std::string from, std::string to, Json capacity) {
        return Json{{"from", std::move(from)}, {"to", std::move(to)},
                    {"capacity", std::move(capacity)}};
    };
    for (const NodeInstance& inst : instances) {
        Vertex in{VertexKind::XIn, inst.node_id, inst.generation};
        Vertex out{VertexKind::XOut, inst.node_id, inst.generation};
        if (inst.generation == 0) edges.push_back(edge("source", vertex_name(in), "inf"));
        edges.push_back(edge(vertex_name(in), vertex_name(out),
                             rational_to_json(graph.alpha())));
    }
    for (const RepairRound& round : graph.rounds()) {
        const NodeInstance& nc = instances[round.newcomer];
        Vertex in{VertexKind::XIn, nc.node_id, nc.generation};
        for (int h : round.helpers) {
            Vertex out{VertexKind::XOut, instances[h].node_id, instances[h].generation};
            edges.push_back(edge(vertex_name(out), vertex_name(in),
                                 rational_to_json(round.beta)));
        }
    }
    Json dc = Json(nullptr);
    if (graph.has_dc()) {
        dc = Json::array();
        for (int idx : graph.dc_instances()) {
            const NodeInstance& inst = instances[idx];
            dc.push_back(inst.node_id);
            Vertex out{VertexKind::XOut, inst.node_id, inst.generation};
            edges.push_back(edge(vertex_name(out), "dc", "inf"));
        }
    }

    Json rounds = Json::array();
    for (const RepairRound& round : graph.rounds()) {
        Json helpers = Json::array();
        for (int h : round.helpers) helpers.push_back(instance_to_json(instances[h]));
        rounds.push_back(Json{{"round", round.round_index},
                              {"newcomer", instance_to_json(instances[round.newcomer])},
                              {"helpers", std::move(helpers)},
                              {"beta", rational_to_json(round.beta)}});
    }

    return Json{{"schema", kGraphSchema},
                {"params", params_to_json(graph.params())},
                {"alpha", rational_to_json(graph.alpha())},
                {"mode", mode_name(graph.mode())},
                {"instances", std::move(inst_arr)},
                {"edges", std::move(edges)},
                {"rounds", std::move(rounds)},
                {"dc", std::move(dc)}};
}

Json cut_to_json(const Cut& cut, const std::optional<Rational>& value) {
    Json side = Json::array();
    for (const Vertex& v : cut.source_side) side.push_back(vertex_name(v));
    Json j{{"source_side", std::move(side)}};
    j["value"] = value ? rational_to_json(*value) : Json(nullptr);
    return j;
}

Json verify_report_to_json(const VerificationReport& report) {
    return Json{{"schema", kVerifySchema},
                {"params", params_to_json(report.params)},
                {"point", point_to_json(report.point)},
                {"closed_form", rational_to_json(report.closed_form)},
                {"canonical_min_cut", rational_to_json(report.canonical_min_cut)},
                {"canonical_matches", report.canonical_matches},
                {"trials", report.trials},
                {"seed", report.seed},
                {"min_random_cut", rational_to_json(report.min_random_cut)},
                {"random_at_or_above", report.random_at_or_above},
                {"pass", report.pass},
                {"note", report.note}};
}

Json make_output_record(const std::string& command, Json inputs, Json results) {
    return Json{{"schema", kOutputSchema},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"results", std::move(results)},
                {"provenance", kArtifactVersion}};
}

}  // namespace qregen
