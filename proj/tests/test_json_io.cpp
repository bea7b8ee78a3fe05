#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qregen/bounds.hpp"
#include "qregen/json_io.hpp"

using namespace qregen;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

SimulationConfig small_config() {
    SystemParams params(4, 2, 3, r(1));
    RegenPoint mbr = mbr_point(params);
    EvolutionScript script = {FailEvent{1}, RepairEvent{1, {2, 3, 4}},
                              CheckRetrievalEvent{std::nullopt}};
    return SimulationConfig{params, {mbr.alpha, mbr.per_helper, Mode::Classical}, script};
}

}  // namespace

TEST_CASE("rationals serialize as exact string plus convenience decimal") {
    Json j = rational_to_json(r(7, 22));
    CHECK(j.at("rational") == "7/22");
    CHECK(std::abs(j.at("decimal").get<double>() - 7.0 / 22.0) < 1e-12);
    CHECK(rational_from_json(j, "x") == r(7, 22));

    // Accepted input spellings.
    CHECK(rational_from_json(Json("3/4"), "x") == r(3, 4));
    CHECK(rational_from_json(Json("0.25"), "x") == r(1, 4));
    CHECK(rational_from_json(Json(-5), "x") == r(-5));

    // Binary floats are not exact and are refused with the field path.
    CHECK_THROWS_WITH_AS(rational_from_json(Json(0.5), "point.beta"),
                         doctest::Contains("point.beta"), std::runtime_error);
    CHECK_THROWS_WITH_AS(rational_from_json(Json("1/0"), "x"), doctest::Contains("x"),
                         std::runtime_error);
    CHECK_THROWS_AS(rational_from_json(Json("nonsense"), "x"), std::runtime_error);
    CHECK_THROWS_AS(rational_from_json(Json(true), "x"), std::runtime_error);

    Json wrapped = Json{{"rational", "9/8"}};
    CHECK(rational_from_json(wrapped, "x") == r(9, 8));
}

TEST_CASE("params round-trip and propagate domain validation") {
    SystemParams params(15, 10, 14, r(1));
    Json j = params_to_json(params);
    CHECK(j.at("n") == 15);
    CHECK(j.at("k") == 10);
    CHECK(j.at("d") == 14);
    SystemParams back = params_from_json(j);
    CHECK(back == params);

    Json bad = j;
    bad["k"] = 20;  // k > n: rejected by the domain type, not the parser
    CHECK_THROWS_AS(params_from_json(bad), std::invalid_argument);

    Json missing = Json{{"n", 4}, {"k", 2}, {"d", 3}};
    CHECK_THROWS_WITH_AS(params_from_json(missing, "config.params"),
                         doctest::Contains("config.params"), std::runtime_error);

    Json wrong_type = j;
    wrong_type["d"] = "three";
    CHECK_THROWS_WITH_AS(params_from_json(wrong_type, "params"), doctest::Contains("params.d"),
                         std::runtime_error);
}

TEST_CASE("operating points round-trip with their mode") {
    OperatingPoint point(r(1, 4), r(1, 28), Mode::Quantum);
    Json j = point_to_json(point);
    CHECK(j.at("mode") == "quantum");
    CHECK(point_from_json(j) == point);

    Json classical = j;
    classical["mode"] = "classical";
    CHECK(point_from_json(classical).mode == Mode::Classical);

    Json bad_mode = j;
    bad_mode["mode"] = "hybrid";
    CHECK_THROWS_WITH_AS(point_from_json(bad_mode), doctest::Contains("point.mode"),
                         std::runtime_error);
}

TEST_CASE("events round-trip through their tagged representation") {
    Event fail = FailEvent{3};
    Json jf = event_to_json(fail);
    CHECK(jf.at("type") == "fail");
    CHECK(jf.at("node") == 3);
    CHECK(std::holds_alternative<FailEvent>(event_from_json(jf, "e")));
    CHECK(std::get<FailEvent>(event_from_json(jf, "e")).node_id == 3);

    Event repair = RepairEvent{3, {1, 2, 4}};
    Json jr = event_to_json(repair);
    RepairEvent back = std::get<RepairEvent>(event_from_json(jr, "e"));
    CHECK(back.node_id == 3);
    CHECK(back.helper_ids == std::vector<int>{1, 2, 4});

    // Omitted or null helpers mean "draw d survivors at random".
    Json minimal = Json{{"type", "repair"}, {"node", 5}};
    CHECK(std::get<RepairEvent>(event_from_json(minimal, "e")).helper_ids.empty());
    minimal["helpers"] = nullptr;
    CHECK(std::get<RepairEvent>(event_from_json(minimal, "e")).helper_ids.empty());

    Event check = CheckRetrievalEvent{40};
    Json jc = event_to_json(check);
    CHECK(jc.at("budget") == 40);
    CHECK(*std::get<CheckRetrievalEvent>(event_from_json(jc, "e")).budget == 40);

    Json exhaustive = Json{{"type", "check_retrieval"}, {"budget", nullptr}};
    CHECK_FALSE(std::get<CheckRetrievalEvent>(event_from_json(exhaustive, "e")).budget);

    CHECK_THROWS_WITH_AS(event_from_json(Json{{"type", "explode"}}, "script[2]"),
                         doctest::Contains("unknown event type"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        event_from_json(Json{{"type", "repair"}, {"node", 1}, {"helpers", Json::array({1, "x"})}},
                        "script[0]"),
        doctest::Contains("script[0].helpers[1]"), std::runtime_error);
}

TEST_CASE("configs round-trip and enforce their schema tag") {
    SimulationConfig config = small_config();
    Json j = config_to_json(config);
    CHECK(j.at("schema") == kConfigSchema);

    SimulationConfig back = config_from_json(j);
    CHECK(back.params == config.params);
    CHECK(back.point == config.point);
    CHECK(back.script.size() == config.script.size());

    Json wrong_schema = j;
    wrong_schema["schema"] = "qregen-config/0";
    CHECK_THROWS_WITH_AS(config_from_json(wrong_schema), doctest::Contains("config.schema"),
                         std::runtime_error);

    Json no_script = j;
    no_script.erase("script");
    CHECK_THROWS_WITH_AS(config_from_json(no_script), doctest::Contains("script"),
                         std::runtime_error);

    Json script_not_array = j;
    script_not_array["script"] = "run";
    CHECK_THROWS_AS(config_from_json(script_not_array), std::runtime_error);
}

TEST_CASE("simulation logs carry exact ledgers and the accounting note") {
    SimulationConfig config = small_config();
    SimulationLog log = run_script(config.params, config.point, config.script, 42);
    Json j = log_to_json(log);

    CHECK(j.at("schema") == kLogSchema);
    CHECK(j.at("seed") == 42);
    CHECK(j.at("entries").size() == 3);
    CHECK(j.at("all_retrievals_passed") == true);
    CHECK(j.at("accounting_note").get<std::string>().find("per repair") != std::string::npos);

    // Entry 1 is the repair: ledger snapshot shows d*beta = 3/5 sent.
    const Json& repair_entry = j.at("entries")[1];
    CHECK(repair_entry.at("event").at("type") == "repair");
    CHECK(repair_entry.at("ledger").at("classical_dits_sent").at("rational") == "3/5");
    CHECK(repair_entry.at("retrieval").is_null());

    const Json& check_entry = j.at("entries")[2];
    CHECK(check_entry.at("retrieval").at("pass") == true);
    CHECK(check_entry.at("retrieval").at("checked_subsets") == 6);

    CHECK(j.at("final_ledger").at("repairs_completed") == 1);
    CHECK(j.at("final_ledger").at("dits_stored").at("rational") == "12/5");  // 4 * 3/5
}

TEST_CASE("graph dumps list instances, capacities, rounds, and the DC") {
    SystemParams params(4, 2, 3, r(1));
    FlowGraph graph = build_initial(params, r(3), Mode::Classical);
    graph = apply_repair(graph, 1, {2, 3, 4}, r(1));
    graph = attach_dc(graph, {1, 2});

    Json j = graph_to_json(graph);
    CHECK(j.at("schema") == kGraphSchema);
    CHECK(j.at("mode") == "classical");
    CHECK(j.at("alpha").at("rational") == "3");
    CHECK(j.at("instances").size() == 5);  // four originals plus the newcomer

    // The failed original is inactive; its replacement is active.
    bool saw_failed = false, saw_newcomer = false;
    for (const Json& inst : j.at("instances")) {
        if (inst.at("node_id") == 1 && inst.at("generation") == 0) {
            CHECK(inst.at("active") == false);
            saw_failed = true;
        }
        if (inst.at("node_id") == 1 && inst.at("generation") == 1) {
            CHECK(inst.at("active") == true);
            saw_newcomer = true;
        }
    }
    CHECK(saw_failed);
    CHECK(saw_newcomer);

    CHECK(j.at("rounds").size() == 1);
    CHECK(j.at("rounds")[0].at("helpers").size() == 3);
    CHECK(j.at("rounds")[0].at("beta").at("rational") == "1");
    CHECK(j.at("dc") == Json::array({1, 2}));

    // Edge list covers source feeds, storage edges, repair edges, DC taps:
    // 4 + 5 + 3 + 2.
    CHECK(j.at("edges").size() == 14);
    int inf_edges = 0;
    for (const Json& e : j.at("edges"))
        if (e.at("capacity") == Json("inf")) ++inf_edges;
    CHECK(inf_edges == 6);

    // Without a DC the dump records null.
    Json bare = graph_to_json(build_initial(params, r(3), Mode::Classical));
    CHECK(bare.at("dc").is_null());
}

TEST_CASE("verification reports serialize every audit field") {
    SystemParams params(4, 2, 3, r(1));
    RegenPoint mbr = mbr_point(params);
    VerificationReport report =
        verify_bound(params, {mbr.alpha, mbr.per_helper, Mode::Classical}, 5, 7);
    Json j = verify_report_to_json(report);
    CHECK(j.at("schema") == kVerifySchema);
    CHECK(j.at("pass") == true);
    CHECK(j.at("canonical_matches") == true);
    CHECK(j.at("trials") == 5);
    CHECK(j.at("seed") == 7);
    CHECK(j.at("closed_form").at("rational") == report.closed_form.str());
    CHECK_FALSE(j.at("note").get<std::string>().empty());
}

TEST_CASE("output records use the standard envelope") {
    Json record = make_output_record("points", Json{{"n", 8}}, Json{{"ok", true}});
    CHECK(record.at("schema") == kOutputSchema);
    CHECK(record.at("command") == "points");
    CHECK(record.at("inputs").at("n") == 8);
    CHECK(record.at("results").at("ok") == true);
    CHECK(record.at("provenance") == kArtifactVersion);
}

TEST_CASE("cuts serialize vertex names and optional values") {
    SystemParams params(4, 2, 3, r(1));
    FlowGraph graph = attach_dc(build_initial(params, r(3), Mode::Classical), {1, 2});
    MinCutResult cut = min_cut(graph);
    Json j = cut_to_json(cut.min_cut, cut.value);
    CHECK(j.at("value").at("rational") == cut.value.str());
    CHECK(!j.at("source_side").empty());
    bool names_source = false;
    for (const Json& name : j.at("source_side"))
        if (name == Json("source")) names_source = true;
    CHECK(names_source);

    Json unbounded = cut_to_json(Cut{{}}, std::nullopt);
    CHECK(unbounded.at("value").is_null());
}
