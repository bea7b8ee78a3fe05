#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qregen/bounds.hpp"
#include "qregen/flow_graph.hpp"

using namespace qregen;

namespace {

SystemParams p423(Rational B = Rational(6)) { return SystemParams(4, 2, 3, B); }

// The single-repair graph behind the worked (4,2,3) cut example: node 1
// fails, {2,3,4} repair it at beta, the collector reads the newcomer and
// node 2.
FlowGraph example_graph(const Rational& alpha, const Rational& beta, Mode mode) {
    FlowGraph g = build_initial(p423(), alpha, mode);
    g = apply_repair(g, 1, {2, 3, 4}, beta);
    return attach_dc(g, {1, 2});
}

Vertex xin(int node, int gen) { return Vertex{VertexKind::XIn, node, gen}; }
Vertex xout(int node, int gen) { return Vertex{VertexKind::XOut, node, gen}; }

}  // namespace

TEST_CASE("build_initial lays out n node pairs and nothing else") {
    FlowGraph g = build_initial(p423(), Rational(3));
    CHECK(g.instances().size() == 4);
    CHECK(g.rounds().empty());
    CHECK_FALSE(g.has_dc());
    CHECK(g.alpha() == Rational(3));
    CHECK(g.mode() == Mode::Classical);
    CHECK(g.vertices().size() == 9);  // source + 4 in/out pairs, no DC yet
    CHECK(g.active_node_ids() == std::vector<int>{1, 2, 3, 4});
    for (const NodeInstance& inst : g.instances()) CHECK(inst.generation == 0);

    FlowGraph q = build_initial(SystemParams(8, 4, 7, Rational(1)), Rational(1, 4),
                                Mode::Quantum);
    CHECK(q.instances().size() == 8);
    CHECK(q.alpha() == Rational(1, 4));
    CHECK(q.mode() == Mode::Quantum);

    CHECK_THROWS_AS(build_initial(p423(), Rational(-1)), std::invalid_argument);
}

TEST_CASE("apply_repair replaces the failed node with a newcomer") {
    FlowGraph g = build_initial(p423(), Rational(3));
    FlowGraph r = apply_repair(g, 1, {2, 3, 4}, Rational(1));

    CHECK(r.instances().size() == 5);
    REQUIRE(r.rounds().size() == 1);
    const RepairRound& round = r.rounds()[0];
    CHECK(round.round_index == 1);
    CHECK(round.helpers.size() == 3);
    CHECK(round.beta == Rational(1));
    CHECK(r.instances()[round.newcomer] == NodeInstance{1, 1});
    CHECK(r.active_node_ids() == std::vector<int>{1, 2, 3, 4});
    CHECK_FALSE(r.is_active(0));  // the original node 1 instance
    CHECK(r.is_active(round.newcomer));

    // The original graph value is untouched.
    CHECK(g.instances().size() == 4);
    CHECK(g.is_active(0));
}

TEST_CASE("apply_repair validates its inputs") {
    FlowGraph g = build_initial(p423(), Rational(3));
    CHECK_THROWS_AS(apply_repair(g, 1, {2, 3}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_repair(g, 1, {2, 3, 4, 2}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_repair(g, 1, {2, 3, 3}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_repair(g, 1, {1, 2, 3}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_repair(g, 9, {2, 3, 4}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_repair(g, 1, {2, 3, 9}, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_repair(g, 1, {2, 3, 4}, Rational(-1)), std::invalid_argument);

    // Cross-generation helpers are legal: the second round may use the
    // first newcomer.
    FlowGraph r1 = apply_repair(g, 1, {2, 3, 4}, Rational(1));
    FlowGraph r2 = apply_repair(r1, 2, {1, 3, 4}, Rational(1));
    REQUIRE(r2.rounds().size() == 2);
    CHECK(r2.instances()[r2.rounds()[1].helpers[0]] == NodeInstance{1, 1});
}

TEST_CASE("attach_dc wires the collector to k active nodes") {
    FlowGraph g = build_initial(p423(), Rational(3));
    FlowGraph dc = attach_dc(g, {1, 2});
    CHECK(dc.has_dc());
    CHECK(dc.dc_instances().size() == 2);
    CHECK(dc.vertices().size() == 10);  // Fig-style count: source + 8 + DC

    CHECK_THROWS_AS(attach_dc(dc, {3, 4}), std::invalid_argument);          // already attached
    CHECK_THROWS_AS(attach_dc(g, {1, 2, 3}), std::invalid_argument);        // wrong count
    CHECK_THROWS_AS(attach_dc(g, {1, 1}), std::invalid_argument);           // duplicate
    CHECK_THROWS_AS(attach_dc(g, {1, 9}), std::invalid_argument);           // unknown
}

TEST_CASE("explicit cut values reproduce the worked 5 and 6") {
    FlowGraph classical = example_graph(Rational(3), Rational(1), Mode::Classical);

    // Node 2's storage edge crosses; helpers 3 and 4 cross into the
    // newcomer; helper 2 sits on the sink side.
    Cut cut;
    cut.source_side = {Vertex{VertexKind::Source, 0, 0},
                       xin(1, 0), xout(1, 0),
                       xin(2, 0),
                       xin(3, 0), xout(3, 0),
                       xin(4, 0), xout(4, 0)};
    auto v = cut_value(classical, cut);
    REQUIRE(v.has_value());
    CHECK(*v == Rational(5));  // 3 + 2*1

    // Same bipartition, quantum valuation: the crossing pair is worth
    // min{2*2, 3} = 3 on top of the storage edge.
    auto q = cut_value(classical, cut, Mode::Quantum);
    REQUIRE(q.has_value());
    CHECK(*q == Rational(6));  // 3 + 3

    // Valuing through a quantum-mode graph gives the same number.
    FlowGraph quantum = classical.with_mode(Mode::Quantum);
    auto q2 = cut_value(quantum, cut);
    REQUIRE(q2.has_value());
    CHECK(*q2 == Rational(6));
}

TEST_CASE("cuts crossing infinite edges report no finite value") {
    FlowGraph g = example_graph(Rational(3), Rational(1), Mode::Classical);

    // DC-attached x_out on the source side: infinite collector edge crosses.
    Cut dc_cross;
    dc_cross.source_side = {Vertex{VertexKind::Source, 0, 0},
                            xin(1, 0), xout(1, 0),
                            xin(2, 0), xout(2, 0),
                            xin(3, 0), xout(3, 0),
                            xin(4, 0), xout(4, 0)};
    CHECK_FALSE(cut_value(g, dc_cross).has_value());

    // Initial x_in on the sink side: infinite source edge crosses.
    Cut src_cross;
    src_cross.source_side = {Vertex{VertexKind::Source, 0, 0},
                             xin(1, 0), xout(1, 0),
                             xin(2, 0),
                             xin(3, 0), xout(3, 0),
                             xout(4, 0)};
    CHECK_FALSE(cut_value(g, src_cross).has_value());
}

TEST_CASE("cut_value rejects malformed partitions") {
    FlowGraph g = example_graph(Rational(3), Rational(1), Mode::Classical);

    Cut no_source;
    no_source.source_side = {xin(1, 0)};
    CHECK_THROWS_AS(cut_value(g, no_source), std::invalid_argument);

    Cut has_dc;
    has_dc.source_side = {Vertex{VertexKind::Source, 0, 0},
                          Vertex{VertexKind::DataCollector, 0, 0}};
    CHECK_THROWS_AS(cut_value(g, has_dc), std::invalid_argument);

    Cut unknown;
    unknown.source_side = {Vertex{VertexKind::Source, 0, 0}, xin(7, 3)};
    CHECK_THROWS_AS(cut_value(g, unknown), std::invalid_argument);
}

TEST_CASE("min_cut reproduces the worked example in both modes") {
    FlowGraph classical = example_graph(Rational(3), Rational(1), Mode::Classical);
    MinCutResult mc = min_cut(classical);
    CHECK(mc.value == Rational(5));
    auto certified = cut_value(classical, mc.min_cut);
    REQUIRE(certified.has_value());
    CHECK(*certified == Rational(5));

    FlowGraph quantum = example_graph(Rational(3), Rational(1), Mode::Quantum);
    MinCutResult mq = min_cut(quantum);
    CHECK(mq.value == Rational(6));
    auto qcert = cut_value(quantum, mq.min_cut);
    REQUIRE(qcert.has_value());
    CHECK(*qcert == Rational(6));

    CHECK_THROWS_AS(min_cut(build_initial(p423(), Rational(3))), std::invalid_argument);
}

TEST_CASE("fresh collector on initial nodes cuts at k*alpha") {
    for (Mode m : {Mode::Classical, Mode::Quantum}) {
        FlowGraph g = build_initial(SystemParams(4, 2, 2, Rational(1)), Rational(7, 3), m);
        MinCutResult mc = min_cut(attach_dc(g, {2, 4}));
        CHECK(mc.value == Rational(14, 3));
    }
}

TEST_CASE("min_cut_dual values both modes on one enumeration") {
    FlowGraph g = example_graph(Rational(3), Rational(1), Mode::Classical);
    DualCutReport dual = min_cut_dual(g);
    CHECK(dual.classical.value == Rational(5));
    CHECK(dual.quantum.value == Rational(6));
    CHECK(dual.per_cut_dominance);
}

TEST_CASE("per-cut quantum dominance over every bipartition") {
    std::vector<FlowGraph> graphs;
    graphs.push_back(example_graph(Rational(3), Rational(1), Mode::Classical));
    {
        FlowGraph g = build_initial(SystemParams(5, 3, 3, Rational(1)), Rational(2));
        g = apply_repair(g, 2, {1, 3, 4}, Rational(1, 2));
        g = apply_repair(g, 5, {2, 3, 4}, Rational(1, 2));
        graphs.push_back(attach_dc(g, {2, 4, 5}));
    }
    for (const FlowGraph& g : graphs) {
        int cuts = 0;
        for_each_cut(g, [&](const Cut& cut) {
            ++cuts;
            auto c = cut_value(g, cut, Mode::Classical);
            auto q = cut_value(g, cut, Mode::Quantum);
            REQUIRE(c.has_value());
            REQUIRE(q.has_value());
            CHECK(*q >= *c);
        });
        CHECK(cuts > 0);
    }
}

TEST_CASE("canonical worst case hits the closed form exactly") {
    auto [g1, v1] = canonical_worst_case(p423(), Rational(3), Rational(1), Mode::Classical);
    CHECK(v1 == Rational(5));
    CHECK(g1.rounds().size() == 2);

    auto [g2, v2] = canonical_worst_case(p423(), Rational(3), Rational(1), Mode::Quantum);
    CHECK(v2 == Rational(6));

    // Large alpha: the storage terms never bind: 3b + 2b = 5.
    auto [g3, v3] = canonical_worst_case(SystemParams(5, 2, 3, Rational(1)), Rational(100),
                                         Rational(1), Mode::Classical);
    CHECK(v3 == Rational(5));

    // (8,4,7) QMSR: feasibility with equality.
    auto [g4, v4] = canonical_worst_case(SystemParams(8, 4, 7, Rational(1)), Rational(1, 4),
                                         Rational(1, 28), Mode::Quantum);
    CHECK(v4 == Rational(1));
}

TEST_CASE("canonical tightness across the desk-scale grid") {
    std::vector<Rational> alphas{Rational(1), Rational(2), Rational(3), Rational(4)};
    std::vector<Rational> betas{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)};
    for (int n = 3; n <= 5; ++n)
        for (int k = 1; k < n; ++k)
            for (int d = k; d < n; ++d) {
                SystemParams params(n, k, d, Rational(1));
                for (const Rational& a : alphas)
                    for (const Rational& b : betas)
                        for (Mode m : {Mode::Classical, Mode::Quantum}) {
                            auto [graph, value] = canonical_worst_case(params, a, b, m);
                            OperatingPoint pt(a, b, m);
                            CHECK(value == capacity(params, pt));
                        }
            }
}

TEST_CASE("repairing after attachment never lowers the cut") {
    SystemParams params(5, 2, 3, Rational(1));
    for (Mode m : {Mode::Classical, Mode::Quantum}) {
        FlowGraph g = build_initial(params, Rational(2), m);
        g = apply_repair(g, 1, {2, 3, 4}, Rational(1, 2));
        g = attach_dc(g, {1, 3});
        Rational before = min_cut(g).value;
        FlowGraph more = apply_repair(g, 5, {1, 2, 3}, Rational(1, 2));
        Rational after = min_cut(more).value;
        CHECK(after >= before);
    }
}

TEST_CASE("verify_bound passes on the worked example and replays by seed") {
    SystemParams params = p423(Rational(1));
    OperatingPoint quantum(Rational(3), Rational(1), Mode::Quantum);
    VerificationReport rep = verify_bound(params, quantum, 100, 11);
    CHECK(rep.pass);
    CHECK(rep.canonical_matches);
    CHECK(rep.closed_form == Rational(6));
    CHECK(rep.canonical_min_cut == Rational(6));
    CHECK(rep.random_at_or_above);
    CHECK(rep.min_random_cut >= rep.closed_form);
    CHECK(rep.trials == 100);
    CHECK_FALSE(rep.note.empty());

    VerificationReport again = verify_bound(params, quantum, 100, 11);
    CHECK(again.min_random_cut == rep.min_random_cut);

    OperatingPoint classical(Rational(3), Rational(1), Mode::Classical);
    VerificationReport rc = verify_bound(params, classical, 50, 3);
    CHECK(rc.pass);
    CHECK(rc.closed_form == Rational(5));
}

TEST_CASE("verify_bound refuses graphs beyond the enumeration cap") {
    SystemParams params(20, 10, 15, Rational(1));
    OperatingPoint pt(Rational(1), Rational(1), Mode::Classical);
    CHECK_THROWS_AS(verify_bound(params, pt, 5, 1), std::invalid_argument);
    // A raised cap is honored.
    SystemParams small(5, 2, 3, Rational(1));
    CHECK_NOTHROW(verify_bound(small, pt, 5, 1, 24));
    CHECK_THROWS_AS(verify_bound(small, pt, 5, 1, 10), std::invalid_argument);
}

TEST_CASE("with_mode flips valuation only") {
    FlowGraph g = example_graph(Rational(3), Rational(1), Mode::Classical);
    FlowGraph q = g.with_mode(Mode::Quantum);
    CHECK(q.mode() == Mode::Quantum);
    CHECK(q.instances().size() == g.instances().size());
    CHECK(min_cut(g).value == Rational(5));
    CHECK(min_cut(q).value == Rational(6));
}
