#pragma once

// Time-expanded information flow graphs for failure/repair evolutions.
//
// A graph holds one vertex pair (x_in, x_out) per node instance, joined by a
// storage edge of capacity alpha. The source feeds the initial instances
// through infinite edges; each repair round adds a newcomer pair fed by d
// helper links of bandwidth beta; a data collector attaches to any k active
// instances through infinite edges.
//
// Cuts are valued two ways. Classical: plain sum of crossing edge
// capacities. Quantum: a repair round whose newcomer x_in sits on the sink
// side contributes min{2 c beta, d beta} for c crossing helper links, i.e.
// the superdense-coding payoff capped by the Holevo limit of the round's
// d beta transmitted qudits. The helper links of one round are valued as a
// bundle; entanglement is not shared across rounds.
//
// Graphs are values: the builder functions return modified copies, and
// nothing here mutates shared state.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qregen/params.hpp"
#include "qregen/rational.hpp"

namespace qregen {

enum class VertexKind { Source, XIn, XOut, DataCollector };

// Node instances are identified by (node_id, generation): generation 0 for
// the initial nodes, r for the newcomer created by repair round r.
struct Vertex {
    VertexKind kind;
    int node_id = 0;
    int generation = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct NodeInstance {
    int node_id;
    int generation;

    friend bool operator==(const NodeInstance&, const NodeInstance&) = default;
};

struct RepairRound {
    int round_index;             // 1-based
    int newcomer;                // instance index
    std::vector<int> helpers;    // instance indices, size d
    Rational beta;
};

class FlowGraph {
public:
    const SystemParams& params() const { return params_; }
    const Rational& alpha() const { return alpha_; }
    Mode mode() const { return mode_; }
    const std::vector<NodeInstance>& instances() const { return instances_; }
    const std::vector<RepairRound>& rounds() const { return rounds_; }
    const std::vector<int>& dc_instances() const { return dc_instances_; }
    bool has_dc() const { return !dc_instances_.empty(); }

    bool is_active(int instance) const { return active_[instance]; }

    // Instance index currently active for a node id, or -1.
    int active_instance(int node_id) const;

    // Node ids with a live instance (always n of them).
    std::vector<int> active_node_ids() const;

    // Same graph valued under a different cut model.
    FlowGraph with_mode(Mode m) const;

    // All vertices, data collector included when attached.
    std::vector<Vertex> vertices() const;

    friend FlowGraph build_initial(const SystemParams&, const Rational&, Mode);
    friend FlowGraph apply_repair(const FlowGraph&, int, const std::vector<int>&,
                                  const Rational&);
    friend FlowGraph attach_dc(const FlowGraph&, const std::vector<int>&);

private:
    SystemParams params_;
    Rational alpha_;
    Mode mode_;
    std::vector<NodeInstance> instances_;  // initial nodes first, then newcomers
    std::vector<bool> active_;
    std::vector<RepairRound> rounds_;
    std::vector<int> dc_instances_;

    explicit FlowGraph(const SystemParams& p, Rational alpha, Mode mode);
};

// n initial node pairs with storage capacity alpha; no repairs, no collector.
FlowGraph build_initial(const SystemParams& params, const Rational& alpha,
                        Mode mode = Mode::Classical);

// Fails `failed_node_id` and rebuilds it from d distinct active helpers,
// adding a repair round with per-link bandwidth beta.
FlowGraph apply_repair(const FlowGraph& graph, int failed_node_id,
                       const std::vector<int>& helper_ids, const Rational& beta);

// Attaches the data collector to k active nodes.
FlowGraph attach_dc(const FlowGraph& graph, const std::vector<int>& node_ids);

// A bipartition given by the vertex set on the source side; everything not
// listed is on the sink side. The source must be listed, the collector not.
struct Cut {
    std::vector<Vertex> source_side;
};

// Value of the cut under the graph's mode; nullopt means an infinite edge
// crosses. Throws std::invalid_argument on a malformed partition.
std::optional<Rational> cut_value(const FlowGraph& graph, const Cut& cut);

// As above with an explicit valuation mode (the graph's own mode ignored).
std::optional<Rational> cut_value(const FlowGraph& graph, const Cut& cut, Mode mode);

struct MinCutResult {
    Rational value;
    Cut min_cut;
};

// Minimum source/collector cut under the graph's mode. Classical graphs are
// valued both by integer max-flow and by exhaustive bipartition enumeration,
// which must agree (std::logic_error otherwise). Quantum graphs use
// enumeration only: the round bundles make the cut function non-additive,
// so max-flow does not apply.
MinCutResult min_cut(const FlowGraph& graph);

// One enumeration pass valuing every cut under both models at once.
// per_cut_dominance records whether quantum >= classical held cut by cut.
struct DualCutReport {
    MinCutResult classical;
    MinCutResult quantum;
    bool per_cut_dominance;
};

DualCutReport min_cut_dual(const FlowGraph& graph);

// The tight evolution behind the cut-set sum: k nodes fail in sequence, each
// newcomer helping repair the later ones, and the collector reads the k
// newcomers. Returns the graph and its min cut, which equals the closed-form
// capacity of bounds.hpp exactly.
std::pair<FlowGraph, Rational> canonical_worst_case(const SystemParams& params,
                                                    const Rational& alpha, const Rational& beta,
                                                    Mode mode);

struct VerificationReport {
    SystemParams params;
    OperatingPoint point;
    Rational closed_form;
    Rational canonical_min_cut;
    bool canonical_matches;
    int trials;
    std::uint64_t seed;
    Rational min_random_cut;   // min over random evolutions; closed_form when trials == 0
    bool random_at_or_above;
    bool pass;
    std::string note;
};

// Checks the closed-form bound against the graph oracle: the canonical
// evolution must match it exactly, and `trials` seeded random evolutions
// (random failure order, helper sets and collector choice, at most k repair
// rounds) must never cut below it. Throws std::invalid_argument when the
// graphs would exceed `vertex_cap` vertices.
VerificationReport verify_bound(const SystemParams& params, const OperatingPoint& point,
                                int trials, std::uint64_t seed, int vertex_cap = 24);

// Enumerates every finite bipartition of the graph (infinite-edge
// constraints pre-applied) and hands each to `fn`. Used by tests that need
// per-cut properties rather than just the minimum.
void for_each_cut(const FlowGraph& graph, const std::function<void(const Cut&)>& fn);

}  // namespace qregen
