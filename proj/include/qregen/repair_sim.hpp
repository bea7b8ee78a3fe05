#pragma once

// Discrete-event simulation of a storage cluster at a fixed operating
// point: scripted failures and repairs, symbolic resource accounting, and
// retrieval checks via flow-graph min cuts. The simulator moves no payload
// bytes; the verifiable objects are the ledger and cut arithmetic.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qregen/flow_graph.hpp"
#include "qregen/params.hpp"
#include "qregen/rational.hpp"

namespace qregen {

// Cumulative resource usage. A classical repair sends d*beta dits; a
// quantum repair sends d*beta qudits and consumes the d*beta pre-shared
// entangled qudits of the helper state. Entanglement is charged per repair;
// bulk pre-distribution is not modeled.
struct ResourceLedger {
    Rational dits_stored;
    Rational classical_dits_sent;
    Rational qudits_sent;
    Rational entangled_qudits_consumed;
    int repairs_completed = 0;

    friend bool operator==(const ResourceLedger&, const ResourceLedger&) = default;
};

struct FailEvent {
    int node_id;
};

// Repairs the pending failed node. node_id names the newcomer, which must
// match the failed node; an empty helper list asks for a seeded uniform
// draw of d survivors.
struct RepairEvent {
    int node_id;
    std::vector<int> helper_ids;
};

// Verifies the file is recoverable from k-subsets of the active nodes.
// Without a budget every subset is checked (the count must stay within the
// enumeration cap); with one, that many seeded random subsets are drawn.
struct CheckRetrievalEvent {
    std::optional<int> budget;
};

using Event = std::variant<FailEvent, RepairEvent, CheckRetrievalEvent>;
using EvolutionScript = std::vector<Event>;

// Raised when a cluster is opened at an operating point whose capacity
// falls short of the file size; carries the exact shortfall.
class InfeasiblePointError : public std::invalid_argument {
public:
    InfeasiblePointError(const std::string& what, Rational shortfall)
        : std::invalid_argument(what), shortfall_(std::move(shortfall)) {}

    const Rational& shortfall() const { return shortfall_; }

private:
    Rational shortfall_;
};

struct RetrievalReport {
    int checked_subsets = 0;
    std::vector<std::vector<int>> failing_subsets;  // k-subsets with min cut < B
    bool pass = false;
};

struct StepResult {
    std::optional<RetrievalReport> retrieval;
};

class Cluster {
public:
    // Rejects infeasible operating points with a diagnostic carrying the
    // capacity shortfall.
    Cluster(const SystemParams& params, const OperatingPoint& point);

    const SystemParams& params() const { return params_; }
    const OperatingPoint& point() const { return point_; }
    const ResourceLedger& ledger() const { return ledger_; }
    const FlowGraph& graph() const { return graph_; }

    // True between a Fail and its Repair. Retrieval checks are refused in
    // this transient: the retrieval property is defined on the repaired
    // system.
    bool degraded() const { return pending_failure_.has_value(); }

    std::vector<int> active_node_ids() const { return graph_.active_node_ids(); }

    // Applies one event; rng feeds random helper and subset choices only.
    StepResult step(const Event& event, std::mt19937_64& rng);

    RetrievalReport check_retrieval(std::optional<int> budget, std::mt19937_64& rng,
                                    long long subset_cap = 20000) const;

    static constexpr const char* kAccountingNote =
        "entanglement is charged per repair (d*beta entangled qudits each); "
        "bulk pre-distribution across repairs is not modeled";

private:
    SystemParams params_;
    OperatingPoint point_;
    FlowGraph graph_;
    ResourceLedger ledger_;
    std::optional<int> pending_failure_;
};

// Retrieval check against an arbitrary graph state: for each selected
// k-subset of active nodes, attach a DC in a copy and compare the min cut
// with file_size, exactly. Budget = nullopt checks every subset (count must
// stay within subset_cap); otherwise that many seeded random subsets.
RetrievalReport check_retrieval(const FlowGraph& graph, const Rational& file_size,
                                std::optional<int> budget, std::mt19937_64& rng,
                                long long subset_cap = 20000);

struct LogEntry {
    Event event;
    ResourceLedger ledger;  // snapshot after the event
    std::optional<RetrievalReport> retrieval;
};

struct SimulationLog {
    SystemParams params;
    OperatingPoint point;
    std::uint64_t seed = 0;
    std::vector<LogEntry> entries;
    ResourceLedger final_ledger;
    bool all_retrievals_passed = true;
    std::string accounting_note;  // Cluster::kAccountingNote
};

// Deterministic replay: identical (script, seed) pairs produce identical
// logs.
SimulationLog run_script(const SystemParams& params, const OperatingPoint& point,
                         const EvolutionScript& script, std::uint64_t seed);

// The fail/repair sequence of the canonical worst-case evolution: nodes
// 1..k fail in order, each newcomer helping repair the later ones.
EvolutionScript worst_case_script(const SystemParams& params);

}  // namespace qregen
