#include "qregen/flow_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

#include "qregen/bounds.hpp"

namespace qregen {

namespace {

std::string vertex_str(const Vertex& v) {
    switch (v.kind) {
        case VertexKind::Source: return "source";
        case VertexKind::DataCollector: return "data_collector";
        case VertexKind::XIn:
            return "x_in(" + std::to_string(v.node_id) + "," + std::to_string(v.generation) + ")";
        default:
            return "x_out(" + std::to_string(v.node_id) + "," + std::to_string(v.generation) + ")";
    }
}

// Capacities scaled to a common denominator so cut values compare as
// plain integers. value * denom = s * alpha_scaled + sum m_r * beta_scaled[r].
struct ScaledCaps {
    long long denom;
    long long alpha;
    std::vector<long long> beta;  // per round

    explicit ScaledCaps(const FlowGraph& g) {
        denom = g.alpha().den();
        for (const auto& r : g.rounds())
            denom = std::lcm(denom, r.beta.den());
        alpha = g.alpha().num() * (denom / g.alpha().den());
        for (const auto& r : g.rounds())
            beta.push_back(r.beta.num() * (denom / r.beta.den()));
    }
};

// Side assignment per instance vertex. false = source side, true = sink side.
struct SideAssignment {
    std::vector<bool> xin_sink;
    std::vector<bool> xout_sink;
};

// Crossing multipliers of a finite cut: value = storage_crossings * alpha
// + per-round link multiplier * beta. The quantum multiplier caps the
// doubled crossing count at d, and a newcomer on the source side
// contributes nothing (its inbound links never count forward).
struct CutProfile {
    long long storage_crossings = 0;
    std::vector<int> classical_links;  // c_r per round
    std::vector<int> quantum_links;    // min(2 c_r, d) or 0 per round
};

CutProfile profile_cut(const FlowGraph& g, const SideAssignment& side) {
    CutProfile p;
    const int d = g.params().d;
    for (std::size_t i = 0; i < g.instances().size(); ++i)
        if (!side.xin_sink[i] && side.xout_sink[i])
            ++p.storage_crossings;
    for (const auto& r : g.rounds()) {
        int c = 0, q = 0;
        if (side.xin_sink[r.newcomer]) {
            for (int h : r.helpers)
                if (!side.xout_sink[h])
                    ++c;
            q = std::min(2 * c, d);
        }
        p.classical_links.push_back(c);
        p.quantum_links.push_back(q);
    }
    return p;
}

long long scaled_value(const CutProfile& p, const ScaledCaps& caps, Mode mode) {
    long long v = p.storage_crossings * caps.alpha;
    const auto& links = mode == Mode::Classical ? p.classical_links : p.quantum_links;
    for (std::size_t r = 0; r < links.size(); ++r)
        v += links[r] * caps.beta[r];
    return v;
}

Rational exact_value(const FlowGraph& g, const CutProfile& p, Mode mode) {
    Rational v = Rational(p.storage_crossings) * g.alpha();
    const auto& links = mode == Mode::Classical ? p.classical_links : p.quantum_links;
    for (std::size_t r = 0; r < links.size(); ++r)
        v += Rational(links[r]) * g.rounds()[r].beta;
    return v;
}

// Vertices whose side is not pinned by an infinite edge: x_in of initial
// nodes must stay with the source, collector-attached x_out with the sink.
struct FreeSlots {
    std::vector<int> xin_free;   // instance indices
    std::vector<int> xout_free;
};

FreeSlots free_slots(const FlowGraph& g) {
    FreeSlots f;
    std::vector<bool> dc_forced(g.instances().size(), false);
    for (int i : g.dc_instances())
        dc_forced[i] = true;
    for (std::size_t i = 0; i < g.instances().size(); ++i) {
        if (g.instances()[i].generation != 0)
            f.xin_free.push_back((int)i);
        if (!dc_forced[i])
            f.xout_free.push_back((int)i);
    }
    return f;
}

SideAssignment base_assignment(const FlowGraph& g) {
    SideAssignment s;
    s.xin_sink.assign(g.instances().size(), false);
    s.xout_sink.assign(g.instances().size(), false);
    for (int i : g.dc_instances())
        s.xout_sink[i] = true;
    return s;
}

template <typename Fn>
void enumerate_assignments(const FlowGraph& g, Fn&& fn) {
    FreeSlots f = free_slots(g);
    const std::size_t nfree = f.xin_free.size() + f.xout_free.size();
    if (nfree > 28)
        throw std::invalid_argument("min_cut: graph too large to enumerate (" +
                                    std::to_string(nfree) + " free vertices)");
    SideAssignment side = base_assignment(g);
    const std::uint64_t total = 1ull << nfree;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::uint64_t m = mask;
        for (int inst : f.xin_free) {
            side.xin_sink[inst] = m & 1;
            m >>= 1;
        }
        for (int inst : f.xout_free) {
            side.xout_sink[inst] = m & 1;
            m >>= 1;
        }
        fn(side);
    }
}

Cut materialize(const FlowGraph& g, const SideAssignment& side) {
    Cut cut;
    cut.source_side.push_back({VertexKind::Source});
    for (std::size_t i = 0; i < g.instances().size(); ++i) {
        const auto& inst = g.instances()[i];
        if (!side.xin_sink[i])
            cut.source_side.push_back({VertexKind::XIn, inst.node_id, inst.generation});
        if (!side.xout_sink[i])
            cut.source_side.push_back({VertexKind::XOut, inst.node_id, inst.generation});
    }
    return cut;
}

// Dinic max-flow on int64 capacities; the classical cross-check.
class MaxFlow {
public:
    explicit MaxFlow(int n) : adj_(n) {}

    void add_edge(int from, int to, long long cap) {
        adj_[from].push_back((int)edges_.size());
        edges_.push_back({to, cap});
        adj_[to].push_back((int)edges_.size());
        edges_.push_back({from, 0});
    }

    long long run(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            iter_.assign(adj_.size(), 0);
            while (long long pushed = dfs(s, t, INT64_MAX))
                flow += pushed;
        }
        return flow;
    }

private:
    struct Edge {
        int to;
        long long cap;
    };
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_, iter_;

    bool bfs(int s, int t) {
        level_.assign(adj_.size(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int id : adj_[u]) {
                const Edge& e = edges_[id];
                if (e.cap > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[u] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    long long dfs(int u, int t, long long limit) {
        if (u == t)
            return limit;
        for (int& i = iter_[u]; i < (int)adj_[u].size(); ++i) {
            int id = adj_[u][i];
            Edge& e = edges_[id];
            if (e.cap > 0 && level_[e.to] == level_[u] + 1) {
                long long got = dfs(e.to, t, std::min(limit, e.cap));
                if (got > 0) {
                    e.cap -= got;
                    edges_[id ^ 1].cap += got;
                    return got;
                }
            }
        }
        return 0;
    }
};

long long classical_maxflow_scaled(const FlowGraph& g, const ScaledCaps& caps) {
    // Vertex layout: 0 source, 1 collector, then x_in/x_out pairs.
    const int n_inst = (int)g.instances().size();
    MaxFlow net(2 + 2 * n_inst);
    auto xin = [](int i) { return 2 + 2 * i; };
    auto xout = [](int i) { return 3 + 2 * i; };

    long long finite_total = (long long)n_inst * caps.alpha;
    for (std::size_t r = 0; r < g.rounds().size(); ++r)
        finite_total += (long long)g.params().d * caps.beta[r];
    const long long inf = finite_total + 1;

    for (int i = 0; i < n_inst; ++i) {
        if (g.instances()[i].generation == 0)
            net.add_edge(0, xin(i), inf);
        net.add_edge(xin(i), xout(i), caps.alpha);
    }
    for (const auto& r : g.rounds())
        for (int h : r.helpers)
            net.add_edge(xout(h), xin(r.newcomer), caps.beta[r.round_index - 1]);
    for (int i : g.dc_instances())
        net.add_edge(xout(i), 1, inf);
    return net.run(0, 1);
}

struct DualScan {
    long long best_classical = INT64_MAX;
    long long best_quantum = INT64_MAX;
    CutProfile argmin_classical, argmin_quantum;
    SideAssignment argmin_classical_side, argmin_quantum_side;
    bool dominance = true;
};

DualScan scan_cuts(const FlowGraph& g, const ScaledCaps& caps) {
    DualScan scan;
    enumerate_assignments(g, [&](const SideAssignment& side) {
        CutProfile p = profile_cut(g, side);
        long long c = scaled_value(p, caps, Mode::Classical);
        long long q = scaled_value(p, caps, Mode::Quantum);
        if (q < c)
            scan.dominance = false;
        if (c < scan.best_classical) {
            scan.best_classical = c;
            scan.argmin_classical = p;
            scan.argmin_classical_side = side;
        }
        if (q < scan.best_quantum) {
            scan.best_quantum = q;
            scan.argmin_quantum = p;
            scan.argmin_quantum_side = side;
        }
    });
    return scan;
}

}  // namespace

FlowGraph::FlowGraph(const SystemParams& p, Rational alpha, Mode mode)
    : params_(p), alpha_(std::move(alpha)), mode_(mode) {}

int FlowGraph::active_instance(int node_id) const {
    for (int i = (int)instances_.size() - 1; i >= 0; --i)
        if (instances_[i].node_id == node_id && active_[i])
            return i;
    return -1;
}

std::vector<int> FlowGraph::active_node_ids() const {
    std::vector<int> ids;
    for (std::size_t i = 0; i < instances_.size(); ++i)
        if (active_[i])
            ids.push_back(instances_[i].node_id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

FlowGraph FlowGraph::with_mode(Mode m) const {
    FlowGraph g = *this;
    g.mode_ = m;
    return g;
}

std::vector<Vertex> FlowGraph::vertices() const {
    std::vector<Vertex> vs;
    vs.push_back({VertexKind::Source});
    for (const auto& inst : instances_) {
        vs.push_back({VertexKind::XIn, inst.node_id, inst.generation});
        vs.push_back({VertexKind::XOut, inst.node_id, inst.generation});
    }
    if (has_dc())
        vs.push_back({VertexKind::DataCollector});
    return vs;
}

FlowGraph build_initial(const SystemParams& params, const Rational& alpha, Mode mode) {
    if (alpha.is_negative())
        throw std::invalid_argument("build_initial: alpha must be nonnegative");
    FlowGraph g(params, alpha, mode);
    for (int id = 1; id <= params.n; ++id) {
        g.instances_.push_back({id, 0});
        g.active_.push_back(true);
    }
    return g;
}

FlowGraph apply_repair(const FlowGraph& graph, int failed_node_id,
                       const std::vector<int>& helper_ids, const Rational& beta) {
    if (beta.is_negative())
        throw std::invalid_argument("apply_repair: beta must be nonnegative");
    const int d = graph.params().d;
    if ((int)helper_ids.size() != d)
        throw std::invalid_argument("apply_repair: expected " + std::to_string(d) +
                                    " helpers, got " + std::to_string(helper_ids.size()));

    FlowGraph g = graph;
    int failed_inst = g.active_instance(failed_node_id);
    if (failed_inst < 0)
        throw std::invalid_argument("apply_repair: node " + std::to_string(failed_node_id) +
                                    " is not an active node");
    g.active_[failed_inst] = false;

    RepairRound round;
    round.round_index = (int)g.rounds_.size() + 1;
    round.beta = beta;
    std::vector<int> seen;
    for (int id : helper_ids) {
        if (id == failed_node_id)
            throw std::invalid_argument("apply_repair: failed node cannot help itself");
        if (std::find(seen.begin(), seen.end(), id) != seen.end())
            throw std::invalid_argument("apply_repair: duplicate helper " + std::to_string(id));
        seen.push_back(id);
        int inst = g.active_instance(id);
        if (inst < 0)
            throw std::invalid_argument("apply_repair: helper " + std::to_string(id) +
                                        " is not an active node");
        round.helpers.push_back(inst);
    }

    g.instances_.push_back({failed_node_id, round.round_index});
    g.active_.push_back(true);
    round.newcomer = (int)g.instances_.size() - 1;
    g.rounds_.push_back(std::move(round));
    return g;
}

FlowGraph attach_dc(const FlowGraph& graph, const std::vector<int>& node_ids) {
    if (graph.has_dc())
        throw std::invalid_argument("attach_dc: data collector already attached");
    if ((int)node_ids.size() != graph.params().k)
        throw std::invalid_argument("attach_dc: expected " + std::to_string(graph.params().k) +
                                    " nodes, got " + std::to_string(node_ids.size()));
    FlowGraph g = graph;
    std::vector<int> seen;
    for (int id : node_ids) {
        if (std::find(seen.begin(), seen.end(), id) != seen.end())
            throw std::invalid_argument("attach_dc: duplicate node " + std::to_string(id));
        seen.push_back(id);
        int inst = g.active_instance(id);
        if (inst < 0)
            throw std::invalid_argument("attach_dc: node " + std::to_string(id) +
                                        " is not an active node");
        g.dc_instances_.push_back(inst);
    }
    return g;
}

std::optional<Rational> cut_value(const FlowGraph& graph, const Cut& cut) {
    return cut_value(graph, cut, graph.mode());
}

std::optional<Rational> cut_value(const FlowGraph& graph, const Cut& cut, Mode mode) {
    // Resolve the listed vertices; everything unlisted is on the sink side.
    SideAssignment side;
    side.xin_sink.assign(graph.instances().size(), true);
    side.xout_sink.assign(graph.instances().size(), true);
    bool source_listed = false;

    auto find_instance = [&](const Vertex& v) {
        for (std::size_t i = 0; i < graph.instances().size(); ++i)
            if (graph.instances()[i].node_id == v.node_id &&
                graph.instances()[i].generation == v.generation)
                return (int)i;
        throw std::invalid_argument("cut_value: unknown vertex " + vertex_str(v));
    };

    for (const Vertex& v : cut.source_side) {
        switch (v.kind) {
            case VertexKind::Source:
                source_listed = true;
                break;
            case VertexKind::DataCollector:
                throw std::invalid_argument(
                    "cut_value: data collector cannot be on the source side");
            case VertexKind::XIn:
                side.xin_sink[find_instance(v)] = false;
                break;
            case VertexKind::XOut:
                side.xout_sink[find_instance(v)] = false;
                break;
        }
    }
    if (!source_listed)
        throw std::invalid_argument("cut_value: source must be on the source side");

    // Infinite edges: source -> x_in of initial nodes, x_out -> collector.
    for (std::size_t i = 0; i < graph.instances().size(); ++i)
        if (graph.instances()[i].generation == 0 && side.xin_sink[i])
            return std::nullopt;
    for (int i : graph.dc_instances())
        if (!side.xout_sink[i])
            return std::nullopt;

    return exact_value(graph, profile_cut(graph, side), mode);
}

MinCutResult min_cut(const FlowGraph& graph) {
    if (!graph.has_dc())
        throw std::invalid_argument("min_cut: graph has no data collector");
    ScaledCaps caps(graph);
    DualScan scan = scan_cuts(graph, caps);
    if (graph.mode() == Mode::Classical) {
        long long flow = classical_maxflow_scaled(graph, caps);
        if (flow != scan.best_classical)
            throw std::logic_error("min_cut: max-flow (" + std::to_string(flow) +
                                   ") disagrees with enumeration (" +
                                   std::to_string(scan.best_classical) + ") at denom " +
                                   std::to_string(caps.denom));
        return {exact_value(graph, scan.argmin_classical, Mode::Classical),
                materialize(graph, scan.argmin_classical_side)};
    }
    return {exact_value(graph, scan.argmin_quantum, Mode::Quantum),
            materialize(graph, scan.argmin_quantum_side)};
}

DualCutReport min_cut_dual(const FlowGraph& graph) {
    if (!graph.has_dc())
        throw std::invalid_argument("min_cut_dual: graph has no data collector");
    ScaledCaps caps(graph);
    DualScan scan = scan_cuts(graph, caps);
    long long flow = classical_maxflow_scaled(graph, caps);
    if (flow != scan.best_classical)
        throw std::logic_error("min_cut_dual: max-flow disagrees with enumeration");
    return {{exact_value(graph, scan.argmin_classical, Mode::Classical),
             materialize(graph, scan.argmin_classical_side)},
            {exact_value(graph, scan.argmin_quantum, Mode::Quantum),
             materialize(graph, scan.argmin_quantum_side)},
            scan.dominance};
}

void for_each_cut(const FlowGraph& graph, const std::function<void(const Cut&)>& fn) {
    enumerate_assignments(graph,
                          [&](const SideAssignment& side) { fn(materialize(graph, side)); });
}

std::pair<FlowGraph, Rational> canonical_worst_case(const SystemParams& params,
                                                    const Rational& alpha, const Rational& beta,
                                                    Mode mode) {
    FlowGraph g = build_initial(params, alpha, mode);
    // Newcomer j is helped by newcomers 1..j-1 and initial nodes j+1..d+1,
    // so the collector on nodes 1..k sees the full cut-set sum.
    for (int j = 1; j <= params.k; ++j) {
        std::vector<int> helpers;
        for (int id = 1; id < j; ++id)
            helpers.push_back(id);
        for (int id = j + 1; (int)helpers.size() < params.d; ++id)
            helpers.push_back(id);
        g = apply_repair(g, j, helpers, beta);
    }
    std::vector<int> dc(params.k);
    std::iota(dc.begin(), dc.end(), 1);
    g = attach_dc(g, dc);
    return {g, min_cut(g).value};
}

namespace {

// Deterministic draws independent of the standard library's distribution
// implementations.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

std::vector<int> sample_without_replacement(std::mt19937_64& rng, std::vector<int> pool,
                                            int count) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i) {
        std::size_t j = rand_below(rng, pool.size());
        out.push_back(pool[j]);
        pool.erase(pool.begin() + (long)j);
    }
    return out;
}

}  // namespace

VerificationReport verify_bound(const SystemParams& params, const OperatingPoint& point,
                                int trials, std::uint64_t seed, int vertex_cap) {
    const int worst_vertices = 2 * (params.n + params.k) + 2;
    if (worst_vertices > vertex_cap)
        throw std::invalid_argument("verify_bound: up to " + std::to_string(worst_vertices) +
                                    " vertices exceeds cap " + std::to_string(vertex_cap));
    if (trials < 0)
        throw std::invalid_argument("verify_bound: trials must be nonnegative");

    VerificationReport report{params,
                              point,
                              capacity(params, point),
                              Rational(0),
                              false,
                              trials,
                              seed,
                              Rational(0),
                              true,
                              false,
                              "quantum cut valuation caps each repair round's helper links "
                              "jointly at d*beta; entanglement shared across distinct rounds "
                              "is not modeled"};

    report.canonical_min_cut =
        canonical_worst_case(params, point.alpha, point.beta, point.mode).second;
    report.canonical_matches = report.canonical_min_cut == report.closed_form;

    std::mt19937_64 rng(seed);
    report.min_random_cut = report.closed_form;
    bool first = true;
    for (int t = 0; t < trials; ++t) {
        FlowGraph g = build_initial(params, point.alpha, point.mode);
        const int rounds = (int)rand_below(rng, (std::uint64_t)params.k + 1);
        for (int r = 0; r < rounds; ++r) {
            std::vector<int> active = g.active_node_ids();
            int failed = active[rand_below(rng, active.size())];
            std::vector<int> pool;
            for (int id : active)
                if (id != failed)
                    pool.push_back(id);
            g = apply_repair(g, failed, sample_without_replacement(rng, pool, params.d),
                             point.beta);
        }
        FlowGraph with_collector =
            attach_dc(g, sample_without_replacement(rng, g.active_node_ids(), params.k));
        Rational cut = min_cut(with_collector).value;
        if (first || cut < report.min_random_cut) {
            report.min_random_cut = cut;
            first = false;
        }
        if (cut < report.closed_form)
            report.random_at_or_above = false;
    }
    report.pass = report.canonical_matches && report.random_at_or_above;
    return report;
}

}  // namespace qregen
