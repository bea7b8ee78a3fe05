#include "qregen/repair_sim.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qregen/bounds.hpp"

namespace qregen {

namespace {

// Uniform draw in [0, bound) via modulo so replay does not depend on the
// standard library's distribution implementation.
long long rand_below(std::mt19937_64& rng, long long bound) {
    return static_cast<long long>(rng() % static_cast<unsigned long long>(bound));
}

// C(n, k) clamped to cap + 1 so callers can test "fits within cap" without
// overflow.
long long binomial_clamped(int n, int k, long long cap) {
    if (k < 0 || k > n) return 0;
    __int128 c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);  // exact: prefix products are binomials
        if (c > cap) return cap + 1;
    }
    return static_cast<long long>(c);
}

// Uniform k-subset of ids, returned sorted.
std::vector<int> random_subset(const std::vector<int>& ids, int k, std::mt19937_64& rng) {
    std::vector<int> pool = ids;
    for (int i = 0; i < k; ++i) {
        long long j = i + rand_below(rng, static_cast<long long>(pool.size()) - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

bool subset_retrievable(const FlowGraph& graph, const std::vector<int>& subset,
                        const Rational& file_size) {
    FlowGraph probe = attach_dc(graph, subset);
    return min_cut(probe).value >= file_size;
}

}  // namespace

RetrievalReport check_retrieval(const FlowGraph& graph, const Rational& file_size,
                                std::optional<int> budget, std::mt19937_64& rng,
                                long long subset_cap) {
    std::vector<int> ids = graph.active_node_ids();
    const int k = graph.params().k;
    RetrievalReport report;

    if (budget.has_value()) {
        if (*budget < 1) throw std::invalid_argument("retrieval subset budget must be >= 1");
        for (int t = 0; t < *budget; ++t) {
            std::vector<int> subset = random_subset(ids, k, rng);
            ++report.checked_subsets;
            if (!subset_retrievable(graph, subset, file_size))
                report.failing_subsets.push_back(subset);
        }
    } else {
        long long total = binomial_clamped(static_cast<int>(ids.size()), k, subset_cap);
        if (total > subset_cap) {
            std::ostringstream msg;
            msg << "exhaustive retrieval check needs C(" << ids.size() << "," << k
                << ") > " << subset_cap << " subsets; pass a sampling budget";
            throw std::invalid_argument(msg.str());
        }
        // Lexicographic combinations over indices into ids.
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<int> subset(k);
            for (int i = 0; i < k; ++i) subset[i] = ids[idx[i]];
            ++report.checked_subsets;
            if (!subset_retrievable(graph, subset, file_size))
                report.failing_subsets.push_back(subset);

            int i = k - 1;
            while (i >= 0 && idx[i] == static_cast<int>(ids.size()) - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    // Sort failing subsets for stable reporting when sampling produced them
    // out of order.
    std::sort(report.failing_subsets.begin(), report.failing_subsets.end());
    report.failing_subsets.erase(
        std::unique(report.failing_subsets.begin(), report.failing_subsets.end()),
        report.failing_subsets.end());
    report.pass = report.failing_subsets.empty();
    return report;
}

Cluster::Cluster(const SystemParams& params, const OperatingPoint& point)
    : params_(params),
      point_(point),
      graph_(build_initial(params, point.alpha, point.mode)) {
    Rational cap = capacity(params, point);
    if (cap < params.file_size) {
        Rational shortfall = params.file_size - cap;
        std::ostringstream msg;
        msg << "infeasible operating point: " << mode_name(point.mode) << " capacity "
            << cap << " < file size " << params.file_size << " (shortfall " << shortfall << ")";
        throw InfeasiblePointError(msg.str(), shortfall);
    }
    ledger_.dits_stored = Rational(params.n) * point.alpha;
}

StepResult Cluster::step(const Event& event, std::mt19937_64& rng) {
    StepResult result;
    if (const auto* fail = std::get_if<FailEvent>(&event)) {
        if (pending_failure_)
            throw std::invalid_argument("node " + std::to_string(*pending_failure_) +
                                        " failed and not yet repaired");
        if (graph_.active_instance(fail->node_id) < 0)
            throw std::invalid_argument("failing node " + std::to_string(fail->node_id) +
                                        " is not active");
        pending_failure_ = fail->node_id;
    } else if (const auto* repair = std::get_if<RepairEvent>(&event)) {
        if (!pending_failure_)
            throw std::invalid_argument("repair without a pending failure");
        if (repair->node_id != *pending_failure_)
            throw std::invalid_argument("repair names node " + std::to_string(repair->node_id) +
                                        " but the failed node is " +
                                        std::to_string(*pending_failure_));
        std::vector<int> helpers = repair->helper_ids;
        if (helpers.empty()) {
            std::vector<int> survivors;
            for (int id : graph_.active_node_ids())
                if (id != *pending_failure_) survivors.push_back(id);
            helpers = random_subset(survivors, params_.d, rng);
        }
        graph_ = apply_repair(graph_, *pending_failure_, helpers, point_.beta);
        pending_failure_.reset();

        Rational bandwidth = Rational(params_.d) * point_.beta;
        if (point_.mode == Mode::Classical) {
            ledger_.classical_dits_sent = ledger_.classical_dits_sent + bandwidth;
        } else {
            ledger_.qudits_sent = ledger_.qudits_sent + bandwidth;
            ledger_.entangled_qudits_consumed = ledger_.entangled_qudits_consumed + bandwidth;
        }
        ledger_.repairs_completed += 1;
    } else {
        const auto& check = std::get<CheckRetrievalEvent>(event);
        result.retrieval = check_retrieval(check.budget, rng);
    }
    return result;
}

RetrievalReport Cluster::check_retrieval(std::optional<int> budget, std::mt19937_64& rng,
                                         long long subset_cap) const {
    if (pending_failure_)
        throw std::logic_error("retrieval is defined on the repaired system; node " +
                               std::to_string(*pending_failure_) + " awaits repair");
    return qregen::check_retrieval(graph_, params_.file_size, budget, rng, subset_cap);
}

SimulationLog run_script(const SystemParams& params, const OperatingPoint& point,
                         const EvolutionScript& script, std::uint64_t seed) {
    Cluster cluster(params, point);
    std::mt19937_64 rng(seed);

    SimulationLog log{params, point, seed, {}, {}, true, Cluster::kAccountingNote};
    for (const Event& event : script) {
        StepResult result = cluster.step(event, rng);
        if (result.retrieval && !result.retrieval->pass) log.all_retrievals_passed = false;
        log.entries.push_back({event, cluster.ledger(), result.retrieval});
    }
    log.final_ledger = cluster.ledger();
    return log;
}

EvolutionScript worst_case_script(const SystemParams& params) {
    EvolutionScript script;
    for (int j = 1; j <= params.k; ++j) {
        std::vector<int> helpers;
        for (int id = 1; id < j && static_cast<int>(helpers.size()) < params.d; ++id)
            helpers.push_back(id);
        for (int id = j + 1; static_cast<int>(helpers.size()) < params.d; ++id)
            helpers.push_back(id);
        script.push_back(FailEvent{j});
        script.push_back(RepairEvent{j, helpers});
    }
    return script;
}

}  // namespace qregen
