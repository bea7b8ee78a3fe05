#include "qregen/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qregen {

namespace {

Rational sum_capacity(const SystemParams& params, const Rational& alpha, const Rational& beta,
                      Mode mode) {
    Rational total(0);
    for (long long w : term_weights(params, mode)) {
        Rational term = Rational(w) * beta;
        total += std::min(term, alpha);
    }
    return total;
}

void require_mode(const OperatingPoint& point, Mode expected, const char* fn) {
    if (point.mode != expected)
        throw std::invalid_argument(std::string(fn) + ": operating point has mode '" +
                                    mode_name(point.mode) + "', expected '" +
                                    mode_name(expected) + "'");
}

}  // namespace

std::vector<long long> term_weights(const SystemParams& params, Mode mode) {
    std::vector<long long> w;
    w.reserve(params.k);
    for (int i = 0; i < params.k; ++i) {
        long long classical = params.d - i;
        w.push_back(mode == Mode::Classical ? classical
                                            : std::min(2 * classical, (long long)params.d));
    }
    return w;
}

Rational classical_capacity(const SystemParams& params, const OperatingPoint& point) {
    require_mode(point, Mode::Classical, "classical_capacity");
    return sum_capacity(params, point.alpha, point.beta, Mode::Classical);
}

Rational quantum_capacity(const SystemParams& params, const OperatingPoint& point) {
    require_mode(point, Mode::Quantum, "quantum_capacity");
    return sum_capacity(params, point.alpha, point.beta, Mode::Quantum);
}

Rational capacity(const SystemParams& params, const OperatingPoint& point) {
    return sum_capacity(params, point.alpha, point.beta, point.mode);
}

bool is_feasible(const SystemParams& params, const OperatingPoint& point) {
    return capacity(params, point) >= params.file_size;
}

std::optional<Rational> min_alpha(const SystemParams& params, const Rational& beta, Mode mode) {
    if (beta.is_negative())
        throw std::invalid_argument("min_alpha: beta must be nonnegative");
    const Rational B = params.file_size;
    const int k = params.k;

    // Ascending term ceilings g[i] = w[i] * beta.
    std::vector<long long> w = term_weights(params, mode);
    std::sort(w.begin(), w.end());
    std::vector<Rational> g;
    g.reserve(k);
    for (long long wi : w)
        g.push_back(Rational(wi) * beta);

    // Capacity saturates at sum(g); below that, on alpha in [g[j-1], g[j]]
    // it equals prefix_j + (k-j)*alpha with prefix_j = g[0]+...+g[j-1].
    Rational prefix(0);
    for (int j = 0; j < k; ++j) {
        // Value of the capacity at the right end of segment j.
        Rational at_end = prefix + Rational(k - j) * g[j];
        if (at_end >= B)
            return (B - prefix) / Rational(k - j);
        prefix += g[j];
    }
    return std::nullopt;  // prefix == sum of all ceilings < B
}

std::optional<Rational> min_beta(const SystemParams& params, const Rational& alpha, Mode mode) {
    if (alpha.is_negative())
        throw std::invalid_argument("min_beta: alpha must be nonnegative");
    const Rational B = params.file_size;
    const int k = params.k;

    if (Rational(k) * alpha < B)
        return std::nullopt;  // capacity is capped by k*alpha

    // Terms saturate at alpha in decreasing-weight order as beta grows.
    std::vector<long long> w = term_weights(params, mode);
    std::sort(w.begin(), w.end(), std::greater<>());
    long long unsat = std::accumulate(w.begin(), w.end(), 0LL);

    // On beta in [alpha/w[j-1], alpha/w[j]] the capacity is
    // j*alpha + (w[j]+...+w[k-1])*beta.
    for (int j = 0; j < k; ++j) {
        Rational at_end = Rational(j) * alpha + Rational(unsat) * (alpha / Rational(w[j]));
        if (at_end >= B)
            return (B - Rational(j) * alpha) / Rational(unsat);
        unsat -= w[j];
    }
    // Unreachable: k*alpha >= B guarantees a crossing by the last segment.
    throw std::logic_error("min_beta: water-filling failed to cross");
}

RegenPoint msr_point(const SystemParams& params) {
    const Rational alpha = params.file_size / Rational(params.k);
    const Rational per_helper = alpha / Rational(params.d - params.k + 1);
    return {alpha, Rational(params.d) * per_helper, per_helper, RegenLabel::MSR};
}

RegenPoint mbr_point(const SystemParams& params) {
    const long long k = params.k, d = params.d;
    // beta = B / sum_{i=0}^{k-1} (d-i) = 2B / (k(2d-k+1)).
    const Rational per_helper = Rational(2) * params.file_size / Rational(k * (2 * d - k + 1));
    const Rational total = Rational(d) * per_helper;
    return {total, total, per_helper, RegenLabel::MBR};
}

RegenPoint qmsr_point(const SystemParams& params) {
    const long long k = params.k, d = params.d;
    const Rational alpha = params.file_size / Rational(k);
    // Minimal per-helper bandwidth keeping every term at alpha:
    // beta >= alpha / min_i weight_i, with min weight = min{2(d-k+1), d}.
    const long long min_w = std::min(2 * (d - k + 1), d);
    const Rational per_helper = alpha / Rational(min_w);
    return {alpha, Rational(d) * per_helper, per_helper, RegenLabel::QMSR};
}

RegenPoint qmbr_point(const SystemParams& params) {
    const long long d = params.d;
    // beta = B / sum of quantum weights; minimal alpha then equals d*beta.
    long long weight_sum = 0;
    for (long long w : term_weights(params, Mode::Quantum))
        weight_sum += w;
    const Rational per_helper = params.file_size / Rational(weight_sum);
    const Rational total = Rational(d) * per_helper;
    return {total, total, per_helper, RegenLabel::QMBR};
}

Rational msr_bandwidth_ratio(int k, int d) {
    if (k < 1 || d < k)
        throw std::invalid_argument("msr_bandwidth_ratio: need 1 <= k <= d");
    return std::max(Rational(1) - Rational(k - 1, d), Rational(1, 2));
}

Rational mbr_bandwidth_ratio(int k, int d) {
    if (k < 1 || d < k)
        throw std::invalid_argument("mbr_bandwidth_ratio: need 1 <= k <= d");
    const long long kk = k, dd = d, h = dd / 2;
    if (dd >= 2 * kk - 2)
        return Rational(1) - Rational(kk - 1, 2 * dd);
    return Rational(kk * (2 * dd - kk + 1),
                    2 * dd * (h + 1) + 2 * (2 * dd - kk - h) * (kk - h - 1));
}

bool points_coincide(const SystemParams& params) {
    return params.d >= 2 * params.k - 2;
}

TradeoffCurve tradeoff_curve(const SystemParams& params, Mode mode) {
    const Rational B = params.file_size;
    const int k = params.k, d = params.d;

    std::vector<long long> w = term_weights(params, mode);
    std::sort(w.begin(), w.end());

    // Kinks of the minimal-alpha curve sit where the water level crosses a
    // term ceiling: beta_j = B / (w[0]+...+w[j-1] + (k-j) w[j]), at which
    // point alpha = w[j] * beta_j. j = k-1 is the bandwidth-optimal end,
    // j = 0 the storage-optimal end. Equal weights give coincident kinks.
    TradeoffCurve curve{mode, {}, Rational(0)};
    long long prefix = 0;
    std::vector<std::pair<Rational, Rational>> pts;
    for (int j = 0; j < k; ++j) {
        Rational beta = B / Rational(prefix + (long long)(k - j) * w[j]);
        pts.emplace_back(Rational(d) * beta, Rational(w[j]) * beta);
        prefix += w[j];
    }
    std::reverse(pts.begin(), pts.end());  // ascending gamma
    for (auto& p : pts) {
        if (curve.breakpoints.empty() || curve.breakpoints.back().first != p.first)
            curve.breakpoints.push_back(p);
    }
    curve.feasible_gamma_min = curve.breakpoints.front().first;
    return curve;
}

}  // namespace qregen
