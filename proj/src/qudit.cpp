#include "qregen/qudit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qregen {

namespace {

constexpr double kNormTol = 1e-12;

long long pow_ll(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

Amplitude root_of_unity(int q, long long exponent) {
    const double angle = 2.0 * std::numbers::pi * (double)(((exponent % q) + q) % q) / (double)q;
    return {std::cos(angle), std::sin(angle)};
}

void check_q(int q) {
    if (q < 2)
        throw std::invalid_argument("qudit dimension must be >= 2, got " + std::to_string(q));
}

}  // namespace

PureState::PureState(int q, int parties, std::vector<Amplitude> amplitudes)
    : q_(q), parties_(parties), amps_(std::move(amplitudes)) {
    check_q(q);
    if (parties < 1)
        throw std::invalid_argument("PureState: need at least one party");
    if ((long long)amps_.size() != pow_ll(q, parties))
        throw std::invalid_argument("PureState: expected " + std::to_string(pow_ll(q, parties)) +
                                    " amplitudes, got " + std::to_string(amps_.size()));
    if (std::abs(norm_squared() - 1.0) > kNormTol)
        throw std::invalid_argument("PureState: not normalized (|psi|^2 = " +
                                    std::to_string(norm_squared()) + ")");
}

double PureState::norm_squared() const {
    double s = 0.0;
    for (const Amplitude& a : amps_)
        s += std::norm(a);
    return s;
}

PureState max_entangled(int q) {
    check_q(q);
    std::vector<Amplitude> amps(q * (std::size_t)q, Amplitude(0));
    const double coeff = 1.0 / std::sqrt((double)q);
    for (int j = 0; j < q; ++j)
        amps[(std::size_t)j * q + j] = coeff;
    return PureState(q, 2, std::move(amps));
}

PureState bell_state(int q, int s, int t) {
    return weyl_apply(max_entangled(q), 0, {s, t});
}

PureState weyl_apply(const PureState& state, int party, WeylLabel label) {
    const int q = state.q(), m = state.parties();
    if (party < 0 || party >= m)
        throw std::invalid_argument("weyl_apply: party " + std::to_string(party) +
                                    " out of range for " + std::to_string(m) + " parties");
    const int a = ((label.a % q) + q) % q;
    const int b = ((label.b % q) + q) % q;

    // stride of the target digit in the big-endian index
    const long long stride = pow_ll(q, m - 1 - party);
    const auto& in = state.amplitudes();
    std::vector<Amplitude> out(in.size(), Amplitude(0));
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        const int digit = (int)((idx / (std::size_t)stride) % (std::size_t)q);
        const int shifted = (digit + a) % q;
        const std::size_t target = idx + (std::size_t)(shifted - digit) * stride;
        out[target] = in[idx] * root_of_unity(q, (long long)b * digit);
    }
    return PureState(q, m, std::move(out));
}

std::vector<BellOutcome> bell_measure(const PureState& state) {
    if (state.parties() != 2)
        throw std::invalid_argument("bell_measure: expected a two-party state, got " +
                                    std::to_string(state.parties()) + " parties");
    const int q = state.q();
    std::vector<BellOutcome> outcomes;
    outcomes.reserve((std::size_t)q * q);
    double total = 0.0;
    for (int s = 0; s < q; ++s) {
        for (int t = 0; t < q; ++t) {
            PureState basis = bell_state(q, s, t);
            Amplitude overlap(0);
            for (std::size_t i = 0; i < basis.amplitudes().size(); ++i)
                overlap += std::conj(basis.amplitudes()[i]) * state.amplitudes()[i];
            const double p = std::norm(overlap);
            outcomes.push_back({s, t, p});
            total += p;
        }
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::logic_error("bell_measure: outcome probabilities sum to " +
                               std::to_string(total));
    return outcomes;
}

namespace {

BellOutcome top_outcome(const std::vector<BellOutcome>& outcomes) {
    BellOutcome best = outcomes.front();
    for (const BellOutcome& o : outcomes)
        if (o.probability > best.probability)
            best = o;
    return best;
}

}  // namespace

BellOutcome superdense_receiver(int q, WeylLabel message) {
    PureState encoded = weyl_apply(max_entangled(q), 0, message);
    return top_outcome(bell_measure(encoded));
}

BellOutcome two_sender_sumbox(int q, WeylLabel m1, WeylLabel m2) {
    PureState encoded = weyl_apply(weyl_apply(max_entangled(q), 0, m1), 1, m2);
    return top_outcome(bell_measure(encoded));
}

namespace {

double entropy(const Eigen::MatrixXcd& rho, int log_base) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("holevo_chi: eigendecomposition failed");
    double s = 0.0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda > 1e-15)
            s -= lambda * std::log(lambda);
    }
    return s / std::log((double)log_base);
}

Eigen::MatrixXcd outer(const PureState& psi) {
    const auto& a = psi.amplitudes();
    Eigen::VectorXcd v((long)a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        v[(long)i] = a[i];
    return v * v.adjoint();
}

}  // namespace

double holevo_chi(const Ensemble& ensemble, int log_base) {
    if (log_base < 2)
        throw std::invalid_argument("holevo_chi: log base must be >= 2");
    if (ensemble.members.empty())
        throw std::invalid_argument("holevo_chi: empty ensemble");

    const PureState& first = ensemble.members.front().second;
    double prob_total = 0.0;
    for (const auto& [p, psi] : ensemble.members) {
        if (p <= 0.0)
            throw std::invalid_argument("holevo_chi: member probabilities must be positive");
        if (psi.q() != first.q() || psi.parties() != first.parties())
            throw std::invalid_argument("holevo_chi: ensemble members differ in shape");
        prob_total += p;
    }
    if (std::abs(prob_total - 1.0) > 1e-12)
        throw std::invalid_argument("holevo_chi: member probabilities sum to " +
                                    std::to_string(prob_total));

    const long dim = (long)first.amplitudes().size();
    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
    double member_entropy = 0.0;
    for (const auto& [p, psi] : ensemble.members) {
        Eigen::MatrixXcd rho = outer(psi);
        avg += p * rho;
        member_entropy += p * entropy(rho, log_base);
    }
    return entropy(avg, log_base) - member_entropy;
}

}  // namespace qregen
