#pragma once

// Exact state-vector simulation of the entanglement-assisted encoding
// primitives: qudit Weyl operators, generalized Bell measurement, superdense
// coding with receiver- or sender-held entanglement, and Holevo-quantity
// accounting.
//
// States are dense complex vectors over m parties of local dimension q,
// indexed big-endian: basis |j_0 j_1 ... j_{m-1}> maps to
// j_0 q^{m-1} + j_1 q^{m-2} + ... + j_{m-1}. All operations are pure
// functions over immutable values.

#include <complex>
#include <vector>

namespace qregen {

using Amplitude = std::complex<double>;

class PureState {
public:
    // Validates the squared norm is 1 within 1e-12.
    PureState(int q, int parties, std::vector<Amplitude> amplitudes);

    int q() const { return q_; }
    int parties() const { return parties_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }

    double norm_squared() const;

private:
    int q_;
    int parties_;
    std::vector<Amplitude> amps_;
};

// Classical message pair (a, b) embedded by the Weyl operator X^a Z^b.
struct WeylLabel {
    int a;
    int b;
};

// Measurement outcome labeled by the Bell-basis index (s, t).
struct BellOutcome {
    int s;
    int t;
    double probability;
};

// |Phi> = q^{-1/2} sum_j |jj>.
PureState max_entangled(int q);

// The generalized Bell state |Phi_{s,t}> = (X^s Z^t (x) I)|Phi>.
PureState bell_state(int q, int s, int t);

// Applies X^a Z^b to one party: Z^b |j> = w^{bj} |j> first, then
// X^a |j> = |j+a mod q>, with w = exp(2 pi i / q). Unitary.
PureState weyl_apply(const PureState& state, int party, WeylLabel label);

// Projects a two-party state onto the generalized Bell basis and returns
// all q^2 outcome probabilities, ordered by (s, t).
std::vector<BellOutcome> bell_measure(const PureState& state);

// Superdense coding with receiver-held entanglement: the sender encodes
// `message` on its half of |Phi>, transmits it, and the receiver
// Bell-measures both halves. Returns the most likely outcome, which equals
// the message with probability 1.
BellOutcome superdense_receiver(int q, WeylLabel message);

// Both halves of |Phi> are held by senders; sender 1 applies m1, sender 2
// applies m2, both qudits are transmitted, and the receiver Bell-measures.
// The outcome is deterministic and equals
//   (a1 - a2 mod q, b1 + b2 mod q),
// the fixed sign convention of this implementation (party 2's shift enters
// transposed through the shared state).
BellOutcome two_sender_sumbox(int q, WeylLabel m1, WeylLabel m2);

// A classical-quantum ensemble; probabilities must sum to 1 within 1e-12
// and all members must share (q, parties).
struct Ensemble {
    std::vector<std::pair<double, PureState>> members;
};

// Holevo quantity chi = S(rho_avg) - sum_x p_x S(rho_x), with von Neumann
// entropies taken in the given log base (base q yields dits). Computed by
// Hermitian eigendecomposition of the density operators.
double holevo_chi(const Ensemble& ensemble, int log_base);

}  // namespace qregen
