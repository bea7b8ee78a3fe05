#pragma once

// Cut-set bounds for (n,k,d) regenerating systems, classical and
// entanglement-assisted, evaluated in exact rational arithmetic.
//
// Classical capacity:  sum_{i=0}^{k-1} min{(d-i) beta, alpha}
// Quantum capacity:    sum_{i=0}^{k-1} min{2(d-i) beta, d beta, alpha}
//
// The quantum term reflects superdense coding (each crossing link can carry
// two dits per qudit once the receiver holds entangled partners) capped by
// the Holevo limit of d beta qudits transmitted per repair round.
//
// Everything here is a pure function over immutable values; no floating
// point is used.

#include <optional>
#include <vector>

#include "qregen/params.hpp"
#include "qregen/rational.hpp"

namespace qregen {

// Capacity of the cut-set bound at an operating point. The point's mode must
// match the function (classical_capacity requires Mode::Classical, etc).
Rational classical_capacity(const SystemParams& params, const OperatingPoint& point);
Rational quantum_capacity(const SystemParams& params, const OperatingPoint& point);

// Mode-dispatching convenience.
Rational capacity(const SystemParams& params, const OperatingPoint& point);

// True iff a file of params.file_size dits fits at this operating point.
bool is_feasible(const SystemParams& params, const OperatingPoint& point);

// Smallest alpha with capacity >= B at the given beta, or nullopt when no
// alpha suffices (sum of term ceilings below B). Exact water-filling over
// the sorted term ceilings; no numeric search.
std::optional<Rational> min_alpha(const SystemParams& params, const Rational& beta, Mode mode);

// Smallest beta with capacity >= B at the given alpha, or nullopt when
// k*alpha < B.
std::optional<Rational> min_beta(const SystemParams& params, const Rational& alpha, Mode mode);

// Extremal points. MSR/QMSR minimize storage first, then bandwidth;
// MBR/QMBR minimize bandwidth first, then storage.
RegenPoint msr_point(const SystemParams& params);
RegenPoint mbr_point(const SystemParams& params);
RegenPoint qmsr_point(const SystemParams& params);
RegenPoint qmbr_point(const SystemParams& params);

// Quantum-to-classical per-helper bandwidth ratio at the storage-optimal
// point: max{1 - (k-1)/d, 1/2}.
Rational msr_bandwidth_ratio(int k, int d);

// Quantum-to-classical per-helper bandwidth ratio at the bandwidth-optimal
// point: 1 - (k-1)/(2d) when d >= 2k-2, else
// k(2d-k+1) / (2d(floor(d/2)+1) + 2(2d-k-floor(d/2))(k-floor(d/2)-1)).
Rational mbr_bandwidth_ratio(int k, int d);

// True iff the quantum storage-optimal and bandwidth-optimal points
// coincide, which happens exactly when d >= 2k-2.
bool points_coincide(const SystemParams& params);

// The exact piecewise-linear minimal-storage curve from the MBR/QMBR end to
// the MSR/QMSR end of the given mode.
TradeoffCurve tradeoff_curve(const SystemParams& params, Mode mode);

// Per-term bandwidth multipliers of the cut-set sum: term i contributes
// min{weights[i] * beta, alpha}. Classical weight is d-i; quantum weight is
// min{2(d-i), d}. Shared with the flow-graph oracle.
std::vector<long long> term_weights(const SystemParams& params, Mode mode);

}  // namespace qregen
