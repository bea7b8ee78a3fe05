#pragma once

// Core domain types for (n,k,d) regenerating storage systems.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qregen/rational.hpp"

namespace qregen {

// Repair communication model: helpers send dits over classical channels, or
// qudits over noiseless quantum channels with pre-shared entanglement among
// the helpers.
enum class Mode { Classical, Quantum };

inline const char* mode_name(Mode m) {
    return m == Mode::Classical ? "classical" : "quantum";
}

// An (n,k,d) system storing a file of B dits: any k of the n nodes recover
// the file, and a failed node is rebuilt from any d survivors.
struct SystemParams {
    int n;
    int k;
    int d;
    Rational file_size;  // B, in dits

    SystemParams(int n_, int k_, int d_, Rational B) : n(n_), k(k_), d(d_), file_size(B) {
        if (k < 1 || k > n)
            throw std::invalid_argument("SystemParams: need 1 <= k <= n, got k=" +
                                        std::to_string(k) + ", n=" + std::to_string(n));
        if (d < k || d > n - 1)
            throw std::invalid_argument("SystemParams: need k <= d <= n-1, got k=" +
                                        std::to_string(k) + ", d=" + std::to_string(d) +
                                        ", n=" + std::to_string(n));
        if (!(file_size > Rational(0)))
            throw std::invalid_argument("SystemParams: file size must be positive, got " +
                                        file_size.str());
    }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Per-node storage alpha and per-helper bandwidth beta. beta is measured in
// dits (classical mode) or qudits (quantum mode).
struct OperatingPoint {
    Rational alpha;
    Rational beta;
    Mode mode;

    OperatingPoint(Rational alpha_, Rational beta_, Mode mode_)
        : alpha(std::move(alpha_)), beta(std::move(beta_)), mode(mode_) {
        if (alpha.is_negative() || beta.is_negative())
            throw std::invalid_argument("OperatingPoint: alpha and beta must be nonnegative");
    }

    friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

enum class RegenLabel { MSR, MBR, QMSR, QMBR };

inline const char* regen_label_name(RegenLabel l) {
    switch (l) {
        case RegenLabel::MSR: return "MSR";
        case RegenLabel::MBR: return "MBR";
        case RegenLabel::QMSR: return "QMSR";
        default: return "QMBR";
    }
}

// One of the extremal operating points. total_bandwidth = d * per_helper.
struct RegenPoint {
    Rational alpha;
    Rational total_bandwidth;
    Rational per_helper;
    RegenLabel label;

    friend bool operator==(const RegenPoint&, const RegenPoint&) = default;
};

// Minimal per-node storage as a function of total repair bandwidth
// gamma = d*beta, between the bandwidth-optimal and storage-optimal ends.
// Piecewise linear; breakpoints are (gamma, alpha) pairs with gamma strictly
// increasing and alpha strictly decreasing.
struct TradeoffCurve {
    Mode mode;
    std::vector<std::pair<Rational, Rational>> breakpoints;
    Rational feasible_gamma_min;
};

}  // namespace qregen
