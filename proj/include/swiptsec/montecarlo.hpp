#pragma once

#include <cstdint>

#include "swiptsec/channel.hpp"
#include "swiptsec/outage.hpp"

namespace swiptsec {
namespace montecarlo {

// Simulation request. Sampling is counter-based and chunked: results are
// bit-identical for a given (seed, n_samples) regardless of `workers`.
struct SimSpec {
    SystemParams params;
    ArchitecturePair arch = kSpSp;
    EveMode mode = EveMode::NonCooperative;
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 1;
    int workers = 1;

    void validate() const;  // throws std::domain_error
};

// Estimates the secrecy outage probability by sampling fading and channel
// estimates per realization, forming the exact per-realization rates, and
// counting threshold violations. The effective-SNR coefficient uses each
// node's own splitting factor in the estimation-error interference term
// (the physical model), so this path arbitrates between coefficient
// conventions rather than assuming one.
OutageEstimate simulate_outage(const SimSpec& spec);

// Joint energy/secrecy operating point for one parameter setting.
struct EnergySecrecyPoint {
    double rho_s = 0.0;            // splitting fraction the point was run at
    double mean_eh = 0.0;          // average harvested energy per realization
    double eh_ci = 0.0;            // 95% normal-theory halfwidth
    double ergodic_secrecy = 0.0;  // average [C_s - C_e]^+ in bits/s/Hz
    double secrecy_ci = 0.0;       // 95% normal-theory halfwidth
    double outage = 0.0;           // fraction of realizations below r_s
    double outage_ci = 0.0;        // 95% normal-theory halfwidth
    std::uint64_t draws = 0;
};

// Which node's harvester the energy average tracks: the source, or the sum
// over all eavesdropping nodes.
EnergySecrecyPoint simulate_energy_secrecy(const SimSpec& spec,
                                           Side track_eh_side = Side::Main);

}  // namespace montecarlo
}  // namespace swiptsec
