#pragma once

// System model: power-splitting SWIPT downlink over Nakagami-m fading with a
// legitimate receiver S and N energy-harvesting eavesdroppers, all under
// imperfect channel estimation.

#include <cstdint>
#include <optional>

#include "swiptsec/rng.hpp"
#include "swiptsec/specfun.hpp"

namespace swiptsec {

enum class Architecture : std::uint8_t { Separated, Integrated };
enum class EveMode : std::uint8_t { NonCooperative, Cooperative };
enum class Side : std::uint8_t { Main, Eve };

// The published eavesdropper SNR coefficient carries the legitimate node's
// power-splitting ratio in one denominator slot; Rederived uses the
// eavesdropper's own ratio throughout.  Identical whenever rho_s == rho_e.
enum class CoeffConvention : std::uint8_t { Rederived, AsPublished };

// Free-space link budget used to derive a mean channel power gain.
struct LinkGeometry {
    double tx_power;    // transmit power, linear
    double distance;    // meters
    double exponent;    // path-loss exponent
    double gain_tx;     // transmit antenna gain, linear
    double gain_rx;     // receive antenna gain, linear
    double wavelength;  // carrier wavelength, meters
};

double path_loss(const LinkGeometry& g);
double omega_from_geometry(const LinkGeometry& g);

struct SystemParams {
    double omega_s = 1000.0;  // mean channel power gain, main link
    double omega_e = 10.0;    // mean channel power gain, eavesdropper links
    double n0 = 1.0;          // antenna noise power
    double sigma2_s = 1.0;    // conversion noise power at S
    double sigma2_e = 1.0;    // conversion noise power at eavesdroppers
    double rho_s = 0.5;       // fraction of received power routed to decoding at S
    double rho_e = 0.5;
    double delta_s = 0.0;     // channel-estimation error weight at S
    double delta_e = 0.0;
    double m_s = 1.0;         // Nakagami fading figure, main link
    double m_e = 1.0;
    int n_eves = 1;
    double r_s = 1.0;    // target secrecy rate, bits/s/Hz
    double zeta_s = 1.0;  // energy-conversion efficiency at S
    double zeta_e = 1.0;

    // Average SNR; tracks the corresponding omega (unit-mean fading) until
    // set explicitly.
    std::optional<double> gbar_s_override;
    std::optional<double> gbar_e_override;

    double gbar_s() const { return gbar_s_override ? *gbar_s_override : omega_s; }
    double gbar_e() const { return gbar_e_override ? *gbar_e_override : omega_e; }

    // Mean squared fading amplitude E|h|^2 implied by gbar and omega.
    double fading_mean_s() const { return gbar_s() / omega_s; }
    double fading_mean_e() const { return gbar_e() / omega_e; }

    // Throws std::domain_error naming the first offending field.
    void validate() const;
};

// Deterministic SNR coefficient k with chi = k * |h|^2.
double effective_snr_coeff(const SystemParams& p, Side side,
                           CoeffConvention conv = CoeffConvention::Rederived);

// Gamma law of the effective SNR chi for one link.  For the eavesdroppers,
// Cooperative returns the law of the sum over all n_eves links.
specfun::GammaShapeRate snr_distribution(const SystemParams& p, Side side,
                                         EveMode mode = EveMode::NonCooperative,
                                         CoeffConvention conv = CoeffConvention::Rederived);

// One draw of |h|^2 for a Nakagami-m link with the given mean square value.
double sample_fading_power(double m, double mean, RandomStream& stream);

// Channel estimate hhat = sqrt(1-delta^2) h + delta v with v ~ N(0,1).
double corrupt_csi(double h, double delta, RandomStream& stream);

// Energy harvested from one realization: zeta (1-rho) Omega |hhat|^2.
double harvested_energy(const SystemParams& p, double hhat_sq, Side side);

}  // namespace swiptsec
