#include "swiptsec/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swiptsec {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const char* what) {
    if (!ok)
        throw std::domain_error(std::string("SystemParams: ") + what);
}

}  // namespace

double path_loss(const LinkGeometry& g) {
    if (!(g.distance > 0.0) || !(g.wavelength > 0.0) || !(g.gain_tx > 0.0) ||
        !(g.gain_rx > 0.0))
        throw std::domain_error("path_loss: distance, wavelength and gains must be positive");
    const double aperture = 4.0 * kPi;
    return aperture * aperture * std::pow(g.distance, g.exponent) /
           (g.gain_tx * g.gain_rx * g.wavelength * g.wavelength);
}

double omega_from_geometry(const LinkGeometry& g) {
    if (!(g.tx_power > 0.0))
        throw std::domain_error("omega_from_geometry: tx_power must be positive");
    return g.tx_power / path_loss(g);
}

void SystemParams::validate() const {
    require(std::isfinite(omega_s) && omega_s > 0.0, "omega_s must be positive");
    require(std::isfinite(omega_e) && omega_e > 0.0, "omega_e must be positive");
    require(std::isfinite(gbar_s()) && gbar_s() > 0.0, "gbar_s must be positive");
    require(std::isfinite(gbar_e()) && gbar_e() > 0.0, "gbar_e must be positive");
    require(std::isfinite(n0) && n0 > 0.0, "n0 must be positive");
    require(std::isfinite(sigma2_s) && sigma2_s > 0.0, "sigma2_s must be positive");
    require(std::isfinite(sigma2_e) && sigma2_e > 0.0, "sigma2_e must be positive");
    require(rho_s >= 0.0 && rho_s < 1.0, "rho_s must lie in [0,1)");
    require(rho_e >= 0.0 && rho_e < 1.0, "rho_e must lie in [0,1)");
    require(delta_s >= 0.0 && delta_s < 1.0, "delta_s must lie in [0,1)");
    require(delta_e >= 0.0 && delta_e < 1.0, "delta_e must lie in [0,1)");
    require(m_s >= 0.5, "m_s must be at least 0.5");
    require(m_e >= 0.5, "m_e must be at least 0.5");
    require(n_eves >= 1, "n_eves must be at least 1");
    require(std::isfinite(r_s) && r_s > 0.0, "r_s must be positive");
    require(zeta_s > 0.0 && zeta_s <= 1.0, "zeta_s must lie in (0,1]");
    require(zeta_e > 0.0 && zeta_e <= 1.0, "zeta_e must lie in (0,1]");
}

double effective_snr_coeff(const SystemParams& p, Side side, CoeffConvention conv) {
    p.validate();
    const bool main = side == Side::Main;
    const double omega = main ? p.omega_s : p.omega_e;
    const double rho = main ? p.rho_s : p.rho_e;
    const double delta = main ? p.delta_s : p.delta_e;
    const double sigma2 = main ? p.sigma2_s : p.sigma2_e;
    if (rho == 0.0)
        return 0.0;
    // Estimation error scales with received power, hence the omega term in
    // the denominator; it caps the SNR no matter how strong the link.
    const double rho_err =
        (!main && conv == CoeffConvention::AsPublished) ? p.rho_s : rho;
    const double denom = omega * rho_err * delta * delta + rho * p.n0 + sigma2;
    return rho * omega * (1.0 - delta * delta) / denom;
}

specfun::GammaShapeRate snr_distribution(const SystemParams& p, Side side, EveMode mode,
                                         CoeffConvention conv) {
    const double k = effective_snr_coeff(p, side, conv);
    if (!(k > 0.0))
        throw std::domain_error("snr_distribution: SNR is degenerate at zero (rho == 0)");
    const bool main = side == Side::Main;
    const double m = main ? p.m_s : p.m_e;
    const double gbar = main ? p.gbar_s() : p.gbar_e();
    const double omega = main ? p.omega_s : p.omega_e;
    // chi = k |h|^2 with E|h|^2 = gbar/omega, so the Gamma rate is
    // m * omega / (k * gbar).
    const double rate = m * omega / (k * gbar);
    double shape = m;
    if (!main && mode == EveMode::Cooperative)
        shape = static_cast<double>(p.n_eves) * m;
    return specfun::GammaShapeRate(shape, rate);
}

double sample_fading_power(double m, double mean, RandomStream& stream) {
    if (!(m >= 0.5) || !(mean > 0.0))
        throw std::domain_error("sample_fading_power: need m >= 0.5 and mean > 0");
    return stream.gamma(m, mean / m);
}

double corrupt_csi(double h, double delta, RandomStream& stream) {
    if (!(delta >= 0.0) || !(delta < 1.0))
        throw std::domain_error("corrupt_csi: delta must lie in [0,1)");
    return std::sqrt(1.0 - delta * delta) * h + delta * stream.normal();
}

double harvested_energy(const SystemParams& p, double hhat_sq, Side side) {
    if (!(hhat_sq >= 0.0))
        throw std::domain_error("harvested_energy: |hhat|^2 must be nonnegative");
    const bool main = side == Side::Main;
    const double zeta = main ? p.zeta_s : p.zeta_e;
    const double rho = main ? p.rho_s : p.rho_e;
    const double omega = main ? p.omega_s : p.omega_e;
    return zeta * (1.0 - rho) * omega * hhat_sq;
}

}  // namespace swiptsec
