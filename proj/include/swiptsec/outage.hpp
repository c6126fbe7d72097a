#pragma once

// Secrecy outage probability Pr([C_s - C_e]+ < R_s) for the four
// source/eavesdropper receiver-architecture pairs, by direct quadrature of
// the exact event and by the closed-form series expansions.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "swiptsec/channel.hpp"
#include "swiptsec/distributions.hpp"

namespace swiptsec {

struct ArchitecturePair {
    Architecture src;
    Architecture eve;
};

inline constexpr ArchitecturePair kSpSp{Architecture::Separated, Architecture::Separated};
inline constexpr ArchitecturePair kSpIn{Architecture::Separated, Architecture::Integrated};
inline constexpr ArchitecturePair kInSp{Architecture::Integrated, Architecture::Separated};
inline constexpr ArchitecturePair kInIn{Architecture::Integrated, Architecture::Integrated};
inline constexpr ArchitecturePair kAllArchPairs[4] = {kSpSp, kSpIn, kInSp, kInIn};

enum class Method : std::uint8_t {
    quadrature,
    series_rederived,
    series_as_published,
    monte_carlo,
};

// Rederived follows the event algebra exactly; AsPublished reproduces the
// printed closed forms verbatim, kept to quantify how far they stray.
enum class SeriesVariant : std::uint8_t { Rederived, AsPublished };

struct OutageEstimate {
    double value = 0.0;  // clamped to [0,1]
    Method method = Method::quadrature;
    double ci_halfwidth = 0.0;      // Monte Carlo only: 95% Wald half-width
    double raw_value = 0.0;         // before clamping; series forms can stray
    double integration_error = 0.0; // quadrature / series absolute error bound
    long long draws = 0;            // Monte Carlo sample count
    bool divergence = false;        // series only: |series - quadrature| > 1e-3
};

// Rate-law constant of the integrated receiver: C = sqrt(e / (2 pi)).
extern const double kIntegratedRateConst;

// Instantaneous rate log2(1 + chi) (separated) or log2(chi * C) (integrated).
double channel_rate(double chi, Architecture a);

// [C_s - C_e]+ for one joint SNR realization.
double secrecy_rate(double chi_s, double chi_e, ArchitecturePair arch);

// Main-link SNR below which the realization is in secrecy outage, given the
// eavesdropper SNR.  May be negative (then the outage event is empty).
double snr_threshold(double gamma_e, ArchitecturePair arch, double r_s);

// One code path for all eight (architecture, mode) cases:
// integrate F_{chi_s}(threshold(g)) f_{chi_e}(g) dg over [0, inf).
OutageEstimate outage_quadrature(const SystemParams& p, ArchitecturePair arch,
                                 EveMode mode,
                                 CoeffConvention conv = CoeffConvention::Rederived);

// Raised when the series path is asked for non-integer fading figures; the
// finite-sum expansions require integer shapes.
class SeriesUnsupportedError : public std::invalid_argument {
public:
    explicit SeriesUnsupportedError(const std::string& what)
        : std::invalid_argument(what) {}
};

// Closed-form series evaluation.  The divergence flag is set when the series
// strays from outage_quadrature by more than 1e-3.
OutageEstimate outage_series(const SystemParams& p, ArchitecturePair arch, EveMode mode,
                             SeriesVariant variant = SeriesVariant::Rederived,
                             CoeffConvention conv = CoeffConvention::Rederived);

// Semi-infinite kernels shared by the series forms.  arg_e / arg_s map the
// integration variable to the incomplete-gamma arguments; both are clamped
// at zero before use.  All integrands are assembled in the log domain.
using KernelArg = std::function<double(double)>;

// integral gamma^{m_e-1} e^{-m_e arg_e} Gamma(m_e, m_e arg_e)^w
//          Gamma(m_s, m_s arg_s) dgamma over [0, inf)
double kernel_M(const SystemParams& p, int w, const KernelArg& arg_e,
                const KernelArg& arg_s);

// integral Gamma(m_e, m_e arg_e)^z gamma^{m_s-1} e^{-m_s arg_s} dgamma
// over [lower, inf)
double kernel_T(const SystemParams& p, int z, const KernelArg& arg_e,
                const KernelArg& arg_s, double lower);

// Cooperative kernels; the two variants differ in which regularized
// incomplete-gamma factor multiplies the Gamma-sum density.
double kernel_U(const SystemParams& p, const KernelArg& arg_e, const KernelArg& arg_s,
                SeriesVariant variant);
double kernel_V(const SystemParams& p, const KernelArg& arg_e, const KernelArg& arg_s,
                double lower, SeriesVariant variant);

const char* to_string(Architecture a);
const char* to_string(EveMode m);
const char* to_string(Method m);

}  // namespace swiptsec
