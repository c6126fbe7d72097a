#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "swiptsec/channel.hpp"
#include "swiptsec/montecarlo.hpp"
#include "swiptsec/outage.hpp"

namespace swiptsec {
namespace experiments {

// One outage sweep over a named parameter axis.
//
// Axis names follow the config keys (see params_io). The `gbar_s`/`gbar_e`
// axes move the average link SNR as a power dial: the link power is set to
// the axis value and the fading mean stays at one, which is what produces
// the high-SNR outage floor under channel-estimation error.
struct SweepSpec {
    SystemParams base;
    std::string axis;
    std::vector<double> grid;  // nonempty, strictly increasing
    std::vector<ArchitecturePair> arch_cases{kSpSp, kSpIn, kInSp, kInIn};
    std::vector<EveMode> modes{EveMode::NonCooperative, EveMode::Cooperative};
    bool with_series = true;
    SeriesVariant series_variant = SeriesVariant::Rederived;
    bool with_mc = false;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 42;
    int workers = 1;
    CoeffConvention convention = CoeffConvention::Rederived;

    void validate() const;  // throws std::domain_error
};

// One output row; value fields are NaN when the method was not requested or
// the row failed (in which case `error` is nonempty and names the cause).
struct SweepRow {
    double axis_value = 0.0;
    ArchitecturePair arch = kSpSp;
    EveMode mode = EveMode::NonCooperative;
    double p_quadrature = std::numeric_limits<double>::quiet_NaN();
    double p_series = std::numeric_limits<double>::quiet_NaN();
    double p_mc = std::numeric_limits<double>::quiet_NaN();
    double mc_ci = std::numeric_limits<double>::quiet_NaN();
    bool divergence = false;
    std::string error;
};

// Evaluates every (grid point x architecture pair x mode) cell. Cells run
// concurrently on `workers` threads; row order is deterministic (grid-major,
// then architecture enumeration order, then mode). A failed cell reports its
// error in the row instead of aborting the sweep.
std::vector<SweepRow> sweep_outage(const SweepSpec& spec);

// Energy/secrecy tradeoff sweep over the source power-splitting fraction.
struct RegionSpec {
    SystemParams base;
    std::vector<double> rho_grid;  // nonempty, strictly increasing, in (0,1)
    std::vector<EveMode> modes{EveMode::NonCooperative, EveMode::Cooperative};
    ArchitecturePair arch = kSpSp;
    Side track_eh_side = Side::Main;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 42;
    int workers = 1;

    void validate() const;  // throws std::domain_error
};

struct RegionCurve {
    EveMode mode = EveMode::NonCooperative;
    std::vector<montecarlo::EnergySecrecyPoint> points;
};

// One curve per requested mode; points with a negative secrecy average are
// excluded (the mean of a nonnegative quantity, so normally none are).
std::vector<RegionCurve> region_sweep(const RegionSpec& spec);

// Default 21-point grid over [0.01, 0.99].
std::vector<double> default_rho_grid();

// Trapezoidal area under the (mean_eh, ergodic_secrecy) curve after sorting
// the points by harvested energy.
double region_area(const std::vector<montecarlo::EnergySecrecyPoint>& points);

// Linear interpolation of ergodic secrecy at a given harvested-energy level;
// throws std::domain_error if `eh` lies outside the curve's energy range.
double secrecy_at_matched_eh(const std::vector<montecarlo::EnergySecrecyPoint>& points,
                             double eh);

// Full analytic-vs-simulation cross-check at one parameter point: all eight
// (architecture x cooperation) cases, comparing quadrature, both series
// modes, and the sampling estimate.
struct ValidationCase {
    ArchitecturePair arch = kSpSp;
    EveMode mode = EveMode::NonCooperative;
    OutageEstimate quad;
    OutageEstimate series_rederived;
    OutageEstimate series_published;
    OutageEstimate mc;
    bool series_available = false;   // finite-sum forms need integer shapes
    bool quad_mc_pass = false;       // |quad - mc| <= 3 sigma
    bool series_pass = false;        // |series_rederived - quad| <= 1e-3
    bool published_diverges = false;
    bool mc_sides_with_rederived = false;  // set when published_diverges
};

struct ValidationReport {
    std::vector<ValidationCase> cases;
    bool pass = false;     // every quad_mc_pass and series_pass
    std::string text;      // fixed-format report; identical for equal inputs
};

ValidationReport build_validation_report(const SystemParams& params,
                                         std::uint64_t mc_samples, std::uint64_t seed,
                                         int workers);

}  // namespace experiments
}  // namespace swiptsec
