#include <doctest.h>

#include <cmath>
#include <limits>

#include "swiptsec/outage.hpp"
#include "swiptsec/params_io.hpp"

using namespace swiptsec;

namespace {

// Reference outage values at the table1 preset, frozen from an independent
// numerical oracle (different quadrature scheme, different gamma-function
// implementation).
struct Reference {
    ArchitecturePair arch;
    EveMode mode;
    double p;
};

const Reference kReference[] = {
    {kSpSp, EveMode::NonCooperative, 0.3611305021419965},
    {kSpIn, EveMode::NonCooperative, 0.16261445908535044},
    {kInSp, EveMode::NonCooperative, 0.5890611144113912},
    {kInIn, EveMode::NonCooperative, 0.33140541692694137},
    {kSpSp, EveMode::Cooperative, 0.7952384052027268},
    {kSpIn, EveMode::Cooperative, 0.56538205067707},
    {kInSp, EveMode::Cooperative, 0.9318781783785343},
    {kInIn, EveMode::Cooperative, 0.7820287717169055},
};

}  // namespace

TEST_CASE("rate laws of the two receiver architectures") {
    CHECK(channel_rate(1.0, Architecture::Separated) == doctest::Approx(1.0));
    CHECK(channel_rate(0.0, Architecture::Separated) == 0.0);
    CHECK(channel_rate(3.0, Architecture::Separated) == doctest::Approx(2.0));

    const double c = kIntegratedRateConst;
    CHECK(c == doctest::Approx(0.657744623479457).epsilon(1e-12));
    CHECK(channel_rate(1.0 / c, Architecture::Integrated) == doctest::Approx(0.0));
    CHECK(channel_rate(2.0 / c, Architecture::Integrated) == doctest::Approx(1.0));
    CHECK(channel_rate(0.0, Architecture::Integrated) ==
          -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(channel_rate(-1.0, Architecture::Separated), std::domain_error);
}

TEST_CASE("secrecy rate clamps at zero and handles degenerate taps") {
    CHECK(secrecy_rate(3.0, 1.0, kSpSp) == doctest::Approx(1.0));
    CHECK(secrecy_rate(1.0, 3.0, kSpSp) == 0.0);
    CHECK(secrecy_rate(5.0, 5.0, kInIn) == 0.0);
    // A zero-SNR integrated tap decodes nothing (rate -> -inf): the secrecy
    // rate blows up and the realization can never be in outage.
    CHECK(std::isinf(secrecy_rate(3.0, 0.0, kSpIn)));
    CHECK(secrecy_rate(3.0, 0.0, kSpIn) > 0.0);
    // At chi_e = 1/C the integrated tap's rate is exactly zero.
    CHECK(secrecy_rate(3.0, 1.0 / kIntegratedRateConst, kSpIn) == doctest::Approx(2.0));
    // A zero-SNR integrated source transmits nothing.
    CHECK(secrecy_rate(0.0, 1.0, kInSp) == 0.0);
}

TEST_CASE("outage SNR thresholds take the four architecture-specific forms") {
    const double c = kIntegratedRateConst;
    const double g = 5.0, rs = 1.0;
    CHECK(snr_threshold(g, kSpSp, rs) == doctest::Approx(2.0 * 6.0 - 1.0));
    CHECK(snr_threshold(g, kSpIn, rs) == doctest::Approx(2.0 * 5.0 * c - 1.0));
    CHECK(snr_threshold(g, kInSp, rs) == doctest::Approx(2.0 * 6.0 / c));
    CHECK(snr_threshold(g, kInIn, rs) == doctest::Approx(2.0 * 5.0));
    CHECK_THROWS_AS(snr_threshold(-1.0, kSpSp, 1.0), std::domain_error);
    CHECK_THROWS_AS(snr_threshold(1.0, kSpSp, 0.0), std::domain_error);
}

TEST_CASE("threshold ordering holds pointwise for every eavesdropper SNR") {
    // Sp-In demands the least from the main link, In-Sp the most.
    for (double rs : {0.5, 1.0, 2.0}) {
        for (double g : {0.0, 0.3, 1.0, 4.0, 25.0, 400.0}) {
            const double t_spin = snr_threshold(g, kSpIn, rs);
            const double t_inin = snr_threshold(g, kInIn, rs);
            const double t_spsp = snr_threshold(g, kSpSp, rs);
            const double t_insp = snr_threshold(g, kInSp, rs);
            CHECK(t_spin < t_inin + 1e-12);
            CHECK(t_inin < t_spsp + 1e-12);
            CHECK(t_spsp < t_insp + 1e-12);
        }
    }
}

TEST_CASE("quadrature matches the frozen independent oracle on all eight cases") {
    const SystemParams p = params_io::table1_preset();
    for (const auto& ref : kReference) {
        const OutageEstimate est = outage_quadrature(p, ref.arch, ref.mode);
        CHECK_MESSAGE(std::abs(est.value - ref.p) <= 1e-7, to_string(ref.arch.src), "-",
                      to_string(ref.arch.eve), " ", to_string(ref.mode), ": got ",
                      est.value, " want ", ref.p);
        CHECK(est.method == Method::quadrature);
        CHECK(est.integration_error <= 1e-6);
        CHECK(est.value >= 0.0);
        CHECK(est.value <= 1.0);
    }
}

TEST_CASE("rederived series tracks quadrature on all eight cases") {
    const SystemParams p = params_io::table1_preset();
    for (const auto& ref : kReference) {
        const OutageEstimate quad = outage_quadrature(p, ref.arch, ref.mode);
        const OutageEstimate ser =
            outage_series(p, ref.arch, ref.mode, SeriesVariant::Rederived);
        CHECK_MESSAGE(std::abs(ser.value - quad.value) <= 1e-3, to_string(ref.arch.src),
                      "-", to_string(ref.arch.eve), " ", to_string(ref.mode),
                      ": series ", ser.value, " quad ", quad.value);
        CHECK_FALSE(ser.divergence);
        CHECK(ser.method == Method::series_rederived);
    }
}

TEST_CASE("as-published series divergence fingerprint at the reference preset") {
    const SystemParams p = params_io::table1_preset();

    struct Expect {
        ArchitecturePair arch;
        EveMode mode;
        bool diverges;
    };
    const Expect table[] = {
        // Complement-form printing flips these two far from the event value.
        {kSpSp, EveMode::NonCooperative, true},
        {kSpIn, EveMode::NonCooperative, true},
        // These two coincide with the rederived sums when the per-link shape
        // has unit factorial weight (m_e = 2), up to a negligible truncation.
        {kInSp, EveMode::NonCooperative, false},
        {kInIn, EveMode::NonCooperative, false},
        // Wrong inner shape / swapped kernel roles stray in all four.
        {kSpSp, EveMode::Cooperative, true},
        {kSpIn, EveMode::Cooperative, true},
        {kInSp, EveMode::Cooperative, true},
        {kInIn, EveMode::Cooperative, true},
    };

    for (const auto& e : table) {
        const OutageEstimate pub =
            outage_series(p, e.arch, e.mode, SeriesVariant::AsPublished);
        CHECK_MESSAGE(pub.divergence == e.diverges, to_string(e.arch.src), "-",
                      to_string(e.arch.eve), " ", to_string(e.mode),
                      " published raw = ", pub.raw_value);
    }

    // The truncated lower limit drops only invisible mass here.
    const OutageEstimate red_inin =
        outage_series(p, kInIn, EveMode::NonCooperative, SeriesVariant::Rederived);
    const OutageEstimate pub_inin =
        outage_series(p, kInIn, EveMode::NonCooperative, SeriesVariant::AsPublished);
    CHECK(std::abs(pub_inin.value - red_inin.value) < 1e-6);

    // The swapped cooperative kernel goes negative; the estimate clamps and
    // keeps the raw value for inspection.
    const OutageEstimate pub_coop_inin =
        outage_series(p, kInIn, EveMode::Cooperative, SeriesVariant::AsPublished);
    CHECK(pub_coop_inin.raw_value == doctest::Approx(-0.07542056399069916).epsilon(1e-5));
    CHECK(pub_coop_inin.value == 0.0);
}

TEST_CASE("single eavesdropper collapses cooperation and series agree tightly") {
    SystemParams p = params_io::table1_preset();
    p.n_eves = 1;
    for (const ArchitecturePair arch : kAllArchPairs) {
        const OutageEstimate qn = outage_quadrature(p, arch, EveMode::NonCooperative);
        const OutageEstimate qc = outage_quadrature(p, arch, EveMode::Cooperative);
        CHECK(std::abs(qn.value - qc.value) <= 1e-9);
        for (EveMode mode : {EveMode::NonCooperative, EveMode::Cooperative}) {
            const OutageEstimate ser = outage_series(p, arch, mode, SeriesVariant::Rederived);
            CHECK(std::abs(ser.value - qn.value) <= 1e-6);
        }
    }
}

TEST_CASE("cooperation never helps the defender") {
    const SystemParams p = params_io::table1_preset();
    for (const ArchitecturePair arch : kAllArchPairs) {
        const double pn = outage_quadrature(p, arch, EveMode::NonCooperative).value;
        const double pc = outage_quadrature(p, arch, EveMode::Cooperative).value;
        CHECK(pc >= pn - 1e-9);
    }
}

TEST_CASE("outage is nondecreasing in the target rate") {
    SystemParams p = params_io::table1_preset();
    double prev_non = -1.0, prev_coop = -1.0;
    for (double rs : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        p.r_s = rs;
        const double pn = outage_quadrature(p, kSpSp, EveMode::NonCooperative).value;
        const double pc = outage_quadrature(p, kInIn, EveMode::Cooperative).value;
        CHECK(pn >= prev_non - 1e-9);
        CHECK(pc >= prev_coop - 1e-9);
        prev_non = pn;
        prev_coop = pc;
    }
}

TEST_CASE("estimation error induces a high-power outage floor") {
    // Scale-free flatness: relative change per dB of link power is tiny at
    // high power when the estimate error caps the effective SNR.
    SystemParams p = params_io::table1_preset();
    params_io::apply_axis(p, "gbar_s_db", 40.0);
    const double p40 = outage_quadrature(p, kSpSp, EveMode::NonCooperative).value;
    params_io::apply_axis(p, "gbar_s_db", 60.0);
    const double p60 = outage_quadrature(p, kSpSp, EveMode::NonCooperative).value;
    const double per_db = std::abs(p40 - p60) / (p40 * 20.0);
    CHECK(per_db < 1e-3);
    CHECK(p40 > 0.3);  // the floor is a plateau, not decay to zero
    CHECK(p60 > 0.3);
}

TEST_CASE("series handles the negative-threshold region of the Sp-In pair") {
    SystemParams p = params_io::table1_preset();
    p.r_s = 6.0;  // wide band of eavesdropper SNRs below decodability
    const OutageEstimate quad = outage_quadrature(p, kSpIn, EveMode::NonCooperative);
    const OutageEstimate ser =
        outage_series(p, kSpIn, EveMode::NonCooperative, SeriesVariant::Rederived);
    CHECK(quad.value > 0.99);
    CHECK(std::abs(ser.value - quad.value) <= 1e-3);
    CHECK_FALSE(ser.divergence);
}

TEST_CASE("series demands integer fading figures") {
    SystemParams p = params_io::table1_preset();
    p.m_s = 2.5;
    CHECK_THROWS_AS(outage_series(p, kSpSp, EveMode::NonCooperative),
                    SeriesUnsupportedError);
    p.m_s = 2.0;
    p.m_e = 0.5;
    CHECK_THROWS_AS(outage_series(p, kInIn, EveMode::Cooperative),
                    SeriesUnsupportedError);
    // Quadrature has no such restriction.
    CHECK(outage_quadrature(p, kInIn, EveMode::Cooperative).value >= 0.0);
}

TEST_CASE("degenerate splitting fraction is rejected with a clear error") {
    SystemParams p = params_io::table1_preset();
    p.rho_s = 0.0;
    CHECK_THROWS_AS(outage_quadrature(p, kSpSp, EveMode::NonCooperative),
                    std::domain_error);
}

TEST_CASE("kernel identities against closed forms") {
    SystemParams unit;  // defaults: m_s = m_e = 1, single eavesdropper
    unit.n_eves = 1;
    const KernelArg ident = [](double g) { return g; };

    // exp(-g) * Gamma(1, g) integrates to 1/2; an extra factor gives 1/3.
    CHECK(kernel_M(unit, 0, ident, ident) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(kernel_M(unit, 1, ident, ident) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    // With no eavesdropper factor the T kernel is a plain upper gamma tail.
    SystemParams ref = params_io::table1_preset();
    const double beta_s = 0.08806936040058491;
    const KernelArg arg_s = [beta_s](double g) { return beta_s * g / 2.0; };
    const double lower = 2.0;
    const double expect = (1.0 + beta_s * lower) * std::exp(-beta_s * lower) /
                          (beta_s * beta_s);  // Gamma(2, x) = (1+x) e^{-x}
    CHECK(kernel_T(ref, 0, ident, arg_s, lower) ==
          doctest::Approx(expect).epsilon(1e-8));

    // Single-link cooperative kernels reduce to the same exponential product.
    CHECK(kernel_U(unit, ident, ident, SeriesVariant::Rederived) ==
          doctest::Approx(0.5).epsilon(1e-8));
    CHECK(kernel_U(unit, ident, ident, SeriesVariant::AsPublished) ==
          doctest::Approx(0.5).epsilon(1e-8));
    CHECK(kernel_V(unit, ident, ident, 0.0, SeriesVariant::Rederived) ==
          doctest::Approx(0.5).epsilon(1e-8));

    CHECK_THROWS_AS(kernel_M(unit, -1, ident, ident), std::domain_error);
    CHECK_THROWS_AS(kernel_T(unit, 0, ident, ident, -1.0), std::domain_error);
}

TEST_CASE("name rendering for architectures, modes and methods") {
    CHECK(std::string(to_string(Architecture::Separated)) == "sp");
    CHECK(std::string(to_string(Architecture::Integrated)) == "in");
    CHECK(std::string(to_string(EveMode::NonCooperative)) == "noncoop");
    CHECK(std::string(to_string(EveMode::Cooperative)) == "coop");
    CHECK(std::string(to_string(Method::quadrature)) == "quadrature");
    CHECK(std::string(to_string(Method::monte_carlo)) == "monte_carlo");
}
