#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "swiptsec/experiments.hpp"
#include "swiptsec/params_io.hpp"

using namespace swiptsec;
using experiments::RegionSpec;
using experiments::SweepRow;
using experiments::SweepSpec;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i)
        g.push_back(a + (b - a) * i / (n - 1));
    return g;
}

}  // namespace

TEST_CASE("sweep emits grid-major rows in deterministic order") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "gbar_s_db";
    spec.grid = linspace(0.0, 50.0, 21);
    spec.with_series = false;
    spec.workers = 4;
    const auto rows = experiments::sweep_outage(spec);
    REQUIRE(rows.size() == 21u * 4u * 2u);

    std::size_t idx = 0;
    for (int gi = 0; gi < 21; ++gi) {
        for (int ai = 0; ai < 4; ++ai) {
            for (int mi = 0; mi < 2; ++mi, ++idx) {
                const SweepRow& row = rows[idx];
                CHECK(row.axis_value == doctest::Approx(spec.grid[gi]));
                CHECK(row.arch.src == spec.arch_cases[ai].src);
                CHECK(row.arch.eve == spec.arch_cases[ai].eve);
                CHECK(row.mode == spec.modes[mi]);
                CHECK(row.error.empty());
                CHECK(row.p_quadrature >= 0.0);
                CHECK(row.p_quadrature <= 1.0);
                CHECK(std::isnan(row.p_series));
                CHECK(std::isnan(row.p_mc));
            }
        }
    }
}

TEST_CASE("architecture ordering holds at every power level in both modes") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "gbar_s_db";
    spec.grid = linspace(0.0, 50.0, 11);
    spec.with_series = false;
    spec.workers = 4;
    const auto rows = experiments::sweep_outage(spec);
    // rows per grid point: 4 arch x 2 modes, arch order sp-sp, sp-in, in-sp, in-in
    for (std::size_t g = 0; g < 11; ++g) {
        for (int mode_i = 0; mode_i < 2; ++mode_i) {
            const double spsp = rows[g * 8 + 0 * 2 + mode_i].p_quadrature;
            const double spin = rows[g * 8 + 1 * 2 + mode_i].p_quadrature;
            const double insp = rows[g * 8 + 2 * 2 + mode_i].p_quadrature;
            const double inin = rows[g * 8 + 3 * 2 + mode_i].p_quadrature;
            CHECK(spin <= spsp + 1e-9);
            CHECK(spin <= inin + 1e-9);
            CHECK(insp >= spsp - 1e-9);
            CHECK(insp >= inin - 1e-9);
        }
        // cooperation only hurts
        for (int ai = 0; ai < 4; ++ai)
            CHECK(rows[g * 8 + ai * 2 + 1].p_quadrature >=
                  rows[g * 8 + ai * 2 + 0].p_quadrature - 1e-9);
    }
}

TEST_CASE("outage falls as the source keeps more power for decoding") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.base.rho_e = 0.5;
    spec.axis = "rho_s";
    spec.grid = linspace(0.1, 0.9, 9);
    spec.arch_cases = {kSpSp};
    spec.modes = {EveMode::NonCooperative};
    spec.with_series = false;
    const auto rows = experiments::sweep_outage(spec);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].p_quadrature <= rows[i - 1].p_quadrature + 1e-9);
}

TEST_CASE("outage falls as the taps' estimates degrade") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "delta_e";
    spec.grid = {0.001, 0.1, 0.2, 0.3, 0.4};
    spec.arch_cases = {kInIn};
    spec.modes = {EveMode::Cooperative};
    spec.with_series = false;
    const auto rows = experiments::sweep_outage(spec);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].p_quadrature <= rows[i - 1].p_quadrature + 1e-9);
}

TEST_CASE("series column obeys the divergence contract") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "r_s";
    spec.grid = {0.5, 1.0, 2.0};
    spec.with_series = true;
    spec.workers = 4;
    const auto rows = experiments::sweep_outage(spec);
    for (const auto& row : rows) {
        REQUIRE(row.error.empty());
        REQUIRE_FALSE(std::isnan(row.p_series));
        if (!row.divergence)
            CHECK(std::abs(row.p_series - row.p_quadrature) <= 1e-3);
    }
}

TEST_CASE("non-integer fading figure silently drops the series column") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.base.m_s = 1.7;
    spec.axis = "r_s";
    spec.grid = {1.0};
    spec.arch_cases = {kSpSp};
    const auto rows = experiments::sweep_outage(spec);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.error.empty());
        CHECK_FALSE(std::isnan(row.p_quadrature));
        CHECK(std::isnan(row.p_series));
    }
}

TEST_CASE("a failing cell reports its error and leaves the rest intact") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "delta_s";
    spec.grid = {0.1, 0.5, 1.5};  // the last value violates delta < 1
    spec.arch_cases = {kSpSp};
    spec.modes = {EveMode::NonCooperative};
    spec.with_series = false;
    const auto rows = experiments::sweep_outage(spec);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].error.empty());
    CHECK(rows[1].error.empty());
    CHECK_FALSE(rows[2].error.empty());
    CHECK(std::isnan(rows[2].p_quadrature));
    CHECK(rows[0].p_quadrature >= 0.0);
}

TEST_CASE("requested sampling column lands near the analytic one") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "r_s";
    spec.grid = {1.0};
    spec.arch_cases = {kSpSp, kInIn};
    spec.with_series = false;
    spec.with_mc = true;
    spec.mc_samples = 10000;
    spec.seed = 4;
    spec.workers = 4;
    const auto rows = experiments::sweep_outage(spec);
    for (const auto& row : rows) {
        REQUIRE_FALSE(std::isnan(row.p_mc));
        REQUIRE(row.mc_ci > 0.0);
        CHECK(std::abs(row.p_mc - row.p_quadrature) <= 4.0 / 1.959963984540054 * row.mc_ci);
    }
}

TEST_CASE("sweep results do not depend on the worker count") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "gbar_s_db";
    spec.grid = linspace(0.0, 50.0, 6);
    spec.with_mc = true;
    spec.mc_samples = 2000;
    spec.workers = 1;
    const auto rows1 = experiments::sweep_outage(spec);
    spec.workers = 8;
    const auto rows8 = experiments::sweep_outage(spec);
    REQUIRE(rows1.size() == rows8.size());
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].p_quadrature == rows8[i].p_quadrature);
        CHECK(rows1[i].p_series == rows8[i].p_series);
        CHECK(rows1[i].p_mc == rows8[i].p_mc);
        CHECK(rows1[i].mc_ci == rows8[i].mc_ci);
    }
}

TEST_CASE("sweep spec validation rejects bad grids and axes") {
    SweepSpec spec;
    spec.base = params_io::table1_preset();
    spec.axis = "r_s";
    spec.grid = {};
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec.grid = {2.0, 1.0};
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec.grid = {1.0, 2.0};
    spec.axis = "bogus";
    CHECK_THROWS(spec.validate());
    spec.axis = "r_s";
    spec.validate();
}

TEST_CASE("default splitting grid spans (0,1) with 21 points") {
    const auto grid = experiments::default_rho_grid();
    REQUIRE(grid.size() == 21);
    CHECK(grid.front() == doctest::Approx(0.01));
    CHECK(grid.back() == doctest::Approx(0.99));
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("region sweep produces ordered tradeoff curves") {
    RegionSpec spec;
    spec.base = params_io::table1_preset();
    spec.base.rho_e = 0.5;
    spec.rho_grid = linspace(0.05, 0.95, 10);
    spec.mc_samples = 20000;
    spec.seed = 3;
    spec.workers = 4;
    const auto curves = experiments::region_sweep(spec);
    REQUIRE(curves.size() == 2);
    CHECK(curves[0].mode == EveMode::NonCooperative);
    CHECK(curves[1].mode == EveMode::Cooperative);
    for (const auto& curve : curves) {
        REQUIRE(curve.points.size() == 10);
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const auto& pt = curve.points[i];
            CHECK(pt.rho_s == doctest::Approx(spec.rho_grid[i]));
            CHECK(pt.mean_eh >= 0.0);
            CHECK(pt.ergodic_secrecy >= 0.0);
            if (i > 0)  // harvest falls as decoding share rises
                CHECK(pt.mean_eh < curve.points[i - 1].mean_eh);
        }
    }
    // Collusion shrinks the achievable region.
    const double area_non = experiments::region_area(curves[0].points);
    const double area_coop = experiments::region_area(curves[1].points);
    CHECK(area_non > 0.0);
    CHECK(area_coop > 0.0);
    CHECK(area_coop < area_non);
}

TEST_CASE("region sweep is deterministic across worker counts") {
    RegionSpec spec;
    spec.base = params_io::table1_preset();
    spec.rho_grid = linspace(0.2, 0.8, 5);
    spec.mc_samples = 5000;
    spec.seed = 12;
    spec.workers = 1;
    const auto a = experiments::region_sweep(spec);
    spec.workers = 6;
    const auto b = experiments::region_sweep(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
        REQUIRE(a[c].points.size() == b[c].points.size());
        for (std::size_t i = 0; i < a[c].points.size(); ++i) {
            CHECK(a[c].points[i].mean_eh == b[c].points[i].mean_eh);
            CHECK(a[c].points[i].ergodic_secrecy == b[c].points[i].ergodic_secrecy);
            CHECK(a[c].points[i].outage == b[c].points[i].outage);
        }
    }
}

TEST_CASE("secrecy interpolation at matched harvest level") {
    std::vector<montecarlo::EnergySecrecyPoint> pts(3);
    pts[0].mean_eh = 10.0;
    pts[0].ergodic_secrecy = 5.0;
    pts[1].mean_eh = 20.0;
    pts[1].ergodic_secrecy = 3.0;
    pts[2].mean_eh = 40.0;
    pts[2].ergodic_secrecy = 1.0;
    CHECK(experiments::secrecy_at_matched_eh(pts, 15.0) == doctest::Approx(4.0));
    CHECK(experiments::secrecy_at_matched_eh(pts, 30.0) == doctest::Approx(2.0));
    CHECK(experiments::secrecy_at_matched_eh(pts, 40.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(experiments::secrecy_at_matched_eh(pts, 50.0), std::domain_error);
    CHECK_THROWS_AS(experiments::secrecy_at_matched_eh(pts, 5.0), std::domain_error);

    const double area = experiments::region_area(pts);
    CHECK(area == doctest::Approx(0.5 * 10.0 * (5.0 + 3.0) + 0.5 * 20.0 * (3.0 + 1.0)));
}

TEST_CASE("validation report covers all eight cases deterministically") {
    const SystemParams p = params_io::table1_preset();
    const auto r1 = experiments::build_validation_report(p, 10000, 3, 1);
    const auto r4 = experiments::build_validation_report(p, 10000, 3, 4);
    CHECK(r1.text == r4.text);
    REQUIRE(r1.cases.size() == 8);

    int diverging = 0;
    for (const auto& vc : r1.cases) {
        CHECK(vc.series_available);
        CHECK(vc.quad_mc_pass);
        CHECK(vc.series_pass);
        if (vc.published_diverges) {
            ++diverging;
            CHECK(vc.mc_sides_with_rederived);
        }
    }
    CHECK(diverging == 6);
    CHECK(r1.pass);
    CHECK(r1.text.find("DIVERGES") != std::string::npos);
    CHECK(r1.text.find("PASS") != std::string::npos);
}

TEST_CASE("validation report tolerates non-integer shapes") {
    SystemParams p = params_io::table1_preset();
    p.m_e = 1.5;
    const auto r = experiments::build_validation_report(p, 5000, 9, 4);
    REQUIRE(r.cases.size() == 8);
    for (const auto& vc : r.cases) {
        CHECK_FALSE(vc.series_available);
        CHECK(vc.quad_mc_pass);
    }
    CHECK(r.text.find("n/a") != std::string::npos);
}
