#include "swiptsec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swiptsec/params_io.hpp"

namespace swiptsec {
namespace experiments {

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. fn must not throw.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t)
        pool.emplace_back(body);
    for (std::thread& th : pool)
        th.join();
}

void require(bool ok, const char* what) {
    if (!ok)
        throw std::domain_error(what);
}

std::string arch_pair_name(ArchitecturePair arch) {
    return std::string(to_string(arch.src)) + "-" + to_string(arch.eve);
}

void require_strictly_increasing(const std::vector<double>& grid, const char* name) {
    std::ostringstream msg;
    msg << name << " must be nonempty and strictly increasing";
    if (grid.empty())
        throw std::domain_error(msg.str());
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::domain_error(msg.str());
}

}  // namespace

void SweepSpec::validate() const {
    base.validate();
    require(!axis.empty(), "SweepSpec: axis must be set");
    require_strictly_increasing(grid, "SweepSpec: grid");
    require(!arch_cases.empty(), "SweepSpec: arch_cases must be nonempty");
    require(!modes.empty(), "SweepSpec: modes must be nonempty");
    require(workers >= 1, "SweepSpec: workers must be at least 1");
    if (with_mc)
        require(mc_samples >= 1000, "SweepSpec: mc_samples must be at least 1000");
    // Surface unknown axis names and invalid first values up front.
    SystemParams probe = base;
    params_io::apply_axis(probe, axis, grid.front());
    probe.validate();
}

std::vector<SweepRow> sweep_outage(const SweepSpec& spec) {
    spec.validate();
    const std::size_t per_point = spec.arch_cases.size() * spec.modes.size();
    const std::size_t n_rows = spec.grid.size() * per_point;
    std::vector<SweepRow> rows(n_rows);

    auto eval_cell = [&](std::size_t idx) {
        const std::size_t gi = idx / per_point;
        const std::size_t rem = idx % per_point;
        const std::size_t ai = rem / spec.modes.size();
        const std::size_t mi = rem % spec.modes.size();

        SweepRow& row = rows[idx];
        row.axis_value = spec.grid[gi];
        row.arch = spec.arch_cases[ai];
        row.mode = spec.modes[mi];

        SystemParams p = spec.base;
        try {
            params_io::apply_axis(p, spec.axis, row.axis_value);
            p.validate();
            row.p_quadrature = outage_quadrature(p, row.arch, row.mode, spec.convention).value;
        } catch (const std::exception& e) {
            row.error = e.what();
            return;
        }
        if (spec.with_series) {
            try {
                const OutageEstimate s =
                    outage_series(p, row.arch, row.mode, spec.series_variant, spec.convention);
                row.p_series = s.value;
                row.divergence = s.divergence;
            } catch (const SeriesUnsupportedError&) {
                // Non-integer fading figure: no finite-sum form; leave NaN.
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
        if (spec.with_mc) {
            montecarlo::SimSpec sim;
            sim.params = p;
            sim.arch = row.arch;
            sim.mode = row.mode;
            sim.n_samples = spec.mc_samples;
            sim.seed = spec.seed;
            sim.workers = 1;  // cells already run concurrently
            const OutageEstimate mc = montecarlo::simulate_outage(sim);
            row.p_mc = mc.value;
            row.mc_ci = mc.ci_halfwidth;
        }
    };

    parallel_for(n_rows, spec.workers, eval_cell);
    return rows;
}

void RegionSpec::validate() const {
    base.validate();
    require_strictly_increasing(rho_grid, "RegionSpec: rho_grid");
    require(rho_grid.front() > 0.0 && rho_grid.back() < 1.0,
            "RegionSpec: rho_grid values must lie in (0, 1)");
    require(!modes.empty(), "RegionSpec: modes must be nonempty");
    require(mc_samples >= 1000, "RegionSpec: mc_samples must be at least 1000");
    require(workers >= 1, "RegionSpec: workers must be at least 1");
}

std::vector<double> default_rho_grid() {
    std::vector<double> g;
    const int n = 21;
    for (int i = 0; i < n; ++i)
        g.push_back(0.01 + (0.99 - 0.01) * static_cast<double>(i) / (n - 1));
    return g;
}

std::vector<RegionCurve> region_sweep(const RegionSpec& spec) {
    spec.validate();
    std::vector<RegionCurve> curves(spec.modes.size());
    const std::size_t per_mode = spec.rho_grid.size();
    for (std::size_t mi = 0; mi < spec.modes.size(); ++mi) {
        curves[mi].mode = spec.modes[mi];
        curves[mi].points.resize(per_mode);
    }

    auto eval_cell = [&](std::size_t idx) {
        const std::size_t mi = idx / per_mode;
        const std::size_t ri = idx % per_mode;
        montecarlo::SimSpec sim;
        sim.params = spec.base;
        sim.params.rho_s = spec.rho_grid[ri];
        sim.arch = spec.arch;
        sim.mode = spec.modes[mi];
        sim.n_samples = spec.mc_samples;
        sim.seed = spec.seed;
        sim.workers = 1;  // cells already run concurrently
        curves[mi].points[ri] = montecarlo::simulate_energy_secrecy(sim, spec.track_eh_side);
    };
    parallel_for(spec.modes.size() * per_mode, spec.workers, eval_cell);

    for (RegionCurve& c : curves) {
        auto bad = [](const montecarlo::EnergySecrecyPoint& pt) {
            return !(pt.ergodic_secrecy >= 0.0);
        };
        c.points.erase(std::remove_if(c.points.begin(), c.points.end(), bad), c.points.end());
    }
    return curves;
}

double region_area(const std::vector<montecarlo::EnergySecrecyPoint>& points) {
    if (points.size() < 2)
        return 0.0;
    std::vector<montecarlo::EnergySecrecyPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.mean_eh < b.mean_eh; });
    double area = 0.0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        area += 0.5 * (sorted[i].mean_eh - sorted[i - 1].mean_eh) *
                (sorted[i].ergodic_secrecy + sorted[i - 1].ergodic_secrecy);
    return area;
}

double secrecy_at_matched_eh(const std::vector<montecarlo::EnergySecrecyPoint>& points,
                             double eh) {
    if (points.empty())
        throw std::domain_error("secrecy_at_matched_eh: empty curve");
    std::vector<montecarlo::EnergySecrecyPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.mean_eh < b.mean_eh; });
    if (eh < sorted.front().mean_eh || eh > sorted.back().mean_eh)
        throw std::domain_error("secrecy_at_matched_eh: energy level outside curve range");
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const auto& lo = sorted[i - 1];
        const auto& hi = sorted[i];
        if (eh <= hi.mean_eh) {
            const double span = hi.mean_eh - lo.mean_eh;
            if (span <= 0.0)
                return 0.5 * (lo.ergodic_secrecy + hi.ergodic_secrecy);
            const double t = (eh - lo.mean_eh) / span;
            return lo.ergodic_secrecy + t * (hi.ergodic_secrecy - lo.ergodic_secrecy);
        }
    }
    return sorted.back().ergodic_secrecy;
}

ValidationReport build_validation_report(const SystemParams& params,
                                         std::uint64_t mc_samples, std::uint64_t seed,
                                         int workers) {
    params.validate();
    ValidationReport report;
    report.cases.reserve(8);

    for (const ArchitecturePair arch : kAllArchPairs) {
        for (const EveMode mode : {EveMode::NonCooperative, EveMode::Cooperative}) {
            ValidationCase vc;
            vc.arch = arch;
            vc.mode = mode;
            vc.quad = outage_quadrature(params, arch, mode);
            try {
                vc.series_rederived =
                    outage_series(params, arch, mode, SeriesVariant::Rederived);
                vc.series_published =
                    outage_series(params, arch, mode, SeriesVariant::AsPublished);
                vc.series_available = true;
            } catch (const SeriesUnsupportedError&) {
                vc.series_available = false;
            }

            montecarlo::SimSpec sim;
            sim.params = params;
            sim.arch = arch;
            sim.mode = mode;
            sim.n_samples = mc_samples;
            sim.seed = seed;
            sim.workers = workers;
            vc.mc = montecarlo::simulate_outage(sim);

            const double p_hat = vc.mc.value;
            const double sigma =
                std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(mc_samples));
            vc.quad_mc_pass = std::fabs(vc.quad.value - p_hat) <= 3.0 * sigma;
            if (vc.series_available) {
                vc.series_pass =
                    std::fabs(vc.series_rederived.value - vc.quad.value) <= 1e-3;
                vc.published_diverges = vc.series_published.divergence;
                if (vc.published_diverges)
                    vc.mc_sides_with_rederived =
                        std::fabs(vc.series_published.value - p_hat) >
                        std::fabs(vc.series_rederived.value - p_hat);
            }
            report.cases.push_back(vc);
        }
    }

    bool pass = true;
    int quad_mc_ok = 0;
    int series_ok = 0;
    int series_total = 0;
    for (const ValidationCase& vc : report.cases) {
        pass = pass && vc.quad_mc_pass && (!vc.series_available || vc.series_pass);
        quad_mc_ok += vc.quad_mc_pass ? 1 : 0;
        if (vc.series_available) {
            ++series_total;
            series_ok += vc.series_pass ? 1 : 0;
        }
    }
    report.pass = pass;

    std::ostringstream out;
    out << "analytic-vs-simulation validation\n";
    out << "---------------------------------\n";
    out << params_io::dump_config(params);
    out << "mc_samples = " << mc_samples << "\n";
    out << "seed = " << seed << "\n\n";
    out << "arch   mode     p_quad          p_series        p_published     p_mc        "
           "3sigma      checks\n";
    char buf[256];
    for (const ValidationCase& vc : report.cases) {
        const double p_hat = vc.mc.value;
        const double sigma =
            std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(mc_samples));
        char sr[32], sp[32];
        if (vc.series_available) {
            std::snprintf(sr, sizeof(sr), "%-15.10g", vc.series_rederived.value);
            std::snprintf(sp, sizeof(sp), "%-15.10g", vc.series_published.value);
        } else {
            std::snprintf(sr, sizeof(sr), "%-15s", "n/a");
            std::snprintf(sp, sizeof(sp), "%-15s", "n/a");
        }
        std::snprintf(buf, sizeof(buf), "%-6s %-8s %-15.10g %s %s %-11.6g %-11.6g ",
                      arch_pair_name(vc.arch).c_str(), to_string(vc.mode), vc.quad.value,
                      sr, sp, p_hat, 3.0 * sigma);
        out << buf;
        out << "quad-mc:" << (vc.quad_mc_pass ? "PASS" : "FAIL");
        if (vc.series_available) {
            out << " series:" << (vc.series_pass ? "PASS" : "FAIL");
            out << " published:" << (vc.published_diverges ? "DIVERGES" : "OK");
            if (vc.published_diverges)
                out << " arbitration:"
                    << (vc.mc_sides_with_rederived ? "rederived" : "published");
        } else {
            out << " series:n/a";
        }
        out << "\n";
    }
    out << "\nsummary: " << quad_mc_ok << "/8 quadrature-vs-simulation within 3 sigma; "
        << series_ok << "/" << series_total << " rederived series within 1e-3; overall "
        << (pass ? "PASS" : "FAIL") << "\n";
    report.text = out.str();
    return report;
}

}  // namespace experiments
}  // namespace swiptsec
