#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swiptsec/experiments.hpp"
#include "swiptsec/montecarlo.hpp"
#include "swiptsec/outage.hpp"
#include "swiptsec/params_io.hpp"
#include "swiptsec/quadrature.hpp"

namespace {

using namespace swiptsec;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string config = "table1";
    std::vector<std::string> overrides;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 42;
    int workers = 1;
    std::string output = "-";
    bool dump_config = false;
};

void add_common_flags(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config,
                    "Config file path, or 'table1' for the built-in preset");
    sub->add_option("--set", o.overrides, "Parameter override key=value (repeatable)");
    sub->add_option("--mc-samples", o.mc_samples, "Realizations per sampling estimate")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1000000000}));
    sub->add_option("--seed", o.seed, "Sampling seed");
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", o.output, "Output file, '-' for standard output");
    sub->add_flag("--dump-config", o.dump_config,
                  "Print the resolved parameter set and exit");
}

SystemParams resolve_params(const CommonOpts& o) {
    SystemParams p = o.config == "table1" ? params_io::table1_preset()
                                          : params_io::parse_config_file(o.config);
    for (const std::string& ov : o.overrides)
        params_io::apply_override(p, ov);
    p.validate();
    return p;
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path == "-") {
        fn(std::cout);
        return kExitOk;
    }
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + path + "'");
    fn(out);
    return kExitOk;
}

std::vector<ArchitecturePair> parse_arch(const std::string& s, bool allow_all) {
    static const std::map<std::string, ArchitecturePair> table = {
        {"sp-sp", kSpSp}, {"sp-in", kSpIn}, {"in-sp", kInSp}, {"in-in", kInIn}};
    if (s == "all") {
        if (!allow_all)
            throw std::invalid_argument("--arch all is not valid here; pick one pair");
        return {kSpSp, kSpIn, kInSp, kInIn};
    }
    const auto it = table.find(s);
    if (it == table.end())
        throw std::invalid_argument("unknown --arch '" + s + "'");
    return {it->second};
}

std::vector<EveMode> parse_mode(const std::string& s) {
    if (s == "noncoop")
        return {EveMode::NonCooperative};
    if (s == "coop")
        return {EveMode::Cooperative};
    if (s == "both")
        return {EveMode::NonCooperative, EveMode::Cooperative};
    throw std::invalid_argument("unknown --mode '" + s + "'");
}

struct MethodSel {
    bool quad = false;
    bool series = false;
    bool mc = false;
};

MethodSel parse_method(const std::string& s) {
    if (s == "quad")
        return {true, false, false};
    if (s == "series")
        return {true, true, false};
    if (s == "mc")
        return {true, false, true};
    if (s == "all")
        return {true, true, true};
    throw std::invalid_argument("unknown --method '" + s + "'");
}

std::vector<double> parse_grid(const std::string& s) {
    // "start:stop:count" inclusive linear grid
    double start = 0.0, stop = 0.0;
    long count = 0;
    const int got = std::sscanf(s.c_str(), "%lf:%lf:%ld", &start, &stop, &count);
    if (got != 3 || count < 1)
        throw std::invalid_argument("grid '" + s + "' must look like start:stop:count");
    if (count == 1)
        return {start};
    if (!(stop > start))
        throw std::invalid_argument("grid '" + s + "': stop must exceed start");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        g.push_back(start + (stop - start) * static_cast<double>(i) /
                                static_cast<double>(count - 1));
    return g;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string arch_name(ArchitecturePair a) {
    return std::string(to_string(a.src)) + "-" + to_string(a.eve);
}

int run_outage(const CommonOpts& o, const std::string& arch_s, const std::string& mode_s,
               const std::string& method_s) {
    const SystemParams p = resolve_params(o);
    if (o.dump_config)
        return with_output(o.output, [&](std::ostream& out) { out << params_io::dump_config(p); });
    const auto archs = parse_arch(arch_s, true);
    const auto modes = parse_mode(mode_s);
    const MethodSel sel = parse_method(method_s);

    return with_output(o.output, [&](std::ostream& out) {
        for (const ArchitecturePair arch : archs) {
            for (const EveMode mode : modes) {
                if (sel.quad) {
                    const OutageEstimate e = outage_quadrature(p, arch, mode);
                    out << "arch=" << arch_name(arch) << " mode=" << to_string(mode)
                        << " method=quadrature p=" << format_double(e.value)
                        << " integration_error=" << format_double(e.integration_error)
                        << "\n";
                }
                if (sel.series) {
                    try {
                        const OutageEstimate e =
                            outage_series(p, arch, mode, SeriesVariant::Rederived);
                        out << "arch=" << arch_name(arch) << " mode=" << to_string(mode)
                            << " method=series p=" << format_double(e.value)
                            << " divergence=" << (e.divergence ? "true" : "false") << "\n";
                    } catch (const SeriesUnsupportedError& e) {
                        out << "arch=" << arch_name(arch) << " mode=" << to_string(mode)
                            << " method=series p=nan note=\"" << e.what() << "\"\n";
                    }
                }
                if (sel.mc) {
                    montecarlo::SimSpec sim;
                    sim.params = p;
                    sim.arch = arch;
                    sim.mode = mode;
                    sim.n_samples = o.mc_samples;
                    sim.seed = o.seed;
                    sim.workers = o.workers;
                    const OutageEstimate e = montecarlo::simulate_outage(sim);
                    out << "arch=" << arch_name(arch) << " mode=" << to_string(mode)
                        << " method=mc p=" << format_double(e.value)
                        << " ci=" << format_double(e.ci_halfwidth) << "\n";
                }
            }
        }
    });
}

int run_sweep(const CommonOpts& o, const std::string& axis, const std::string& grid_s,
              const std::string& arch_s, const std::string& mode_s,
              const std::string& method_s) {
    experiments::SweepSpec spec;
    spec.base = resolve_params(o);
    if (o.dump_config)
        return with_output(o.output,
                           [&](std::ostream& out) { out << params_io::dump_config(spec.base); });
    spec.axis = axis;
    spec.grid = parse_grid(grid_s);
    spec.arch_cases = parse_arch(arch_s, true);
    spec.modes = parse_mode(mode_s);
    const MethodSel sel = parse_method(method_s);
    spec.with_series = sel.series;
    spec.with_mc = sel.mc;
    spec.mc_samples = o.mc_samples;
    spec.seed = o.seed;
    spec.workers = o.workers;

    const std::vector<experiments::SweepRow> rows = experiments::sweep_outage(spec);
    for (const auto& row : rows)
        if (!row.error.empty())
            std::cerr << "sweep cell failed (axis_value=" << format_double(row.axis_value)
                      << " arch=" << arch_name(row.arch) << " mode=" << to_string(row.mode)
                      << "): " << row.error << "\n";

    return with_output(o.output, [&](std::ostream& out) {
        out << "axis,axis_value,arch_s,arch_e,mode,p_quad,p_series,p_mc,mc_ci,divergence\n";
        for (const auto& row : rows) {
            out << axis << ',' << format_double(row.axis_value) << ','
                << to_string(row.arch.src) << ',' << to_string(row.arch.eve) << ','
                << to_string(row.mode) << ',' << format_double(row.p_quadrature) << ','
                << format_double(row.p_series) << ',' << format_double(row.p_mc) << ','
                << format_double(row.mc_ci) << ',' << (row.divergence ? "true" : "false")
                << "\n";
        }
    });
}

int run_region(const CommonOpts& o, const std::string& grid_s, const std::string& arch_s,
               const std::string& mode_s, const std::string& track_s) {
    experiments::RegionSpec spec;
    spec.base = resolve_params(o);
    if (o.dump_config)
        return with_output(o.output,
                           [&](std::ostream& out) { out << params_io::dump_config(spec.base); });
    spec.rho_grid = grid_s.empty() ? experiments::default_rho_grid() : parse_grid(grid_s);
    spec.arch = parse_arch(arch_s, false).front();
    spec.modes = parse_mode(mode_s);
    if (track_s == "main")
        spec.track_eh_side = Side::Main;
    else if (track_s == "eve")
        spec.track_eh_side = Side::Eve;
    else
        throw std::invalid_argument("unknown --track-eh '" + track_s + "'");
    spec.mc_samples = o.mc_samples;
    spec.seed = o.seed;
    spec.workers = o.workers;

    const auto curves = experiments::region_sweep(spec);
    return with_output(o.output, [&](std::ostream& out) {
        out << "rho_s,mode,mean_eh,eh_ci,ergodic_secrecy,secrecy_ci,outage,outage_ci\n";
        for (const auto& curve : curves) {
            for (const auto& pt : curve.points) {
                out << format_double(pt.rho_s) << ',' << to_string(curve.mode) << ','
                    << format_double(pt.mean_eh) << ',' << format_double(pt.eh_ci) << ','
                    << format_double(pt.ergodic_secrecy) << ','
                    << format_double(pt.secrecy_ci) << ',' << format_double(pt.outage)
                    << ',' << format_double(pt.outage_ci) << "\n";
            }
        }
    });
}

int run_validate(const CommonOpts& o) {
    const SystemParams p = resolve_params(o);
    if (o.dump_config)
        return with_output(o.output, [&](std::ostream& out) { out << params_io::dump_config(p); });
    const experiments::ValidationReport report =
        experiments::build_validation_report(p, o.mc_samples, o.seed, o.workers);
    with_output(o.output, [&](std::ostream& out) { out << report.text; });
    return report.pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage and harvested energy for a power-splitting downlink "
                 "with multiple eavesdroppers"};
    app.require_subcommand(1);

    CommonOpts outage_opts, sweep_opts, region_opts, validate_opts;
    std::string outage_arch = "all", outage_mode = "both", outage_method = "quad";
    std::string sweep_axis, sweep_grid, sweep_arch = "all", sweep_mode = "both",
                sweep_method = "quad";
    std::string region_grid, region_arch = "sp-sp", region_mode = "both",
                region_track = "main";

    CLI::App* c_outage = app.add_subcommand("outage", "Outage probability at one point");
    add_common_flags(c_outage, outage_opts);
    c_outage->add_option("--arch", outage_arch, "sp-sp|sp-in|in-sp|in-in|all");
    c_outage->add_option("--mode", outage_mode, "noncoop|coop|both");
    c_outage->add_option("--method", outage_method, "quad|series|mc|all");

    CLI::App* c_sweep = app.add_subcommand("sweep", "Outage sweep over a parameter axis");
    add_common_flags(c_sweep, sweep_opts);
    c_sweep->add_option("--axis", sweep_axis, "Parameter key, _db suffix allowed")
        ->required();
    c_sweep->add_option("--grid", sweep_grid, "start:stop:count")->required();
    c_sweep->add_option("--arch", sweep_arch, "sp-sp|sp-in|in-sp|in-in|all");
    c_sweep->add_option("--mode", sweep_mode, "noncoop|coop|both");
    c_sweep->add_option("--method", sweep_method, "quad|series|mc|all");

    CLI::App* c_region = app.add_subcommand("region", "Energy/secrecy tradeoff sweep");
    add_common_flags(c_region, region_opts);
    c_region->add_option("--grid", region_grid, "rho_s grid start:stop:count");
    c_region->add_option("--arch", region_arch, "sp-sp|sp-in|in-sp|in-in");
    c_region->add_option("--mode", region_mode, "noncoop|coop|both");
    c_region->add_option("--track-eh", region_track, "main|eve");

    CLI::App* c_validate =
        app.add_subcommand("validate", "Analytic-vs-simulation report, all eight cases");
    add_common_flags(c_validate, validate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_outage->parsed())
            return run_outage(outage_opts, outage_arch, outage_mode, outage_method);
        if (c_sweep->parsed())
            return run_sweep(sweep_opts, sweep_axis, sweep_grid, sweep_arch, sweep_mode,
                             sweep_method);
        if (c_region->parsed())
            return run_region(region_opts, region_grid, region_arch, region_mode,
                              region_track);
        if (c_validate->parsed())
            return run_validate(validate_opts);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const quadrature::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
