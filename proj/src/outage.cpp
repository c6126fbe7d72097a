#include "swiptsec/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "swiptsec/quadrature.hpp"

namespace swiptsec {

namespace {

constexpr double kPi = 3.14159265358979323846;

quadrature::Options kernel_options() {
    quadrature::Options opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-300;  // kernels are nonnegative; relative control suffices
    return opt;
}

double binom(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

long long require_integer_shape(double m, const char* name) {
    const double r = std::round(m);
    if (!(std::fabs(m - r) <= 1e-9) || r < 1.0) {
        std::ostringstream msg;
        msg << "outage_series: " << name << " = " << m
            << " is not a positive integer; the finite-sum forms require integer "
               "fading figures (use outage_quadrature instead)";
        throw SeriesUnsupportedError(msg.str());
    }
    return static_cast<long long>(r);
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

const double kIntegratedRateConst = std::sqrt(std::exp(1.0) / (2.0 * kPi));

double channel_rate(double chi, Architecture a) {
    if (!(chi >= 0.0) || !std::isfinite(chi))
        throw std::domain_error("channel_rate: SNR must be finite and nonnegative");
    if (a == Architecture::Separated)
        return std::log2(1.0 + chi);
    if (chi == 0.0)
        return -std::numeric_limits<double>::infinity();
    return std::log2(chi * kIntegratedRateConst);
}

double secrecy_rate(double chi_s, double chi_e, ArchitecturePair arch) {
    const double cs = channel_rate(chi_s, arch.src);
    if (std::isinf(cs))
        return 0.0;
    const double ce = channel_rate(chi_e, arch.eve);
    const double diff = cs - ce;  // ce == -inf means the tap decodes nothing
    return diff > 0.0 ? diff : 0.0;
}

double snr_threshold(double gamma_e, ArchitecturePair arch, double r_s) {
    if (!(gamma_e >= 0.0) || !(r_s > 0.0))
        throw std::domain_error("snr_threshold: need gamma_e >= 0 and r_s > 0");
    const double pow2 = std::exp2(r_s);
    const bool src_sep = arch.src == Architecture::Separated;
    const bool eve_sep = arch.eve == Architecture::Separated;
    if (src_sep && eve_sep)
        return pow2 * (1.0 + gamma_e) - 1.0;
    if (src_sep)
        return pow2 * gamma_e * kIntegratedRateConst - 1.0;
    if (eve_sep)
        return pow2 * (1.0 + gamma_e) / kIntegratedRateConst;
    return pow2 * gamma_e;
}

OutageEstimate outage_quadrature(const SystemParams& p, ArchitecturePair arch,
                                 EveMode mode, CoeffConvention conv) {
    p.validate();
    const LinkDistributions ld = make_link_distributions(p, mode, conv);
    const double rs = p.r_s;

    auto integrand = [&](double g) {
        const double thr = snr_threshold(g, arch, rs);
        if (thr <= 0.0)
            return 0.0;
        const double cdf = specfun::gamma_cdf(thr, ld.main);
        if (cdf == 0.0)
            return 0.0;
        return cdf * std::exp(ln_eve_pdf(ld, g));
    };

    quadrature::Options opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-12;
    const specfun::GammaShapeRate sum_law(ld.eve_single.shape * ld.n_eves,
                                          ld.eve_single.rate);
    opt.initial_width = specfun::gamma_quantile(0.999, sum_law);

    const quadrature::Result res = quadrature::integrate_semi_infinite(integrand, 0.0, opt);

    OutageEstimate est;
    est.method = Method::quadrature;
    est.raw_value = res.value;
    est.value = std::clamp(res.value, 0.0, 1.0);
    est.integration_error = res.error;
    return est;
}

double kernel_M(const SystemParams& p, int w, const KernelArg& arg_e,
                const KernelArg& arg_s) {
    if (w < 0)
        throw std::domain_error("kernel_M: w must be nonnegative");
    p.validate();
    const double me = p.m_e;
    const double ms = p.m_s;
    auto f = [&, w, me, ms](double g) {
        const double ae = std::max(arg_e(g), 0.0);
        const double as = std::max(arg_s(g), 0.0);
        double ln = (me - 1.0) * std::log(g) - me * ae +
                    specfun::ln_upper_incomplete_gamma(ms, ms * as);
        if (w > 0)
            ln += w * specfun::ln_upper_incomplete_gamma(me, me * ae);
        return std::exp(ln);
    };
    return quadrature::integrate_semi_infinite(f, 0.0, kernel_options()).value;
}

double kernel_T(const SystemParams& p, int z, const KernelArg& arg_e,
                const KernelArg& arg_s, double lower) {
    if (z < 0 || !(lower >= 0.0))
        throw std::domain_error("kernel_T: need z >= 0 and lower >= 0");
    p.validate();
    const double me = p.m_e;
    const double ms = p.m_s;
    auto f = [&, z, me, ms](double g) {
        const double ae = std::max(arg_e(g), 0.0);
        const double as = std::max(arg_s(g), 0.0);
        double ln = (ms - 1.0) * std::log(g) - ms * as;
        if (z > 0)
            ln += z * specfun::ln_upper_incomplete_gamma(me, me * ae);
        return std::exp(ln);
    };
    return quadrature::integrate_semi_infinite(f, lower, kernel_options()).value;
}

double kernel_U(const SystemParams& p, const KernelArg& arg_e, const KernelArg& arg_s,
                SeriesVariant variant) {
    p.validate();
    const double me = p.m_e;
    const double ms = p.m_s;
    const double nm_e = static_cast<double>(p.n_eves) * me;
    // Inner regularized factor: the event algebra requires the main-link law
    // Gamma(m_s, .); the printed form carries the stacked shape N m_e.
    const double inner_shape = variant == SeriesVariant::Rederived ? ms : nm_e;
    const double ln_gamma_nm_e = specfun::ln_gamma(nm_e);
    const double ln_gamma_inner = specfun::ln_gamma(inner_shape);
    auto f = [&, me, ms, nm_e](double g) {
        const double ae = std::max(arg_e(g), 0.0);
        const double as = std::max(arg_s(g), 0.0);
        const double ln = (nm_e - 1.0) * std::log(g) - ln_gamma_nm_e - me * ae +
                          specfun::ln_upper_incomplete_gamma(inner_shape, ms * as) -
                          ln_gamma_inner;
        return std::exp(ln);
    };
    return quadrature::integrate_semi_infinite(f, 0.0, kernel_options()).value;
}

double kernel_V(const SystemParams& p, const KernelArg& arg_e, const KernelArg& arg_s,
                double lower, SeriesVariant variant) {
    if (!(lower >= 0.0))
        throw std::domain_error("kernel_V: lower limit must be nonnegative");
    p.validate();
    const double me = p.m_e;
    const double ms = p.m_s;
    const double n = static_cast<double>(p.n_eves);
    auto f_rederived = [&, me, ms, n](double g) {
        const double ae = std::max(arg_e(g), 0.0);
        const double as = std::max(arg_s(g), 0.0);
        const double ln = (ms - 1.0) * std::log(g) - ms * as +
                          specfun::ln_upper_incomplete_gamma(n * me, me * ae) -
                          specfun::ln_gamma(n * me);
        return std::exp(ln);
    };
    // Verbatim printed integrand: the exponential takes the eavesdropper-side
    // argument and the incomplete gamma the main-side one, with shape N m_s.
    auto f_published = [&, me, ms, n](double g) {
        const double ae = std::max(arg_e(g), 0.0);
        const double as = std::max(arg_s(g), 0.0);
        const double ln = (ms - 1.0) * std::log(g) - ms * ae +
                          specfun::ln_upper_incomplete_gamma(n * ms, me * as) -
                          specfun::ln_gamma(n * ms);
        return std::exp(ln);
    };
    const std::function<double(double)> f =
        variant == SeriesVariant::Rederived ? std::function<double(double)>(f_rederived)
                                            : std::function<double(double)>(f_published);
    return quadrature::integrate_semi_infinite(f, lower, kernel_options()).value;
}

OutageEstimate outage_series(const SystemParams& p, ArchitecturePair arch, EveMode mode,
                             SeriesVariant variant, CoeffConvention conv) {
    p.validate();
    require_integer_shape(p.m_s, "m_s");
    require_integer_shape(p.m_e, "m_e");

    const specfun::GammaShapeRate main_law = snr_distribution(p, Side::Main, mode, conv);
    const specfun::GammaShapeRate eve_law =
        snr_distribution(p, Side::Eve, EveMode::NonCooperative, conv);
    const double beta_s = main_law.rate;
    const double beta_e = eve_law.rate;
    const double ms = p.m_s;
    const double me = p.m_e;
    const int n = p.n_eves;
    const double pow2 = std::exp2(p.r_s);
    const double gamma_ms = std::exp(specfun::ln_gamma(ms));
    const double gamma_me = std::exp(specfun::ln_gamma(me));
    const bool rederived = variant == SeriesVariant::Rederived;

    double raw = std::numeric_limits<double>::quiet_NaN();

    if (arch.src == Architecture::Separated) {
        // Integrate over the eavesdropper SNR.
        KernelArg arg_e = [beta_e, me](double g) { return beta_e * g / me; };
        KernelArg arg_s = [beta_s, ms, arch, rs = p.r_s](double g) {
            return beta_s * snr_threshold(g, arch, rs) / ms;
        };
        if (mode == EveMode::NonCooperative) {
            double sum = 0.0;
            for (int w = 0; w < n; ++w) {
                const double mw = kernel_M(p, w, arg_e, arg_s);
                const double weight = rederived
                                          ? 1.0 / (std::pow(gamma_me, w + 1) * gamma_ms)
                                          : 1.0 / (gamma_me * gamma_me * gamma_ms);
                sum += binom(n - 1, w) * sign_pow(w) * weight * mw;
            }
            const double lead = n * std::pow(beta_e, me) * sum;
            // The printed form keeps the complement of the main-link CDF, so
            // it evaluates Pr(no outage); rederived restores 1 - (...).
            raw = rederived ? 1.0 - lead : lead;
        } else {
            raw = 1.0 - std::pow(beta_e, static_cast<double>(n) * me) *
                            kernel_U(p, arg_e, arg_s, variant);
        }
    } else {
        // Integrate over the main-link SNR above the decodability cutoff.
        const bool eve_sep = arch.eve == Architecture::Separated;
        const double lower_exact = eve_sep ? pow2 / kIntegratedRateConst : 0.0;
        const double lower_printed = eve_sep ? pow2 / kIntegratedRateConst : pow2;
        const double lower = rederived ? lower_exact : lower_printed;
        KernelArg arg_e = [beta_e, me, eve_sep, pow2](double g) {
            const double eve_snr = eve_sep ? g * kIntegratedRateConst / pow2 - 1.0
                                           : g / pow2;
            return beta_e * eve_snr / me;
        };
        KernelArg arg_s = [beta_s, ms](double g) { return beta_s * g / ms; };
        if (mode == EveMode::NonCooperative) {
            double sum = 0.0;
            for (int z = 0; z <= n; ++z) {
                const double tz = kernel_T(p, z, arg_e, arg_s, lower);
                const double weight =
                    rederived ? 1.0 / std::pow(gamma_me, z) : 1.0 / gamma_me;
                sum += binom(n, z) * sign_pow(z) * weight * tz;
            }
            raw = 1.0 - std::pow(beta_s, ms) / gamma_ms * sum;
        } else {
            // The printed first term leaves gamma_s unbound; both variants
            // evaluate it at the integral's lower limit, where it is exact
            // for the rederived form.
            const double first = specfun::regularized_gamma_q(ms, beta_s * lower);
            const double vterm = std::pow(beta_s, ms) / gamma_ms *
                                 kernel_V(p, arg_e, arg_s, lower, variant);
            raw = rederived ? 1.0 - first + vterm : 1.0 - first - vterm;
        }
    }

    OutageEstimate est;
    est.method = rederived ? Method::series_rederived : Method::series_as_published;
    est.raw_value = raw;
    est.value = std::isnan(raw) ? raw : std::clamp(raw, 0.0, 1.0);
    const OutageEstimate quad = outage_quadrature(p, arch, mode, conv);
    est.divergence = !(std::fabs(raw - quad.value) <= 1e-3);
    return est;
}

const char* to_string(Architecture a) {
    return a == Architecture::Separated ? "sp" : "in";
}

const char* to_string(EveMode m) {
    return m == EveMode::NonCooperative ? "noncoop" : "coop";
}

const char* to_string(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::series_rederived: return "series_rederived";
        case Method::series_as_published: return "series_as_published";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

}  // namespace swiptsec
