#include "swiptsec/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace swiptsec {

namespace {

using specfun::GammaShapeRate;

void check_x(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("distributions: argument must be finite");
}

GammaShapeRate sum_law(const LinkDistributions& d) {
    return GammaShapeRate(d.eve_single.shape * d.n_eves, d.eve_single.rate);
}

}  // namespace

LinkDistributions make_link_distributions(const SystemParams& p, EveMode mode,
                                          CoeffConvention conv) {
    return LinkDistributions{
        snr_distribution(p, Side::Main, mode, conv),
        snr_distribution(p, Side::Eve, EveMode::NonCooperative, conv),
        p.n_eves,
        mode,
    };
}

double main_cdf(const LinkDistributions& d, double x) {
    return specfun::gamma_cdf(x, d.main);
}

double main_pdf(const LinkDistributions& d, double x) {
    check_x(x);
    if (x < 0.0)
        return 0.0;
    return specfun::gamma_pdf(x, d.main);
}

double eve_max_cdf(const LinkDistributions& d, double x) {
    const double f1 = specfun::gamma_cdf(x, d.eve_single);
    return std::pow(f1, static_cast<double>(d.n_eves));
}

double eve_max_pdf(const LinkDistributions& d, double x) {
    check_x(x);
    if (x < 0.0)
        return 0.0;
    const double n = static_cast<double>(d.n_eves);
    const double m = d.eve_single.shape;
    if (x == 0.0) {
        // f(x) ~ x^{n m - 1} near zero; the boundary constant below covers
        // the exactly balanced case.
        const double t = n * m - 1.0;
        if (t > 0.0)
            return 0.0;
        if (t < 0.0)
            return std::numeric_limits<double>::infinity();
        return n * d.eve_single.rate /
               (std::exp(n * specfun::ln_gamma(m)) * std::pow(m, n - 1.0));
    }
    const double f1 = specfun::gamma_cdf(x, d.eve_single);
    return n * specfun::gamma_pdf(x, d.eve_single) * std::pow(f1, n - 1.0);
}

double eve_sum_cdf(const LinkDistributions& d, double x) {
    return specfun::gamma_cdf(x, sum_law(d));
}

double eve_sum_pdf(const LinkDistributions& d, double x) {
    check_x(x);
    if (x < 0.0)
        return 0.0;
    return specfun::gamma_pdf(x, sum_law(d));
}

double eve_cdf(const LinkDistributions& d, double x) {
    return d.mode == EveMode::Cooperative ? eve_sum_cdf(d, x) : eve_max_cdf(d, x);
}

double eve_pdf(const LinkDistributions& d, double x) {
    return d.mode == EveMode::Cooperative ? eve_sum_pdf(d, x) : eve_max_pdf(d, x);
}

double ln_eve_pdf(const LinkDistributions& d, double x) {
    check_x(x);
    if (x < 0.0)
        return -std::numeric_limits<double>::infinity();
    if (d.mode == EveMode::Cooperative)
        return specfun::ln_gamma_pdf(x, sum_law(d));
    if (d.n_eves == 1)
        return specfun::ln_gamma_pdf(x, d.eve_single);
    if (x == 0.0) {
        const double v = eve_max_pdf(d, x);
        return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    }
    const double n = static_cast<double>(d.n_eves);
    const double f1 = specfun::gamma_cdf(x, d.eve_single);
    if (f1 == 0.0)
        return -std::numeric_limits<double>::infinity();
    return std::log(n) + specfun::ln_gamma_pdf(x, d.eve_single) + (n - 1.0) * std::log(f1);
}

}  // namespace swiptsec
