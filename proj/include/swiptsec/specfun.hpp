#pragma once

// Gamma / incomplete-gamma core used by every closed-form outage expression.
// All functions are pure and reentrant.

#include <stdexcept>

namespace swiptsec::specfun {

// Shape/rate parameterization of a Gamma law: pdf(x) ∝ x^{shape-1} e^{-rate x}.
struct GammaShapeRate {
    double shape;
    double rate;

    GammaShapeRate(double shape_, double rate_) : shape(shape_), rate(rate_) {
        if (!(shape > 0.0) || !(rate > 0.0))
            throw std::domain_error("GammaShapeRate: shape and rate must be positive");
    }

    double mean() const { return shape / rate; }
    double variance() const { return shape / (rate * rate); }
};

// ln Γ(s) for s > 0.  Lanczos approximation, relative error below 1e-13
// over [1e-3, 1e6].
double ln_gamma(double s);

// Upper incomplete gamma Γ(s,x) = ∫_x^∞ t^{s-1} e^{-t} dt, s > 0, x >= 0.
// The plain value overflows for s beyond ~170; use the log variant there.
double upper_incomplete_gamma(double s, double x);
double ln_upper_incomplete_gamma(double s, double x);

// Regularized forms Q(s,x) = Γ(s,x)/Γ(s) and P(s,x) = 1 - Q(s,x).
double regularized_gamma_q(double s, double x);
double regularized_gamma_p(double s, double x);

// CDF / PDF / quantile of Gamma(shape, rate).  Negative x clamps to CDF 0.
double gamma_cdf(double x, const GammaShapeRate& d);
double gamma_pdf(double x, const GammaShapeRate& d);
double ln_gamma_pdf(double x, const GammaShapeRate& d);
double gamma_quantile(double p, const GammaShapeRate& d);

}  // namespace swiptsec::specfun
