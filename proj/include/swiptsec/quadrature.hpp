#pragma once

// Adaptive Gauss-Kronrod (7,15) integration with an explicit error budget.
// Non-convergence throws; a silent bad value is never returned.

#include <functional>
#include <stdexcept>
#include <string>

namespace swiptsec::quadrature {

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_intervals = 4000;
    // Width of the first probe segment when extending a semi-infinite range.
    double initial_width = 1.0;
};

struct Result {
    double value = 0.0;
    double error = 0.0;  // conservative absolute error estimate
    long evaluations = 0;
    int intervals = 0;
};

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

// Integrates f over [a, inf).  The upper cutoff doubles until the integrand
// drops below 1e-14 of its running peak and the fitted exponential tail
// contributes less than 1e-10 of the integral scale.
Result integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               const Options& opt = {});

}  // namespace swiptsec::quadrature
