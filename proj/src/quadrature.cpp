#include "swiptsec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace swiptsec::quadrature {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1,1]; even nodes carry the
// embedded Gauss-7 rule.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                      long& evaluations) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kNodes[i];
        double fsum;
        if (i == 7) {
            fsum = f(mid);
            evaluations += 1;
        } else {
            fsum = f(mid - dx) + f(mid + dx);
            evaluations += 2;
        }
        kronrod += kKronrodW[i] * fsum;
        if (i % 2 == 1)
            gauss += kGaussW[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return Segment{a, b, kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt) {
    if (!(b >= a) || !std::isfinite(a) || !std::isfinite(b))
        throw QuadratureError("integrate: bad interval");
    Result res;
    if (a == b)
        return res;

    std::priority_queue<Segment> queue;
    queue.push(gauss_kronrod(f, a, b, res.evaluations));
    res.intervals = 1;
    double total = queue.top().value;
    double err = queue.top().error;
    if (!std::isfinite(total))
        throw QuadratureError("integrate: integrand produced a non-finite value");

    while (err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (res.intervals >= opt.max_intervals) {
            std::ostringstream msg;
            msg << "integrate: no convergence on [" << a << ", " << b << "] after "
                << res.intervals << " intervals (value " << total << ", error " << err
                << ", tol " << std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))
                << ")";
            throw QuadratureError(msg.str());
        }
        Segment worst = queue.top();
        queue.pop();
        if (!(worst.b - worst.a > 1e-300 * (std::fabs(worst.a) + 1.0))) {
            std::ostringstream msg;
            msg << "integrate: interval collapsed at " << worst.a
                << " without meeting tolerance (error " << worst.error << ")";
            throw QuadratureError(msg.str());
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gauss_kronrod(f, worst.a, mid, res.evaluations);
        Segment right = gauss_kronrod(f, mid, worst.b, res.evaluations);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        res.intervals += 1;
        if (!std::isfinite(total))
            throw QuadratureError("integrate: integrand produced a non-finite value");
    }
    res.value = total;
    res.error = err;
    return res;
}

Result integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               const Options& opt) {
    if (!std::isfinite(a))
        throw QuadratureError("integrate_semi_infinite: bad lower limit");
    const int kProbesPerSegment = 16;
    const int kMaxDoublings = 80;

    const double width = opt.initial_width > 0.0 ? opt.initial_width : 1.0;
    double lo = a;
    double hi = a + width;
    double peak = 0.0;
    double rough = 0.0;  // running trapezoid, used only as a scale
    double x1 = a, f1 = 0.0;  // second-to-last probe
    double x2 = a, f2 = 0.0;  // last probe

    for (int round = 0;; ++round) {
        for (int i = 1; i <= kProbesPerSegment; ++i) {
            const double x = lo + (hi - lo) * i / kProbesPerSegment;
            const double v = f(x);
            if (!std::isfinite(v))
                throw QuadratureError("integrate_semi_infinite: non-finite integrand");
            const double av = std::fabs(v);
            peak = std::max(peak, av);
            rough += 0.5 * (av + std::fabs(f2)) * (x - x2);
            x1 = x2;
            f1 = f2;
            x2 = x;
            f2 = v;
        }
        const double scale = std::max(rough, 1e-300);
        bool tail_ok = false;
        const double af = std::fabs(f2);
        if (af <= 1e-14 * std::max(peak, 1e-300)) {
            const double ap = std::fabs(f1);
            if (af == 0.0) {
                tail_ok = round >= 1;
            } else if (ap > af) {
                // Exponential fit through the last two probes bounds the tail.
                const double lambda = std::log(ap / af) / (x2 - x1);
                tail_ok = af / lambda <= 1e-10 * scale;
            }
        }
        if (tail_ok)
            break;
        if (round >= kMaxDoublings) {
            std::ostringstream msg;
            msg << "integrate_semi_infinite: tail did not decay by x = " << hi
                << " (peak " << peak << ", f(x) " << f2 << ")";
            throw QuadratureError(msg.str());
        }
        lo = hi;
        hi = a + 2.0 * (hi - a);
    }

    if (peak == 0.0)
        return Result{};
    return integrate(f, a, hi, opt);
}

}  // namespace swiptsec::quadrature
