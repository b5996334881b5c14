#include "numerics.hpp"

#include <cmath>
#include <cstdio>

#include "errors.hpp"

namespace mixcore {

namespace {

double checked_eval(const std::function<double(double)>& func, double x) {
    const double v = func(x);
    if (!std::isfinite(v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "non-finite function value at x=%.17g", x);
        throw NonFiniteError(buf);
    }
    return v;
}

}  // namespace

double bisect_root(const std::function<double(double)>& func, Bracket bracket) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidParamsError("bisect_root: bracket must satisfy lo < hi");
    }
    double flo = checked_eval(func, lo);
    if (flo == 0.0) return lo;
    const double fhi = checked_eval(func, hi);
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw NoSignChangeError("bisect_root: no sign change over bracket");
    }
    while (hi - lo > bracket.tol_abs) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // hit floating-point resolution
        const double fmid = checked_eval(func, mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

MinResult minimize_1d(const std::function<double(double)>& func, Bracket bracket) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidParamsError("minimize_1d: bracket must satisfy lo < hi");
    }
    constexpr double invphi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = checked_eval(func, c);
    double fd = checked_eval(func, d);
    while (hi - lo > bracket.tol_abs) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            if (c <= lo || c >= d) break;
            fc = checked_eval(func, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            if (d <= c || d >= hi) break;
            fd = checked_eval(func, d);
        }
    }
    const double argmin = 0.5 * (lo + hi);
    return {argmin, checked_eval(func, argmin)};
}

double sigmoid(double c, double x, double y) {
    return 1.0 / (1.0 + std::exp(-(c - x) / y));
}

SigmoidFit fit_sigmoid(std::span<const RatePoint> points, double init_x, double init_y) {
    if (points.size() < 3) {
        throw InvalidParamsError("fit_sigmoid: need at least 3 points");
    }
    if (!(init_y > 0.0)) {
        throw InvalidParamsError("fit_sigmoid: initial width must be positive");
    }

    const auto sum_sq_res = [&](double x, double y) {
        double ss = 0.0;
        for (const auto& p : points) {
            const double r = sigmoid(p.c, x, y) - p.rate;
            ss += r * r;
        }
        return ss;
    };

    bool flat = true;
    for (const auto& p : points) {
        if (p.rate != points.front().rate) {
            flat = false;
            break;
        }
    }
    if (flat) {
        // Every rate identical: the midpoint is unidentifiable, report the
        // initial guess untouched.
        return {init_x, init_y, sum_sq_res(init_x, init_y), false, 0};
    }

    double x = init_x;
    double y = init_y;
    double ss = sum_sq_res(x, y);
    double damping = 1e-3;
    SigmoidFit fit;

    for (fit.iterations = 1; fit.iterations <= 200; ++fit.iterations) {
        // Normal equations for the 2-parameter model.
        double h00 = 0.0, h01 = 0.0, h11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (const auto& p : points) {
            const double s = sigmoid(p.c, x, y);
            const double ds = s * (1.0 - s);
            const double jx = -ds / y;                 // d sigma / d x
            const double jy = -ds * (p.c - x) / (y * y);  // d sigma / d y
            const double r = s - p.rate;
            h00 += jx * jx;
            h01 += jx * jy;
            h11 += jy * jy;
            g0 += jx * r;
            g1 += jy * r;
        }
        if (std::hypot(g0, g1) < 1e-12) {
            fit.converged = true;
            break;
        }
        const double a00 = h00 * (1.0 + damping);
        const double a11 = h11 * (1.0 + damping);
        const double det = a00 * a11 - h01 * h01;
        bool accepted = false;
        if (std::abs(det) > 1e-300) {
            const double dx = (-g0 * a11 + g1 * h01) / det;
            const double dy = (-g1 * a00 + g0 * h01) / det;
            const double nx = x + dx;
            const double ny = y + dy;
            if (ny > 0.0) {
                const double nss = sum_sq_res(nx, ny);
                if (std::isfinite(nss) && nss < ss) {
                    const double rel = std::hypot(dx, dy) / (std::hypot(x, y) + 1e-300);
                    x = nx;
                    y = ny;
                    ss = nss;
                    damping *= 0.1;
                    accepted = true;
                    if (rel < 1e-12) {
                        fit.converged = true;
                        break;
                    }
                }
            }
        }
        if (!accepted) damping *= 10.0;
    }

    fit.x = x;
    fit.y = y;
    fit.ss_res = ss;
    if (fit.iterations > 200) fit.iterations = 200;
    return fit;
}

}  // namespace mixcore
