#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mixcore {

// Interval for root finding and minimization.  tol_abs is the absolute width
// at which iteration stops.
struct Bracket {
    double lo;
    double hi;
    double tol_abs = 1e-12;
};

struct MinResult {
    double argmin;
    double min;
};

// One measured point of a failure-rate curve.
struct RatePoint {
    double c;     // edge density
    double rate;  // observed failure rate in [0,1]
};

struct SigmoidFit {
    double x = 0.0;       // transition midpoint
    double y = 0.0;       // transition width
    double ss_res = 0.0;  // residual sum of squares
    bool converged = false;
    int iterations = 0;   // 0 together with !converged means the data was flat
};

// Bisection on [bracket.lo, bracket.hi].  The endpoints must evaluate to
// opposite signs (an exact zero at an endpoint is returned directly).  Throws
// NoSignChangeError otherwise and NonFiniteError if func produces NaN/inf.
double bisect_root(const std::function<double(double)>& func, Bracket bracket);

// Golden-section minimization of a unimodal function.
MinResult minimize_1d(const std::function<double(double)>& func, Bracket bracket);

// Logistic curve (1 + exp(-(c - x)/y))^-1 with midpoint x and width y > 0.
double sigmoid(double c, double x, double y);

// Least-squares fit of the logistic curve by Levenberg-Marquardt starting
// from (init_x, init_y).  If every input rate is identical the midpoint is
// unidentifiable; the fit returns converged=false, iterations=0 and echoes
// the initial parameters.
SigmoidFit fit_sigmoid(std::span<const RatePoint> points, double init_x, double init_y);

}  // namespace mixcore
