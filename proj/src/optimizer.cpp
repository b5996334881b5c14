#include "optimizer.hpp"

#include <cmath>

#include "errors.hpp"
#include "numerics.hpp"

namespace mixcore {

namespace {

// Comparisons against the regime boundaries share one tolerance; exact ties
// are classified as the saddle regime, whose closed form is continuous with
// both neighbours.
constexpr double kTieTol = 1e-9;

Optimum degenerate_optimum(int a, int b, double z_l) {
    Optimum opt;
    opt.a = a;
    opt.b = b;
    opt.case_label = CaseLabel::DegenerateAlphaOne;
    opt.z_star = z_l;
    opt.lambda_star = -std::log1p(-z_l);
    opt.alpha_star = 1.0;
    opt.c_star = opt.lambda_star / (a * std::pow(z_l, a - 1));
    opt.avg_edge_size = a;
    return opt;
}

Optimum saddle_optimum(int a, int b, const SpecialPoints& sp) {
    Optimum opt;
    opt.a = a;
    opt.b = b;
    opt.case_label = CaseLabel::SaddlePoint;
    opt.z_star = sp.z_prime;
    opt.lambda_star = -std::log1p(-sp.z_prime);
    opt.alpha_star = static_cast<double>(b - 1) / (b - a) -
                     1.0 / (aux_f(sp.z_prime) * (b - a));
    // (b^(a-1) / a^(b-1))^(1/(b-a)) evaluated in log space.
    opt.c_star = opt.lambda_star *
                 std::exp(((a - 1) * std::log(b) - (b - 1) * std::log(a)) / (b - a));
    opt.avg_edge_size = opt.alpha_star * a + (1.0 - opt.alpha_star) * b;
    return opt;
}

}  // namespace

const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::DegenerateAlphaOne: return "degenerate_alpha_one";
        case CaseLabel::SaddlePoint: return "saddle_point";
        case CaseLabel::BinarySearch: return "binary_search";
    }
    return "unknown";
}

Optimum uniform_threshold(int k) {
    if (k < 3) throw InvalidSizesError("uniform_threshold: k must be at least 3");
    const double z_l = bisect_root(
        [&](double z) { return aux_f(z) - 1.0 / (k - 1); }, {1e-12, 1.0 - 1e-12, 1e-15});
    return degenerate_optimum(k, k, z_l);
}

Optimum optimize_pair(int a, int b, double eps) {
    if (a < 3 || b < a) throw InvalidSizesError("optimize_pair: need 3 <= a <= b");
    if (!(eps > 0.0)) throw InvalidParamsError("optimize_pair: eps must be positive");
    if (a == b) return uniform_threshold(a);

    const SpecialPoints sp = special_points(a, b);
    const double h_prime = aux_h(sp.z_prime, a, b);

    if (h_prime <= 1.0 + kTieTol) {
        return degenerate_optimum(a, b, sp.z_l);
    }
    if (!sp.z_1) {
        // g stays non-negative: the saddle is the unique interior optimum.
        return saddle_optimum(a, b, sp);
    }
    const double h_1 = aux_h(*sp.z_1, a, b);
    const double h_2 = aux_h(*sp.z_2, a, b);
    if (h_prime <= h_2 + kTieTol || h_prime >= h_1 - kTieTol) {
        return saddle_optimum(a, b, sp);
    }

    // Two tied minima.  T at the left critical point falls with alpha while T
    // at the right one rises, so bisect on the sign of their difference.
    double u = *sp.z_1;
    double l = *sp.z_2;
    if (sp.z_prime < u) u = sp.z_prime;
    if (sp.z_prime > l) l = sp.z_prime;
    double alpha_min = 1.0 / aux_h(u, a, b);
    double alpha_max = 1.0 / aux_h(l, a, b);

    Optimum opt;
    opt.a = a;
    opt.b = b;
    opt.case_label = CaseLabel::BinarySearch;
    for (int iter = 0; iter < 200; ++iter) {
        const double alpha = 0.5 * (alpha_min + alpha_max);
        const auto crossing = [&](double z) { return aux_h(z, a, b) - 1.0 / alpha; };
        const double z_left = bisect_root(crossing, {sp.z_l + 1e-12, u, 1e-12});
        const double z_right = bisect_root(crossing, {l, sp.z_r - 1e-12, 1e-12});
        const double t_left = threshold_T(z_left, a, b, alpha);
        const double t_right = threshold_T(z_right, a, b, alpha);
        opt.z_star = z_right;
        opt.z_star_second = z_left;
        opt.alpha_star = alpha;
        opt.c_star = t_right;
        if (std::abs(t_right - t_left) < eps) break;
        if (t_right > t_left) {
            alpha_max = alpha;
        } else {
            alpha_min = alpha;
        }
    }
    opt.lambda_star = -std::log1p(-opt.z_star);
    opt.avg_edge_size = opt.alpha_star * a + (1.0 - opt.alpha_star) * b;
    return opt;
}

double general_threshold(const EdgeMix& mix) {
    // Grid over the generation rate, then a local refine around the best
    // cell.  The cap comfortably covers every threshold curve of interest:
    // minimizers for sizes up to 10^3 sit far below it.
    constexpr double kLambdaMax = 50.0;
    constexpr int kCells = 1000;
    const auto t_of = [&](double lambda) { return threshold_t_general(lambda, mix); };

    int best = 1;
    double best_val = t_of(kLambdaMax / kCells);
    for (int i = 2; i <= kCells; ++i) {
        const double v = t_of(i * kLambdaMax / kCells);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = (best > 1 ? best - 1 : best) * kLambdaMax / kCells;
    const double hi = (best < kCells ? best + 1 : best) * kLambdaMax / kCells;
    return minimize_1d(t_of, {lo, hi, 1e-12}).min;
}

int b_prime(int a) {
    if (a < 3) throw InvalidSizesError("b_prime: a must be at least 3");
    for (int b = a + 1;; ++b) {
        if (special_points(a, b).z_1.has_value()) return b;
    }
}

std::vector<Optimum> table_scan(int a, int b_max, double eps) {
    if (a < 3 || b_max < a) throw InvalidSizesError("table_scan: need 3 <= a <= b_max");
    std::vector<Optimum> rows;
    rows.reserve(b_max - a + 1);
    for (int b = a; b <= b_max; ++b) {
        rows.push_back(optimize_pair(a, b, eps));
    }
    return rows;
}

}  // namespace mixcore
