#include "threshold.hpp"

#include <cmath>
#include <cstdio>

#include "errors.hpp"
#include "numerics.hpp"

namespace mixcore {

namespace {

void check_unit_open(double z, const char* who) {
    if (!(z > 0.0) || !(z < 1.0)) {  // also rejects NaN
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s: z=%.17g outside (0,1)", who, z);
        throw DomainError(buf);
    }
}

void check_pair(int a, int b, const char* who) {
    if (a < 3 || b < a) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s: need 3 <= a <= b, got a=%d b=%d", who, a, b);
        throw InvalidSizesError(buf);
    }
}

}  // namespace

EdgeMix::EdgeMix(std::vector<int> sizes_in, std::vector<double> fractions_in)
    : sizes(std::move(sizes_in)), fractions(std::move(fractions_in)) {
    if (sizes.empty() || sizes.size() != fractions.size()) {
        throw InvalidParamsError("EdgeMix: need equally many sizes and fractions");
    }
    int prev = 2;
    for (int k : sizes) {
        if (k < 3) throw InvalidSizesError("EdgeMix: edge sizes must be at least 3");
        if (k <= prev) throw InvalidSizesError("EdgeMix: edge sizes must be strictly increasing");
        prev = k;
    }
    double sum = 0.0;
    for (double f : fractions) {
        if (!(f >= 0.0)) throw InvalidParamsError("EdgeMix: fractions must be non-negative");
        sum += f;
    }
    if (!(fractions.front() > 0.0)) {
        throw InvalidParamsError("EdgeMix: fraction of the smallest size must be positive");
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvalidParamsError("EdgeMix: fractions must sum to 1");
    }
}

EdgeMix EdgeMix::uniform(int k) { return EdgeMix({k}, {1.0}); }

EdgeMix EdgeMix::pair(int a, int b, double alpha_a) {
    return EdgeMix({a, b}, {alpha_a, 1.0 - alpha_a});
}

double EdgeMix::mean_edge_size() const {
    double mean = 0.0;
    for (size_t i = 0; i < sizes.size(); ++i) mean += fractions[i] * sizes[i];
    return mean;
}

double aux_f(double z) {
    check_unit_open(z, "aux_f");
    if (z < 1e-8) return 1.0 - 0.5 * z;  // second-order expansion, avoids 0/0
    return -std::log1p(-z) * (1.0 - z) / z;
}

double aux_g(double z, int a, int b) {
    check_pair(a, b, "aux_g");
    return aux_f(z) * (b - 1) * (a - 1) + 1.0 / (1.0 - z) + 2.0 - b - a;
}

double aux_g_deriv(double z, int a, int b) {
    check_pair(a, b, "aux_g_deriv");
    check_unit_open(z, "aux_g_deriv");
    // ln(1-z)/z^2 + 1/z suffers cancellation near 0; fold it into
    // (ln(1-z)+z)/z^2 which is well conditioned everywhere on (0,1).
    const double core = (std::log1p(-z) + z) / (z * z);
    const double omz = 1.0 - z;
    return static_cast<double>(b - 1) * (a - 1) * core + 1.0 / (omz * omz);
}

double aux_h(double z, int a, int b) {
    check_pair(a, b, "aux_h");
    check_unit_open(z, "aux_h");
    const double f = aux_f(z);
    const double den = b * ((b - 1) * f - 1.0);
    if (std::abs(den) < 1e-300) {
        throw PoleError("aux_h: evaluation at the pole z_r");
    }
    // Grouped so that the numerator vanishes identically at z_l, where
    // f(z_l) = 1/(a-1); the textbook expansion loses that cancellation.
    return 1.0 + a * std::pow(z, a - b) * (1.0 - f * (a - 1)) / den;
}

double threshold_T(double z, int a, int b, double alpha) {
    check_pair(a, b, "threshold_T");
    check_unit_open(z, "threshold_T");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("threshold_T: alpha outside [0,1]");
    }
    const double den = alpha * a * std::pow(z, a - 1) + (1.0 - alpha) * b * std::pow(z, b - 1);
    return -std::log1p(-z) / den;
}

double threshold_t_general(double lambda, const EdgeMix& mix) {
    if (!(lambda > 0.0)) throw DomainError("threshold_t_general: lambda must be positive");
    const double z = -std::expm1(-lambda);
    double den = 0.0;
    for (size_t i = 0; i < mix.sizes.size(); ++i) {
        den += mix.fractions[i] * mix.sizes[i] * std::pow(z, mix.sizes[i] - 1);
    }
    return lambda / den;
}

SpecialPoints special_points(int a, int b) {
    check_pair(a, b, "special_points");
    if (a == b) throw InvalidSizesError("special_points: need a < b");

    // Landmarks feed closed-form threshold values, so pin them well below the
    // reporting precision; h is steep near z_l and amplifies any slack there.
    constexpr double kTol = 1e-15;
    constexpr double kEdge = 1e-12;

    SpecialPoints sp;
    sp.z_prime = std::pow(static_cast<double>(a) / b, 1.0 / (b - a));
    sp.z_l = bisect_root([&](double z) { return aux_f(z) - 1.0 / (a - 1); },
                         {kEdge, 1.0 - kEdge, kTol});
    sp.z_r = bisect_root([&](double z) { return aux_f(z) - 1.0 / (b - 1); },
                         {sp.z_l, 1.0 - kEdge, kTol});
    sp.z_g = bisect_root([&](double z) { return aux_g_deriv(z, a, b); },
                         {1e-9, 1.0 - 1e-9, kTol});
    sp.g_min = aux_g(sp.z_g, a, b);
    if (sp.g_min < -1e-12) {
        sp.z_1 = bisect_root([&](double z) { return aux_g(z, a, b); },
                             {sp.z_l, sp.z_g, kTol});
        sp.z_2 = bisect_root([&](double z) { return aux_g(z, a, b); },
                             {sp.z_g, sp.z_r, kTol});
    }
    return sp;
}

}  // namespace mixcore
