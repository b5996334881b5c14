#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "errors.hpp"
#include "numerics.hpp"
#include "threshold.hpp"

using namespace mixcore;

TEST_CASE("bisect_root finds the zero of a transcendental function") {
    const double root = bisect_root([](double x) { return std::cos(x); }, {0.0, 3.0});
    CHECK(root == doctest::Approx(std::acos(-1.0) / 2).epsilon(1e-11));
}

TEST_CASE("bisect_root locates f(z) = 1/2") {
    const double root =
        bisect_root([](double z) { return aux_f(z) - 0.5; }, {1e-12, 1.0 - 1e-12});
    CHECK(std::abs(aux_f(root) - 0.5) < 1e-10);
}

TEST_CASE("bisect_root returns an endpoint that is already a zero") {
    const auto func = [](double x) { return x * (x - 2.0); };
    CHECK(bisect_root(func, {0.0, 1.0}) == 0.0);
    CHECK(bisect_root(func, {1.0, 2.0}) == 2.0);
}

TEST_CASE("bisect_root rejects a bracket without a sign change") {
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0}),
                    NoSignChangeError);
}

TEST_CASE("bisect_root rejects non-finite function values") {
    CHECK_THROWS_AS(bisect_root([](double x) { return std::log(x); }, {-0.5, 2.0}),
                    NonFiniteError);
}

TEST_CASE("bisect_root rejects a degenerate bracket") {
    CHECK_THROWS_AS(bisect_root([](double x) { return x; }, {1.0, 1.0}), InvalidParamsError);
}

TEST_CASE("bisect_root hits a known root within tolerance for monotone cubics") {
    // func(x) = (x - root) * (c + d (x - root)^2) is strictly increasing for
    // c, d > 0 with its only zero at `root`.
    std::mt19937_64 rng(271828);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::uniform_real_distribution<double> coeff(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double root = unit(rng);
        const double c = coeff(rng);
        const double d = coeff(rng);
        const double tol = 1e-12;
        const double found = bisect_root(
            [&](double x) { return (x - root) * (c + d * (x - root) * (x - root)); },
            {0.0, 1.0, tol});
        CHECK(std::abs(found - root) < tol + 1e-15);
    }
}

TEST_CASE("minimize_1d finds the minimum of a parabola") {
    const auto result =
        minimize_1d([](double z) { return (z - 0.3) * (z - 0.3); }, {0.0, 1.0});
    CHECK(result.argmin == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(std::abs(result.min) < 1e-15);
}

TEST_CASE("minimize_1d recovers the single-size threshold curve minimum") {
    const EdgeMix mix = EdgeMix::uniform(3);
    const auto result = minimize_1d(
        [&](double lambda) { return threshold_t_general(lambda, mix); }, {1e-6, 20.0});
    CHECK(result.min == doctest::Approx(0.81847).epsilon(3e-5));
}

TEST_CASE("minimize_1d rejects non-finite values") {
    // sqrt goes NaN left of 0.5, which the first golden-section probe hits.
    CHECK_THROWS_AS(
        minimize_1d([](double x) { return std::sqrt(x - 0.5); }, {0.0, 1.0}),
        NonFiniteError);
}

TEST_CASE("fit_sigmoid recovers exact logistic data") {
    std::vector<RatePoint> points;
    for (int i = 0; i < 9; ++i) {
        const double c = 0.846 + 0.001 * i;
        points.push_back({c, sigmoid(c, 0.85, 0.001)});
    }
    const SigmoidFit fit = fit_sigmoid(points, 0.848, 0.0008);
    CHECK(fit.converged);
    CHECK(std::abs(fit.x - 0.85) < 1e-9);
    CHECK(std::abs(fit.y - 0.001) < 1e-9);
    CHECK(fit.ss_res < 1e-18);
}

TEST_CASE("fit_sigmoid reports flat data as unidentifiable") {
    const std::vector<RatePoint> points{{0.8, 0.5}, {0.9, 0.5}, {1.0, 0.5}};
    const SigmoidFit fit = fit_sigmoid(points, 0.9, 0.01);
    CHECK_FALSE(fit.converged);
    CHECK(fit.iterations == 0);
    CHECK(fit.x == 0.9);
    CHECK(fit.y == 0.01);
}

TEST_CASE("fit_sigmoid recovers parameters across the whole range of interest") {
    std::mt19937_64 rng(31415926);
    std::uniform_real_distribution<double> x_draw(0.5, 1.0);
    std::uniform_real_distribution<double> y_exp(-4.0, -2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double x = x_draw(rng);
        const double y = std::pow(10.0, y_exp(rng));
        std::vector<RatePoint> points;
        const double span = 10.0 * y;
        for (int i = 0; i < 11; ++i) {
            const double c = x - 0.5 * span + span * i / 10.0;
            points.push_back({c, sigmoid(c, x, y)});
        }
        // Initial guesses as the sweep fit would pick them: first crossing of
        // one half, and a tenth of the span.
        double init_x = points.front().c;
        for (const auto& p : points) {
            if (p.rate >= 0.5) {
                init_x = p.c;
                break;
            }
        }
        const SigmoidFit fit = fit_sigmoid(points, init_x, span / 10.0);
        CHECK(fit.converged);
        CHECK(std::abs(fit.x - x) < 1e-9);
        CHECK(std::abs(fit.y - y) < 1e-9);
    }
}

TEST_CASE("fit_sigmoid validates its input") {
    CHECK_THROWS_AS(fit_sigmoid(std::vector<RatePoint>{{0.1, 0.2}}, 0.1, 0.1),
                    InvalidParamsError);
    const std::vector<RatePoint> points{{0.8, 0.0}, {0.9, 0.5}, {1.0, 1.0}};
    CHECK_THROWS_AS(fit_sigmoid(points, 0.9, 0.0), InvalidParamsError);
}
