#include "experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "errors.hpp"
#include "hypergraph.hpp"
#include "rng.hpp"

namespace mixcore {

std::vector<double> density_grid(double center, double span, int steps) {
    if (steps < 1) throw InvalidParamsError("density_grid: need at least one step");
    if (!(span >= 0.0)) throw InvalidParamsError("density_grid: span must be non-negative");
    std::vector<double> densities(steps);
    if (steps == 1) {
        densities[0] = center;
        return densities;
    }
    for (int i = 0; i < steps; ++i) {
        densities[i] = center - 0.5 * span + span * i / (steps - 1);
    }
    return densities;
}

SweepResult run_sweep(const SweepConfig& config) {
    if (config.n == 0) throw InvalidParamsError("run_sweep: n must be positive");
    if (config.trials_per_density <= 0) {
        throw InvalidParamsError("run_sweep: trials_per_density must be positive");
    }
    if (config.densities.empty()) throw InvalidParamsError("run_sweep: no densities");
    for (double c : config.densities) {
        if (!(c > 0.0)) throw InvalidParamsError("run_sweep: densities must be positive");
    }

    const auto start = std::chrono::steady_clock::now();
    const size_t n_dens = config.densities.size();
    const int trials = config.trials_per_density;
    const uint64_t total = n_dens * static_cast<uint64_t>(trials);

    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<uint64_t>(jobs, total));

    // One slot per trial keeps the reduction independent of scheduling.
    std::vector<uint8_t> failed(total, 0);
    std::atomic<uint64_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const uint64_t i = next.fetch_add(1);
            if (i >= total) return;
            const uint64_t di = i / trials;
            const uint64_t ti = i % trials;
            const uint64_t seed = hash64(config.base_seed, di, ti);
            const uint64_t m = static_cast<uint64_t>(
                std::llround(config.densities[di] * static_cast<double>(config.n)));
            const Hypergraph h = generate_mixed(config.n, m, config.mix, seed);
            failed[i] = has_empty_core(h) ? 0 : 1;
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult result{config, {}, 0.0};
    result.rows.resize(n_dens);
    for (size_t di = 0; di < n_dens; ++di) {
        auto& row = result.rows[di];
        row.c = config.densities[di];
        row.trials = trials;
        for (int ti = 0; ti < trials; ++ti) {
            row.failures += failed[di * trials + ti];
        }
        row.failure_rate = static_cast<double>(row.failures) / trials;
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SigmoidFit estimate_threshold(const SweepResult& sweep) {
    if (sweep.rows.empty()) throw InvalidParamsError("estimate_threshold: empty sweep");
    std::vector<RatePoint> points;
    points.reserve(sweep.rows.size());
    for (const auto& row : sweep.rows) points.push_back({row.c, row.failure_rate});

    double init_x = 0.5 * (points.front().c + points.back().c);
    for (const auto& p : points) {
        if (p.rate >= 0.5) {
            init_x = p.c;
            break;
        }
    }
    const double span = points.back().c - points.front().c;
    const double init_y = span > 0.0 ? span / 10.0 : 1e-3;
    return fit_sigmoid(points, init_x, init_y);
}

std::string emit_csv(const SweepResult& sweep, const std::optional<SigmoidFit>& fit) {
    std::string out = "c,trials,failures,failure_rate\n";
    char buf[128];
    for (const auto& row : sweep.rows) {
        std::snprintf(buf, sizeof buf, "%.6f,%d,%d,%.6f\n", row.c, row.trials, row.failures,
                      row.failure_rate);
        out += buf;
    }
    if (fit) {
        std::snprintf(buf, sizeof buf, "# x=%.6f\n# y=%.6f\n# ss_res=%.6f\n", fit->x, fit->y,
                      fit->ss_res);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "# seed=%llu\n",
                  static_cast<unsigned long long>(sweep.config.base_seed));
    out += buf;
    return out;
}

}  // namespace mixcore
