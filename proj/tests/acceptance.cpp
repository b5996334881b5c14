// Acceptance gate: nine end-to-end checks, one [PASS]/[FAIL] line each.
// Exit code is the number of failed checks.  Pass --long to append the
// large-instance sweep (n = 10^7), which takes far longer than the rest.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "experiment.hpp"
#include "golden_thresholds.hpp"
#include "hypergraph.hpp"
#include "optimizer.hpp"
#include "retrieval.hpp"
#include "threshold.hpp"

using namespace mixcore;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int index, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s\n", pass ? "PASS" : "FAIL", index, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// ---- 1: reference tables ----------------------------------------------

void check_golden_tables() {
    const auto start = Clock::now();
    int rows = 0;
    double max_err = 0.0;
    for (const auto& table : kGoldenTables) {
        for (int i = 0; i < table.count; ++i) {
            const GoldenRow& row = table.rows[i];
            const Optimum opt = optimize_pair(table.a, row.b);
            double err = std::abs(opt.z_star - row.z_star);
            err = std::max(err, std::abs(opt.lambda_star - row.lambda_star));
            err = std::max(err, std::abs(opt.alpha_star - row.alpha_star));
            err = std::max(err, std::abs(opt.avg_edge_size - row.k_bar));
            err = std::max(err, std::abs(opt.c_star - row.c_star));
            max_err = std::max(max_err, err);
            ++rows;
        }
    }
    const double elapsed = seconds_since(start);
    const bool pass = max_err < 1.5e-5 && elapsed < 10.0;
    report(1, pass,
           fmt("reference tables a=3..6, b<=50: %d rows, max deviation %.2e "
               "(tolerance 1.5e-5), %.2fs (< 10s)",
               rows, max_err, elapsed));
}

// ---- 2: headline thresholds -------------------------------------------

void check_headline_values() {
    const struct {
        int b;
        double c_star;
    } expected[] = {{3, 0.81847}, {4, 0.82151}, {8, 0.85138}, {16, 0.91089}, {21, 0.92004}};
    double max_err = 0.0;
    for (const auto& e : expected) {
        max_err = std::max(max_err, std::abs(optimize_pair(3, e.b).c_star - e.c_star));
    }
    const auto rows = table_scan(3, 50);
    size_t best = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].c_star > rows[best].c_star) best = i;
    }
    const bool max_at_21 = rows[best].b == 21;
    report(2, max_err < 2e-5 && max_at_21,
           fmt("headline thresholds for b=3,4,8,16,21: max deviation %.2e "
               "(tolerance 2e-5); scan maximum at b=%d (want 21)",
               max_err, rows[best].b));
}

// ---- 3: first two-minima partner size ---------------------------------

void check_b_prime() {
    const auto start = Clock::now();
    const int expected[][2] = {{3, 16}, {4, 29},  {5, 45},  {6, 62},
                               {7, 79}, {8, 98},  {9, 117}, {10, 137}};
    int wrong = 0;
    for (const auto& [a, bp] : expected) {
        if (b_prime(a) != bp) ++wrong;
    }
    const double elapsed = seconds_since(start);
    report(3, wrong == 0 && elapsed < 30.0,
           fmt("first two-minima partner size for a=3..10: %d of 8 mismatched, "
               "%.2fs (< 30s)",
               wrong, elapsed));
}

// ---- 4: direct-minimization cross-check -------------------------------

void check_cross_validation() {
    double max_err = 0.0;
    int pairs = 0;
    for (int a = 3; a < 30; ++a) {
        for (int b = a + 1; b <= 30; ++b) {
            const Optimum opt = optimize_pair(a, b);
            const double direct = general_threshold(EdgeMix::pair(a, b, opt.alpha_star));
            max_err = std::max(max_err, std::abs(direct - opt.c_star));
            ++pairs;
        }
    }
    report(4, max_err < 1e-7,
           fmt("case analysis vs direct minimization over %d pairs 3<=a<b<=30: "
               "max |difference| %.2e (tolerance 1e-7)",
               pairs, max_err));
}

// ---- 5: analytic building blocks --------------------------------------

void check_function_properties() {
    bool pass = true;
    std::string first_problem;
    const auto note = [&](const std::string& msg) {
        if (pass) first_problem = msg;
        pass = false;
    };

    // f decreasing, above 1-z (independent of a and b).
    double prev = aux_f(0.001);
    for (int i = 2; i < 1000; ++i) {
        const double z = i / 1000.0;
        const double f = aux_f(z);
        if (!(f < prev)) note(fmt("f not decreasing at z=%.3f", z));
        if (!(f > 1.0 - z)) note(fmt("f <= 1-z at z=%.3f", z));
        prev = f;
    }

    int pairs = 0;
    for (int a = 3; a <= 6; ++a) {
        for (int b = a + 1; b <= 50; ++b) {
            ++pairs;
            const SpecialPoints sp = special_points(a, b);

            if (std::abs(aux_h(sp.z_l, a, b) - 1.0) > 1e-9) {
                note(fmt("h(z_l) != 1 at a=%d b=%d", a, b));
            }
            if (!(aux_g(sp.z_l, a, b) > 0.0) || !(aux_g(sp.z_r, a, b) > 0.0)) {
                note(fmt("g not positive at a crossing point, a=%d b=%d", a, b));
            }

            // h below 1 left of z_l, above 1 between z_l and the pole.
            for (int i = 1; i <= 200; ++i) {
                const double z = sp.z_l * i / 201.0;
                if (!(aux_h(z, a, b) < 1.0)) note(fmt("h >= 1 left of z_l, a=%d b=%d", a, b));
            }
            for (int i = 1; i <= 200; ++i) {
                const double z = sp.z_l + (sp.z_r - sp.z_l) * i / 201.0;
                if (!(aux_h(z, a, b) > 1.0)) {
                    note(fmt("h <= 1 between z_l and z_r, a=%d b=%d", a, b));
                }
            }

            // Finite-difference slope of h carries the sign of g.
            const double step = 1e-7;
            for (int i = 1; i <= 150; ++i) {
                const double z = 0.01 + (sp.z_r - 0.012) * i / 151.0;
                const double g = aux_g(z, a, b);
                if (std::abs(g) < 1e-8) continue;
                const double slope = (aux_h(z + step, a, b) - aux_h(z - step, a, b)) / (2 * step);
                if (slope * g <= 0.0) {
                    note(fmt("sign(dh/dz) != sign(g) at z=%.4f, a=%d b=%d", z, a, b));
                }
            }

            // dg/dz changes sign exactly once on (0,1).
            int sign_changes = 0;
            double prev_d = aux_g_deriv(1e-6, a, b);
            for (int i = 1; i < 2000; ++i) {
                const double z = 1e-6 + (1.0 - 2e-6) * i / 2000.0;
                const double d = aux_g_deriv(z, a, b);
                if (prev_d * d < 0.0) ++sign_changes;
                prev_d = d;
            }
            if (sign_changes != 1) {
                note(fmt("dg/dz has %d sign changes at a=%d b=%d", sign_changes, a, b));
            }
        }
    }
    report(5, pass,
           pass ? fmt("analytic properties of f, g, h hold across %d size pairs", pairs)
                : fmt("analytic property violated: %s", first_problem.c_str()));
}

// ---- 6: peeling vs reference fixpoint ---------------------------------

struct CoreSets {
    std::set<uint32_t> nodes;
    std::set<uint64_t> edges;
};

CoreSets core_sets_from_peel(const Hypergraph& h, const PeelResult& res) {
    CoreSets out;
    for (uint32_t v = 0; v < h.n; ++v) out.nodes.insert(v);
    for (uint64_t e = 0; e < h.edge_count(); ++e) out.edges.insert(e);
    for (const auto& pair : res.removed_pairs) {
        out.nodes.erase(pair.node);
        if (pair.edge != RemovedPair::kNoEdge) out.edges.erase(pair.edge);
    }
    return out;
}

// From-scratch fixpoint: recompute all degrees after every single removal.
CoreSets rescan_core(const Hypergraph& h) {
    std::vector<char> edge_alive(h.edge_count(), 1);
    std::vector<char> node_alive(h.n, 1);
    for (;;) {
        std::vector<int> deg(h.n, 0);
        for (uint64_t e = 0; e < h.edge_count(); ++e) {
            if (!edge_alive[e]) continue;
            for (uint32_t v : h.edge(e)) ++deg[v];
        }
        bool removed = false;
        for (uint32_t v = 0; v < h.n && !removed; ++v) {
            if (!node_alive[v] || deg[v] > 1) continue;
            node_alive[v] = 0;
            for (uint32_t e : h.incident(v)) {
                if (edge_alive[e]) {
                    edge_alive[e] = 0;
                    break;  // degree <= 1: at most one live incident edge
                }
            }
            removed = true;
        }
        if (!removed) break;
    }
    CoreSets out;
    for (uint32_t v = 0; v < h.n; ++v) {
        if (node_alive[v]) out.nodes.insert(v);
    }
    for (uint64_t e = 0; e < h.edge_count(); ++e) {
        if (edge_alive[e]) out.edges.insert(e);
    }
    return out;
}

// Work-list peel that serves removable nodes in random order.
CoreSets random_order_core(const Hypergraph& h, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> deg(h.n, 0);
    for (uint64_t e = 0; e < h.edge_count(); ++e) {
        for (uint32_t v : h.edge(e)) ++deg[v];
    }
    std::vector<char> edge_alive(h.edge_count(), 1);
    std::vector<char> node_alive(h.n, 1);
    std::vector<uint32_t> candidates;
    for (uint32_t v = 0; v < h.n; ++v) {
        if (deg[v] <= 1) candidates.push_back(v);
    }
    while (!candidates.empty()) {
        const size_t pick = rng() % candidates.size();
        const uint32_t v = candidates[pick];
        candidates[pick] = candidates.back();
        candidates.pop_back();
        if (!node_alive[v] || deg[v] > 1) continue;  // stale entry
        node_alive[v] = 0;
        for (uint32_t e : h.incident(v)) {
            if (!edge_alive[e]) continue;
            edge_alive[e] = 0;
            for (uint32_t u : h.edge(e)) {
                if (--deg[u] <= 1 && node_alive[u] && u != v) candidates.push_back(u);
            }
            break;  // at most one live incident edge
        }
    }
    CoreSets out;
    for (uint32_t v = 0; v < h.n; ++v) {
        if (node_alive[v]) out.nodes.insert(v);
    }
    for (uint64_t e = 0; e < h.edge_count(); ++e) {
        if (edge_alive[e]) out.edges.insert(e);
    }
    return out;
}

void check_peeling_oracle() {
    const EdgeMix mixes[] = {EdgeMix::uniform(3), EdgeMix::pair(3, 16, 0.88684),
                             EdgeMix::pair(3, 4, 0.5), EdgeMix::pair(4, 8, 0.7),
                             EdgeMix({3, 5, 9}, {0.6, 0.3, 0.1})};
    const double densities[] = {0.60, 0.75, 0.82, 0.90, 1.00};
    int bad = 0;
    for (int instance = 0; instance < 500; ++instance) {
        const EdgeMix& mix = mixes[instance % 5];
        const auto m =
            static_cast<uint64_t>(std::llround(200.0 * densities[(instance / 5) % 5]));
        const Hypergraph h = generate_mixed(200, m, mix, 9000 + instance);
        const PeelResult fast = peel(h);
        const CoreSets fast_sets = core_sets_from_peel(h, fast);
        const CoreSets oracle = rescan_core(h);
        if (fast_sets.nodes != oracle.nodes || fast_sets.edges != oracle.edges ||
            fast.core_node_count != oracle.nodes.size() ||
            fast.core_edge_count != oracle.edges.size()) {
            ++bad;
            continue;
        }
        for (int order = 0; order < 10; ++order) {
            const CoreSets shuffled = random_order_core(h, 77000 + instance * 10 + order);
            if (shuffled.nodes != oracle.nodes || shuffled.edges != oracle.edges) {
                ++bad;
                break;
            }
        }
    }
    report(6, bad == 0,
           fmt("peeling vs rescan fixpoint on 500 instances (n=200, mixed sizes), "
               "10 shuffled orders each: %d disagreements",
               bad));
}

// ---- 7: threshold recovery at n = 10^5 --------------------------------

struct SweepCheck {
    double deviation = 0.0;
    double elapsed = 0.0;
    bool ok = false;
};

SweepCheck sweep_deviation(int a, int b, uint64_t n, double span, int trials,
                           uint64_t seed) {
    const auto start = Clock::now();
    const Optimum opt = optimize_pair(a, b);
    const EdgeMix mix = a == b ? EdgeMix::uniform(a) : EdgeMix::pair(a, b, opt.alpha_star);
    const SweepConfig config{mix, n, density_grid(opt.c_star, span, 9), trials, seed, 0};
    const SweepResult sweep = run_sweep(config);
    const SigmoidFit fit = estimate_threshold(sweep);
    SweepCheck out;
    out.deviation = std::abs(fit.x - opt.c_star);
    out.elapsed = seconds_since(start);
    out.ok = !(fit.iterations == 0 && !fit.converged);
    return out;
}

void check_threshold_recovery() {
    const SweepCheck s34 = sweep_deviation(3, 4, 100000, 0.02, 100, 70304);
    const SweepCheck s316 = sweep_deviation(3, 16, 100000, 0.02, 100, 70316);
    const bool pass = s34.ok && s316.ok && s34.deviation < 0.005 &&
                      s316.deviation < 0.005 && s34.elapsed < 300.0 &&
                      s316.elapsed < 300.0;
    report(7, pass,
           fmt("sweep at n=1e5, 9 densities, 100 trials: |x-c*| = %.4f for (3,4) "
               "in %.0fs, %.4f for (3,16) in %.0fs (tolerance 0.005, 300s each)",
               s34.deviation, s34.elapsed, s316.deviation, s316.elapsed));
}

// ---- 8: stationarity at the optima ------------------------------------

void check_stationarity() {
    const double step = 1e-6;
    double max_dz = 0.0, max_dalpha = 0.0, max_tie = 0.0;
    const auto dT_dz = [&](const Optimum& opt, double z) {
        return (threshold_T(z + step, opt.a, opt.b, opt.alpha_star) -
                threshold_T(z - step, opt.a, opt.b, opt.alpha_star)) /
               (2 * step);
    };
    for (int a = 3; a <= 6; ++a) {
        for (int b = a; b <= 50; ++b) {
            const Optimum opt = optimize_pair(a, b);
            max_dz = std::max(max_dz, std::abs(dT_dz(opt, opt.z_star)));
            if (opt.case_label == CaseLabel::SaddlePoint) {
                const double dalpha =
                    (threshold_T(opt.z_star, opt.a, opt.b, opt.alpha_star + step) -
                     threshold_T(opt.z_star, opt.a, opt.b, opt.alpha_star - step)) /
                    (2 * step);
                max_dalpha = std::max(max_dalpha, std::abs(dalpha));
            } else if (opt.case_label == CaseLabel::BinarySearch) {
                max_dz = std::max(max_dz, std::abs(dT_dz(opt, *opt.z_star_second)));
                const double tie =
                    std::abs(opt.c_star - threshold_T(*opt.z_star_second, opt.a, opt.b,
                                                      opt.alpha_star));
                max_tie = std::max(max_tie, tie);
            }
        }
    }
    const bool pass = max_dz < 1e-5 && max_dalpha < 1e-5 && max_tie < 1e-9;
    report(8, pass,
           fmt("stationarity over a=3..6, b<=50: max |dT/dz| %.2e, max |dT/dalpha| "
               "%.2e (tolerance 1e-5); max two-minima gap %.2e (tolerance 1e-9)",
               max_dz, max_dalpha, max_tie));
}

// ---- 9: retrieval structure -------------------------------------------

void check_retrieval() {
    const uint64_t m = 10000;
    std::vector<std::pair<std::string, uint64_t>> pairs;
    pairs.reserve(m);
    std::mt19937_64 value_rng(424242);
    for (uint64_t i = 0; i < m; ++i) {
        pairs.emplace_back("key-" + std::to_string(i), value_rng());
    }
    const Optimum opt = optimize_pair(3, 16);
    const EdgeMix mix = EdgeMix::pair(3, 16, opt.alpha_star);

    int built = 0;
    uint64_t wrong_answers = 0;
    double bits_per_key = 0.0;
    for (uint64_t master = 1; master <= 50; ++master) {
        try {
            const RetrievalStructure s = build(pairs, 0.906, mix, 16, master * 1000, 3);
            ++built;
            for (const auto& [key, value] : pairs) {
                if (query(s, key) != (value & 0xFFFFull)) ++wrong_answers;
            }
            bits_per_key = space_report(s).bits_per_key;
        } catch (const BuildFailedError&) {
        }
    }

    int failed_high = 0;
    for (uint64_t master = 1; master <= 50; ++master) {
        try {
            build(pairs, 0.95, mix, 16, 900000 + master * 1000, 3);
        } catch (const BuildFailedError&) {
            ++failed_high;
        }
    }

    const bool builds_ok = built >= 45;
    const bool queries_ok = built > 0 && wrong_answers == 0;
    const bool space_ok = built > 0 && std::abs(bits_per_key - 1.104 * 16) <= 0.001 * 16;
    const bool high_fails = failed_high >= 45;
    report(9, builds_ok && queries_ok && space_ok && high_fails,
           fmt("retrieval m=1e4 r=16: %d/50 seeds built at c=0.906 within 3 retries "
               "(need >= 45); %llu wrong answers across built structures; "
               "bits/key %.4f (want 17.664 +- 0.016); %d/50 failed at c=0.95 "
               "(need >= 45)",
               built, static_cast<unsigned long long>(wrong_answers), bits_per_key,
               failed_high));
}

// ---- optional large-instance sweep ------------------------------------

void run_long_mode() {
    std::printf("-- long mode: (3,16) sweep at n=1e7, 9 densities, 100 trials --\n");
    std::fflush(stdout);
    const SweepCheck s = sweep_deviation(3, 16, 10000000, 0.002, 100, 716716);
    report(10, s.ok && s.deviation < 2e-4,
           fmt("large-instance sweep: |x-c*| = %.5f (target 2e-4) in %.0fs",
               s.deviation, s.elapsed));
}

}  // namespace

int main(int argc, char** argv) {
    bool long_mode = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--long") == 0) long_mode = true;
    }

    check_golden_tables();
    check_headline_values();
    check_b_prime();
    check_cross_validation();
    check_function_properties();
    check_peeling_oracle();
    check_threshold_recovery();
    check_stationarity();
    check_retrieval();
    if (long_mode) run_long_mode();

    if (g_failures == 0) {
        std::printf("all checks passed\n");
    } else {
        std::printf("%d check(s) failed\n", g_failures);
    }
    return g_failures;
}
