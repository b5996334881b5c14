// Command-line front end over the shared-library C interface.
//
// Subcommands: optimize, table, simulate, retrieval-demo.  Standard output
// carries only the structured result (key=value lines, CSV, or JSON);
// everything else goes to standard error.  Exit codes: 0 success, 1 user
// error, 2 numerical failure.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixcore.h"

namespace {

int exit_for(int status) {
    switch (status) {
        case MIXCORE_OK:
            return 0;
        case MIXCORE_ERR_INVALID_ARGUMENT:
        case MIXCORE_ERR_PARSE:
            return 1;
        default:
            return 2;
    }
}

int fail(int status) {
    std::fprintf(stderr, "error: %s\n", mixcore_last_error());
    return exit_for(status);
}

// --seed beats MIXCORE_SEED beats 1.
uint64_t resolve_seed(const CLI::Option* seed_opt, uint64_t seed_flag, bool* ok) {
    *ok = true;
    if (seed_opt->count() > 0) return seed_flag;
    const char* env = std::getenv("MIXCORE_SEED");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
        std::fprintf(stderr, "error: MIXCORE_SEED is not an unsigned integer: %s\n", env);
        *ok = false;
        return 0;
    }
    return parsed;
}

const char* case_name(int32_t label) {
    switch (label) {
        case MIXCORE_CASE_DEGENERATE_ALPHA_ONE:
            return "degenerate_alpha_one";
        case MIXCORE_CASE_SADDLE_POINT:
            return "saddle_point";
        default:
            return "binary_search";
    }
}

double round_to(double v, int precision) {
    const double scale = std::pow(10.0, precision);
    return std::round(v * scale) / scale;
}

// ---- optimize ---------------------------------------------------------

int cmd_optimize(int32_t a, int32_t b, const std::string& format, int precision) {
    mixcore_optimum opt{};
    if (int rc = mixcore_optimize_pair(a, b, 0.0, &opt)) return fail(rc);

    if (format == "json") {
        nlohmann::ordered_json out;
        out["a"] = opt.a;
        out["b"] = opt.b;
        out["case"] = case_name(opt.case_label);
        out["z_star"] = round_to(opt.z_star, precision);
        out["lambda_star"] = round_to(opt.lambda_star, precision);
        out["alpha_star"] = round_to(opt.alpha_star, precision);
        out["c_star"] = round_to(opt.c_star, precision);
        out["avg_edge_size"] = round_to(opt.avg_edge_size, precision);
        if (opt.has_z_star_second) {
            out["z_star_second"] = round_to(opt.z_star_second, precision);
        }
        std::printf("%s\n", out.dump(2).c_str());
        return 0;
    }

    std::printf("a=%" PRId32 "\n", opt.a);
    std::printf("b=%" PRId32 "\n", opt.b);
    std::printf("case=%s\n", case_name(opt.case_label));
    std::printf("z*=%.*f\n", precision, opt.z_star);
    std::printf("lambda*=%.*f\n", precision, opt.lambda_star);
    std::printf("alpha*=%.*f\n", precision, opt.alpha_star);
    std::printf("c*=%.*f\n", precision, opt.c_star);
    std::printf("k_bar=%.*f\n", precision, opt.avg_edge_size);
    if (opt.has_z_star_second) {
        std::printf("z**=%.*f\n", precision, opt.z_star_second);
    }
    return 0;
}

// ---- table ------------------------------------------------------------

int cmd_table(int32_t a, int32_t b_max, int precision) {
    if (b_max < a) {
        std::fprintf(stderr, "error: --b-max must be at least --a\n");
        return 1;
    }
    std::vector<mixcore_optimum> rows(static_cast<size_t>(b_max - a + 1));
    if (int rc = mixcore_table_scan(a, b_max, 0.0, rows.data())) return fail(rc);

    std::printf("b,z_star,lambda_star,alpha_star,k_bar,c_star\n");
    size_t best = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        std::printf("%" PRId32 ",%.*f,%.*f,%.*f,%.*f,%.*f\n", row.b, precision, row.z_star,
                    precision, row.lambda_star, precision, row.alpha_star, precision,
                    row.avg_edge_size, precision, row.c_star);
        if (row.c_star > rows[best].c_star) best = i;
    }
    std::printf("# range maximum c*=%.*f at b=%" PRId32 "\n", precision, rows[best].c_star,
                rows[best].b);
    return 0;
}

// ---- simulate ---------------------------------------------------------

int cmd_simulate(int32_t k1, int32_t k2, uint64_t n, double span, int32_t steps,
                 int32_t trials, uint64_t seed, int32_t jobs) {
    if (trials < 1) {
        std::fprintf(stderr, "error: --trials must be at least 1\n");
        return 1;
    }
    if (steps < 1) {
        std::fprintf(stderr, "error: --steps must be at least 1\n");
        return 1;
    }
    if (!(span > 0.0)) {
        std::fprintf(stderr, "error: --span must be positive\n");
        return 1;
    }

    // The sweep centre is the theoretical threshold of the mixture; for two
    // sizes, this also fixes the mixing fraction at its optimum.
    mixcore_optimum opt{};
    std::vector<int32_t> sizes;
    std::vector<double> fractions;
    if (k2 == 0 || k2 == k1) {
        if (int rc = mixcore_uniform_threshold(k1, &opt)) return fail(rc);
        sizes = {k1};
        fractions = {1.0};
    } else {
        if (int rc = mixcore_optimize_pair(k1, k2, 0.0, &opt)) return fail(rc);
        sizes = {k1, k2};
        fractions = {opt.alpha_star, 1.0 - opt.alpha_star};
    }

    std::vector<double> densities(static_cast<size_t>(steps));
    if (steps == 1) {
        densities[0] = opt.c_star;
    } else {
        for (int32_t i = 0; i < steps; ++i) {
            densities[static_cast<size_t>(i)] =
                opt.c_star - 0.5 * span + span * i / (steps - 1);
        }
    }

    mixcore_sweep_config config{};
    config.sizes = sizes.data();
    config.fractions = fractions.data();
    config.mix_count = static_cast<int32_t>(sizes.size());
    config.n = n;
    config.densities = densities.data();
    config.density_count = steps;
    config.trials_per_density = trials;
    config.base_seed = seed;
    config.jobs = jobs;

    mixcore_sweep* sweep = nullptr;
    if (int rc = mixcore_run_sweep(&config, &sweep)) return fail(rc);

    mixcore_sigmoid_fit fit{};
    const int fit_rc = mixcore_sweep_fit(sweep, &fit);
    const bool have_fit = fit_rc == MIXCORE_OK;

    char* csv = nullptr;
    const int csv_rc = mixcore_sweep_csv(sweep, have_fit ? 1 : 0, &csv);
    if (csv_rc != MIXCORE_OK) {
        mixcore_sweep_free(sweep);
        return fail(csv_rc);
    }
    std::fputs(csv, stdout);
    mixcore_string_free(csv);
    mixcore_sweep_free(sweep);

    if (fit_rc == MIXCORE_ERR_DEGENERATE_FIT) {
        std::fprintf(stderr,
                     "error: failure rates are flat across the sweep; midpoint "
                     "unidentifiable (widen --span or raise --trials)\n");
        return 2;
    }
    if (fit_rc != MIXCORE_OK) return fail(fit_rc);
    std::fprintf(stderr, "# fit: x=%.6f y=%.6f converged=%d after %d iterations\n", fit.x,
                 fit.y, fit.converged, fit.iterations);
    return 0;
}

// ---- retrieval-demo ---------------------------------------------------

bool load_pairs(const std::string& path,
                std::vector<std::pair<std::string, uint64_t>>* pairs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
        return false;
    }
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0) {
            std::fprintf(stderr, "error: %s:%" PRIu64 ": expected key<TAB>value-hex\n",
                         path.c_str(), line_no);
            return false;
        }
        const std::string hex = line.substr(tab + 1);
        char* end = nullptr;
        const unsigned long long value = std::strtoull(hex.c_str(), &end, 16);
        if (end == hex.c_str() || *end != '\0') {
            std::fprintf(stderr, "error: %s:%" PRIu64 ": bad hex value '%s'\n", path.c_str(),
                         line_no, hex.c_str());
            return false;
        }
        pairs->emplace_back(line.substr(0, tab), value);
    }
    return true;
}

int cmd_retrieval_demo(uint64_t m, int32_t r, double c_build, uint64_t seed,
                       int32_t retries, const std::string& pairs_path) {
    std::vector<std::pair<std::string, uint64_t>> pairs;
    if (!pairs_path.empty()) {
        if (!load_pairs(pairs_path, &pairs)) return 1;
    } else {
        std::mt19937_64 value_rng(seed);
        pairs.reserve(m);
        for (uint64_t i = 0; i < m; ++i) {
            pairs.emplace_back("key-" + std::to_string(i), value_rng());
        }
    }
    const uint64_t count = pairs.size();
    std::printf("m=%" PRIu64 "\n", count);
    std::printf("r=%" PRId32 "\n", r);
    std::printf("c_build=%.5f\n", c_build);

    if (count == 0) {
        std::printf("verified 0/0\n");
        std::printf("bits_per_key=n/a\n");
        return 0;
    }

    mixcore_optimum opt{};
    if (int rc = mixcore_optimize_pair(3, 16, 0.0, &opt)) return fail(rc);
    const int32_t sizes[] = {3, 16};
    const double fractions[] = {opt.alpha_star, 1.0 - opt.alpha_star};
    std::printf("mix=3:%.5f,16:%.5f\n", fractions[0], fractions[1]);

    std::vector<const uint8_t*> keys(count);
    std::vector<size_t> key_lens(count);
    std::vector<uint64_t> values(count);
    for (uint64_t i = 0; i < count; ++i) {
        keys[i] = reinterpret_cast<const uint8_t*>(pairs[i].first.data());
        key_lens[i] = pairs[i].first.size();
        values[i] = pairs[i].second;
    }

    mixcore_retrieval* s = nullptr;
    if (int rc = mixcore_retrieval_build(keys.data(), key_lens.data(), values.data(), count,
                                         c_build, sizes, fractions, 2, r, seed, retries,
                                         &s)) {
        return fail(rc);
    }

    uint64_t n_cells = 0, m_out = 0, seed_used = 0;
    int32_t r_out = 0;
    mixcore_retrieval_info(s, &n_cells, &m_out, &r_out, &seed_used);
    std::printf("n=%" PRIu64 "\n", n_cells);
    std::printf("seed=%" PRIu64 "\n", seed_used);
    std::printf("attempts=%" PRIu64 "\n", seed_used - seed + 1);

    const uint64_t mask = r == 64 ? UINT64_MAX : (1ull << r) - 1;
    uint64_t correct = 0;
    for (uint64_t i = 0; i < count; ++i) {
        uint64_t got = 0;
        if (mixcore_retrieval_query(s, keys[i], key_lens[i], &got) == MIXCORE_OK &&
            got == (values[i] & mask)) {
            ++correct;
        }
    }
    std::printf("verified %" PRIu64 "/%" PRIu64 "\n", correct, count);

    double bits_per_key = 0.0, overhead = 0.0;
    mixcore_retrieval_space(s, &bits_per_key, &overhead);
    std::printf("bits_per_key=%.5f\n", bits_per_key);
    std::printf("overhead_factor=%.5f\n", overhead);
    mixcore_retrieval_free(s);

    if (correct != count) {
        std::fprintf(stderr, "error: %" PRIu64 " queries returned wrong values\n",
                     count - correct);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-core peeling thresholds for mixed random hypergraphs"};
    app.set_version_flag("--version", std::string(mixcore_version()));
    app.require_subcommand(1);

    // optimize
    auto* optimize = app.add_subcommand(
        "optimize", "Optimal mixing fraction and threshold for edge sizes a <= b");
    int32_t opt_a = 0, opt_b = 0;
    std::string opt_format = "text";
    int opt_precision = 5;
    optimize->add_option("--a", opt_a, "small edge size (>= 3)")->required();
    optimize->add_option("--b", opt_b, "large edge size (>= a)")->required();
    optimize->add_option("--format", opt_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    optimize->add_option("--precision", opt_precision, "decimals printed (default 5)")
        ->check(CLI::Range(1, 17));

    // table
    auto* table = app.add_subcommand(
        "table", "CSV of optima for b = a..b-max with the range maximum flagged");
    int32_t table_a = 0, table_b_max = 0;
    int table_precision = 5;
    table->add_option("--a", table_a, "small edge size (>= 3)")->required();
    table->add_option("--b-max", table_b_max, "largest partner size")->required();
    table->add_option("--precision", table_precision, "decimals printed (default 5)")
        ->check(CLI::Range(1, 17));

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate",
        "Monte-Carlo peel failure rates around the theoretical threshold, with a "
        "logistic fit of the transition");
    int32_t sim_k1 = 0, sim_k2 = 0, sim_steps = 9, sim_trials = 100, sim_jobs = 0;
    uint64_t sim_n = 100000, sim_seed = 0;
    double sim_span = 0.02;
    simulate->add_option("--k1", sim_k1, "small edge size (>= 3)")->required();
    simulate->add_option("--k2", sim_k2,
                         "large edge size; omit for a single-size hypergraph");
    simulate->add_option("--n", sim_n, "nodes per instance (default 100000)");
    simulate->add_option("--span", sim_span, "density window width (default 0.02)");
    simulate->add_option("--steps", sim_steps, "densities in the window (default 9)");
    simulate->add_option("--trials", sim_trials, "trials per density (default 100)");
    auto* sim_seed_opt =
        simulate->add_option("--seed", sim_seed, "base seed (default $MIXCORE_SEED or 1)");
    simulate->add_option("--jobs", sim_jobs, "worker threads; 0 = hardware (default)");

    // retrieval-demo
    auto* demo = app.add_subcommand(
        "retrieval-demo",
        "Build an XOR-retrieval structure on the optimal 3/16 mixture and verify "
        "every stored key");
    uint64_t demo_m = 10000, demo_seed = 0;
    int32_t demo_r = 16, demo_retries = 3;
    double demo_c = 0.906;
    std::string demo_pairs;
    demo->add_option("--m", demo_m, "random key/value pairs to store (default 10000)");
    demo->add_option("--r", demo_r, "value bits per key (1..64, default 16)")
        ->check(CLI::Range(1, 64));
    demo->add_option("--c", demo_c, "build density m/n (default 0.906)");
    auto* demo_seed_opt =
        demo->add_option("--seed", demo_seed, "build seed (default $MIXCORE_SEED or 1)");
    demo->add_option("--retries", demo_retries, "extra attempts after the first (default 3)")
        ->check(CLI::Range(0, 1000));
    demo->add_option("--pairs", demo_pairs,
                     "read key<TAB>value-hex lines from this file instead of generating");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // every flag problem is a user error
    }

    if (optimize->parsed()) return cmd_optimize(opt_a, opt_b, opt_format, opt_precision);
    if (table->parsed()) return cmd_table(table_a, table_b_max, table_precision);
    if (simulate->parsed()) {
        bool seed_ok = false;
        const uint64_t seed = resolve_seed(sim_seed_opt, sim_seed, &seed_ok);
        if (!seed_ok) return 1;
        return cmd_simulate(sim_k1, sim_k2, sim_n, sim_span, sim_steps, sim_trials, seed,
                            sim_jobs);
    }
    if (demo->parsed()) {
        bool seed_ok = false;
        const uint64_t seed = resolve_seed(demo_seed_opt, demo_seed, &seed_ok);
        if (!seed_ok) return 1;
        return cmd_retrieval_demo(demo_m, demo_r, demo_c, seed, demo_retries, demo_pairs);
    }
    return 1;
}
