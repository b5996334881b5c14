#include "mixcore.h"

#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "experiment.hpp"
#include "hypergraph.hpp"
#include "optimizer.hpp"
#include "retrieval.hpp"
#include "threshold.hpp"

namespace {

thread_local std::string g_last_error;

// Translates C++ exceptions from `fn` into status codes and stashes the
// message for mixcore_last_error().
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const mixcore::DomainError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_DOMAIN;
    } catch (const mixcore::NoSignChangeError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_NO_SIGN_CHANGE;
    } catch (const mixcore::NonFiniteError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_NON_FINITE;
    } catch (const mixcore::PoleError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_POLE;
    } catch (const mixcore::BuildFailedError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_BUILD_FAILED;
    } catch (const mixcore::ParseError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_PARSE;
    } catch (const mixcore::InvalidSizesError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_INVALID_ARGUMENT;
    } catch (const mixcore::InvalidParamsError& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return MIXCORE_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MIXCORE_ERR_INTERNAL;
    }
}

mixcore::EdgeMix make_mix(const int32_t* sizes, const double* fractions, int32_t count) {
    if (sizes == nullptr || fractions == nullptr || count < 1) {
        throw mixcore::InvalidParamsError("mixture: need sizes, fractions and count >= 1");
    }
    return mixcore::EdgeMix(std::vector<int>(sizes, sizes + count),
                            std::vector<double>(fractions, fractions + count));
}

void fill_optimum(const mixcore::Optimum& opt, mixcore_optimum* out) {
    out->a = opt.a;
    out->b = opt.b;
    switch (opt.case_label) {
        case mixcore::CaseLabel::DegenerateAlphaOne:
            out->case_label = MIXCORE_CASE_DEGENERATE_ALPHA_ONE;
            break;
        case mixcore::CaseLabel::SaddlePoint:
            out->case_label = MIXCORE_CASE_SADDLE_POINT;
            break;
        case mixcore::CaseLabel::BinarySearch:
            out->case_label = MIXCORE_CASE_BINARY_SEARCH;
            break;
    }
    out->z_star = opt.z_star;
    out->lambda_star = opt.lambda_star;
    out->alpha_star = opt.alpha_star;
    out->c_star = opt.c_star;
    out->avg_edge_size = opt.avg_edge_size;
    out->z_star_second = opt.z_star_second.value_or(0.0);
    out->has_z_star_second = opt.z_star_second.has_value() ? 1 : 0;
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int require(bool ok, const char* message) {
    if (!ok) {
        g_last_error = message;
        return MIXCORE_ERR_INVALID_ARGUMENT;
    }
    return MIXCORE_OK;
}

}  // namespace

struct mixcore_hypergraph {
    mixcore::Hypergraph graph;
};

struct mixcore_sweep {
    mixcore::SweepResult result;
};

struct mixcore_retrieval {
    mixcore::RetrievalStructure structure;
};

extern "C" {

const char* mixcore_version(void) { return "1.0.0"; }

const char* mixcore_last_error(void) { return g_last_error.c_str(); }

void mixcore_string_free(char* s) { delete[] s; }

void mixcore_bytes_free(uint8_t* bytes) { delete[] bytes; }

int mixcore_optimize_pair(int32_t a, int32_t b, double eps, mixcore_optimum* out) {
    if (int rc = require(out != nullptr, "optimize_pair: out is NULL")) return rc;
    return guarded([&] {
        fill_optimum(mixcore::optimize_pair(a, b, eps > 0.0 ? eps : 1e-11), out);
        return MIXCORE_OK;
    });
}

int mixcore_uniform_threshold(int32_t k, mixcore_optimum* out) {
    if (int rc = require(out != nullptr, "uniform_threshold: out is NULL")) return rc;
    return guarded([&] {
        fill_optimum(mixcore::uniform_threshold(k), out);
        return MIXCORE_OK;
    });
}

int mixcore_general_threshold(const int32_t* sizes, const double* fractions, int32_t count,
                              double* out) {
    if (int rc = require(out != nullptr, "general_threshold: out is NULL")) return rc;
    return guarded([&] {
        *out = mixcore::general_threshold(make_mix(sizes, fractions, count));
        return MIXCORE_OK;
    });
}

int mixcore_b_prime(int32_t a, int32_t* out) {
    if (int rc = require(out != nullptr, "b_prime: out is NULL")) return rc;
    return guarded([&] {
        *out = mixcore::b_prime(a);
        return MIXCORE_OK;
    });
}

int mixcore_table_scan(int32_t a, int32_t b_max, double eps, mixcore_optimum* rows) {
    if (int rc = require(rows != nullptr, "table_scan: rows is NULL")) return rc;
    return guarded([&] {
        const auto table = mixcore::table_scan(a, b_max, eps > 0.0 ? eps : 1e-11);
        for (size_t i = 0; i < table.size(); ++i) fill_optimum(table[i], &rows[i]);
        return MIXCORE_OK;
    });
}

int mixcore_hypergraph_generate(uint64_t n, uint64_t m, const int32_t* sizes,
                                const double* fractions, int32_t count, uint64_t seed,
                                mixcore_hypergraph** out) {
    if (int rc = require(out != nullptr, "hypergraph_generate: out is NULL")) return rc;
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<mixcore_hypergraph>();
        handle->graph = mixcore::generate_mixed(n, m, make_mix(sizes, fractions, count), seed);
        *out = handle.release();
        return MIXCORE_OK;
    });
}

void mixcore_hypergraph_free(mixcore_hypergraph* h) { delete h; }

int mixcore_hypergraph_peel(const mixcore_hypergraph* h, uint64_t* core_nodes,
                            uint64_t* core_edges) {
    if (int rc = require(h != nullptr, "hypergraph_peel: handle is NULL")) return rc;
    return guarded([&] {
        const auto result = mixcore::peel(h->graph);
        if (core_nodes != nullptr) *core_nodes = result.core_node_count;
        if (core_edges != nullptr) *core_edges = result.core_edge_count;
        return MIXCORE_OK;
    });
}

int mixcore_hypergraph_has_empty_core(const mixcore_hypergraph* h, int32_t* out) {
    if (int rc = require(h != nullptr && out != nullptr, "has_empty_core: NULL argument")) {
        return rc;
    }
    return guarded([&] {
        *out = mixcore::has_empty_core(h->graph) ? 1 : 0;
        return MIXCORE_OK;
    });
}

int mixcore_hypergraph_edge_list(const mixcore_hypergraph* h, char** out) {
    if (int rc = require(h != nullptr && out != nullptr, "edge_list: NULL argument")) return rc;
    return guarded([&] {
        *out = copy_string(mixcore::to_edge_list(h->graph));
        return MIXCORE_OK;
    });
}

int mixcore_run_sweep(const mixcore_sweep_config* config, mixcore_sweep** out) {
    if (int rc = require(config != nullptr && out != nullptr, "run_sweep: NULL argument")) {
        return rc;
    }
    *out = nullptr;
    return guarded([&] {
        if (config->densities == nullptr || config->density_count < 1) {
            throw mixcore::InvalidParamsError("run_sweep: need at least one density");
        }
        mixcore::SweepConfig cfg{
            make_mix(config->sizes, config->fractions, config->mix_count),
            config->n,
            std::vector<double>(config->densities, config->densities + config->density_count),
            config->trials_per_density,
            config->base_seed,
            config->jobs,
        };
        auto handle = std::make_unique<mixcore_sweep>(mixcore_sweep{mixcore::run_sweep(cfg)});
        *out = handle.release();
        return MIXCORE_OK;
    });
}

void mixcore_sweep_free(mixcore_sweep* sweep) { delete sweep; }

int mixcore_sweep_row(const mixcore_sweep* sweep, int32_t index, double* c, int32_t* trials,
                      int32_t* failures, double* failure_rate) {
    if (int rc = require(sweep != nullptr, "sweep_row: handle is NULL")) return rc;
    if (int rc = require(index >= 0 && static_cast<size_t>(index) < sweep->result.rows.size(),
                         "sweep_row: index out of range")) {
        return rc;
    }
    const auto& row = sweep->result.rows[index];
    if (c != nullptr) *c = row.c;
    if (trials != nullptr) *trials = row.trials;
    if (failures != nullptr) *failures = row.failures;
    if (failure_rate != nullptr) *failure_rate = row.failure_rate;
    return MIXCORE_OK;
}

int mixcore_sweep_fit(const mixcore_sweep* sweep, mixcore_sigmoid_fit* out) {
    if (int rc = require(sweep != nullptr && out != nullptr, "sweep_fit: NULL argument")) {
        return rc;
    }
    return guarded([&] {
        const auto fit = mixcore::estimate_threshold(sweep->result);
        out->x = fit.x;
        out->y = fit.y;
        out->ss_res = fit.ss_res;
        out->converged = fit.converged ? 1 : 0;
        out->iterations = fit.iterations;
        if (!fit.converged && fit.iterations == 0) {
            g_last_error = "sweep_fit: all rates identical, midpoint unidentifiable";
            return MIXCORE_ERR_DEGENERATE_FIT;
        }
        return MIXCORE_OK;
    });
}

int mixcore_sweep_csv(const mixcore_sweep* sweep, int32_t with_fit, char** out) {
    if (int rc = require(sweep != nullptr && out != nullptr, "sweep_csv: NULL argument")) {
        return rc;
    }
    return guarded([&] {
        std::optional<mixcore::SigmoidFit> fit;
        if (with_fit != 0) fit = mixcore::estimate_threshold(sweep->result);
        *out = copy_string(mixcore::emit_csv(sweep->result, fit));
        return MIXCORE_OK;
    });
}

int mixcore_retrieval_build(const uint8_t* const* keys, const size_t* key_lens,
                            const uint64_t* values, uint64_t m, double c_build,
                            const int32_t* sizes, const double* fractions, int32_t mix_count,
                            int32_t r, uint64_t seed, int32_t max_retries,
                            mixcore_retrieval** out) {
    if (int rc = require(out != nullptr, "retrieval_build: out is NULL")) return rc;
    *out = nullptr;
    if (int rc = require(keys != nullptr && key_lens != nullptr && values != nullptr,
                         "retrieval_build: keys/values are NULL")) {
        return rc;
    }
    return guarded([&] {
        std::vector<std::pair<std::string, uint64_t>> pairs;
        pairs.reserve(m);
        for (uint64_t i = 0; i < m; ++i) {
            pairs.emplace_back(
                std::string(reinterpret_cast<const char*>(keys[i]), key_lens[i]), values[i]);
        }
        auto handle = std::make_unique<mixcore_retrieval>(mixcore_retrieval{
            mixcore::build(pairs, c_build, make_mix(sizes, fractions, mix_count), r, seed,
                           max_retries)});
        *out = handle.release();
        return MIXCORE_OK;
    });
}

void mixcore_retrieval_free(mixcore_retrieval* s) { delete s; }

int mixcore_retrieval_query(const mixcore_retrieval* s, const uint8_t* key, size_t key_len,
                            uint64_t* out) {
    if (int rc = require(s != nullptr && out != nullptr && (key != nullptr || key_len == 0),
                         "retrieval_query: NULL argument")) {
        return rc;
    }
    return guarded([&] {
        *out = mixcore::query(s->structure, std::span<const uint8_t>(key, key_len));
        return MIXCORE_OK;
    });
}

int mixcore_retrieval_space(const mixcore_retrieval* s, double* bits_per_key,
                            double* overhead_factor) {
    if (int rc = require(s != nullptr, "retrieval_space: handle is NULL")) return rc;
    return guarded([&] {
        const auto report = mixcore::space_report(s->structure);
        if (bits_per_key != nullptr) *bits_per_key = report.bits_per_key;
        if (overhead_factor != nullptr) *overhead_factor = report.overhead_factor;
        return MIXCORE_OK;
    });
}

int mixcore_retrieval_info(const mixcore_retrieval* s, uint64_t* n, uint64_t* m, int32_t* r,
                           uint64_t* seed) {
    if (int rc = require(s != nullptr, "retrieval_info: handle is NULL")) return rc;
    if (n != nullptr) *n = s->structure.n;
    if (m != nullptr) *m = s->structure.m;
    if (r != nullptr) *r = s->structure.r;
    if (seed != nullptr) *seed = s->structure.seed;
    return MIXCORE_OK;
}

int mixcore_retrieval_serialize(const mixcore_retrieval* s, uint8_t** out_bytes,
                                size_t* out_len) {
    if (int rc = require(s != nullptr && out_bytes != nullptr && out_len != nullptr,
                         "retrieval_serialize: NULL argument")) {
        return rc;
    }
    return guarded([&] {
        const auto bytes = mixcore::serialize(s->structure);
        auto* buf = new uint8_t[bytes.size()];
        std::memcpy(buf, bytes.data(), bytes.size());
        *out_bytes = buf;
        *out_len = bytes.size();
        return MIXCORE_OK;
    });
}

int mixcore_retrieval_deserialize(const uint8_t* bytes, size_t len, mixcore_retrieval** out) {
    if (int rc = require(bytes != nullptr && out != nullptr,
                         "retrieval_deserialize: NULL argument")) {
        return rc;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<mixcore_retrieval>(
            mixcore_retrieval{mixcore::deserialize(std::span<const uint8_t>(bytes, len))});
        *out = handle.release();
        return MIXCORE_OK;
    });
}

}  // extern "C"
