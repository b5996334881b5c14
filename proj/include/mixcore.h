/* mixcore — peeling thresholds for mixed-size random hypergraphs.
 *
 * C interface over the C++ core.  Every function returns a status code
 * (MIXCORE_OK on success); objects are handled through opaque pointers and
 * released with the matching _free function.  mixcore_last_error() describes
 * the most recent failure on the calling thread.
 */
#ifndef MIXCORE_H
#define MIXCORE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    MIXCORE_OK = 0,
    MIXCORE_ERR_INVALID_ARGUMENT = 1, /* malformed input (bad sizes, fractions, ...) */
    MIXCORE_ERR_DOMAIN = 2,           /* argument outside a function's domain */
    MIXCORE_ERR_NO_SIGN_CHANGE = 3,   /* root bracket without a sign change */
    MIXCORE_ERR_NON_FINITE = 4,       /* NaN/inf during a numeric routine */
    MIXCORE_ERR_POLE = 5,             /* evaluation at a pole */
    MIXCORE_ERR_DEGENERATE_FIT = 6,   /* flat data, fit midpoint unidentifiable */
    MIXCORE_ERR_BUILD_FAILED = 7,     /* retrieval build exhausted its retries */
    MIXCORE_ERR_PARSE = 8,            /* malformed serialized bytes */
    MIXCORE_ERR_INTERNAL = 9
};

/* Which regime produced an optimum. */
enum {
    MIXCORE_CASE_DEGENERATE_ALPHA_ONE = 0,
    MIXCORE_CASE_SADDLE_POINT = 1,
    MIXCORE_CASE_BINARY_SEARCH = 2
};

const char* mixcore_version(void);

/* Message for the last error on this thread; empty string if none. */
const char* mixcore_last_error(void);

/* Frees strings returned through char** out-parameters. */
void mixcore_string_free(char* s);

/* ---- thresholds ------------------------------------------------------- */

typedef struct {
    int32_t a;
    int32_t b;
    int32_t case_label;        /* MIXCORE_CASE_* */
    double z_star;
    double lambda_star;
    double alpha_star;
    double c_star;
    double avg_edge_size;
    double z_star_second;      /* meaningful iff has_z_star_second */
    int32_t has_z_star_second;
} mixcore_optimum;

/* Optimal threshold and mixing fraction for edge sizes 3 <= a <= b.
 * eps <= 0 selects the default stopping gap (1e-11). */
int mixcore_optimize_pair(int32_t a, int32_t b, double eps, mixcore_optimum* out);

/* Threshold for a single edge size k >= 3. */
int mixcore_uniform_threshold(int32_t k, mixcore_optimum* out);

/* Threshold for an arbitrary mixture by direct minimization over the
 * generation rate.  sizes must be strictly increasing, all >= 3; fractions
 * non-negative summing to 1 with fractions[0] > 0. */
int mixcore_general_threshold(const int32_t* sizes, const double* fractions, int32_t count,
                              double* out);

/* Smallest partner size at which the two-minima regime first appears. */
int mixcore_b_prime(int32_t a, int32_t* out);

/* Optima for b = a..b_max; rows must hold b_max - a + 1 entries. */
int mixcore_table_scan(int32_t a, int32_t b_max, double eps, mixcore_optimum* rows);

/* ---- hypergraph experiments ------------------------------------------ */

typedef struct mixcore_hypergraph mixcore_hypergraph;

/* Sample m edges over n nodes with round(fractions[i] * m) edges of
 * sizes[i] (remainder on the last size).  Deterministic in seed. */
int mixcore_hypergraph_generate(uint64_t n, uint64_t m, const int32_t* sizes,
                                const double* fractions, int32_t count, uint64_t seed,
                                mixcore_hypergraph** out);

void mixcore_hypergraph_free(mixcore_hypergraph* h);

/* Node and edge counts left after peeling to the 2-core. */
int mixcore_hypergraph_peel(const mixcore_hypergraph* h, uint64_t* core_nodes,
                            uint64_t* core_edges);

int mixcore_hypergraph_has_empty_core(const mixcore_hypergraph* h, int32_t* out);

/* Text form: header "n m", then one edge per line of space-separated ids. */
int mixcore_hypergraph_edge_list(const mixcore_hypergraph* h, char** out);

typedef struct mixcore_sweep mixcore_sweep;

typedef struct {
    const int32_t* sizes;
    const double* fractions;
    int32_t mix_count;
    uint64_t n;
    const double* densities;  /* edge densities; edges = round(density * n) */
    int32_t density_count;
    int32_t trials_per_density;
    uint64_t base_seed;
    int32_t jobs;             /* worker threads; 0 = hardware concurrency */
} mixcore_sweep_config;

/* Monte-Carlo failure rates around a suspected threshold.  Per-trial seeds
 * derive from (base_seed, density index, trial index), so results do not
 * depend on the worker count. */
int mixcore_run_sweep(const mixcore_sweep_config* config, mixcore_sweep** out);

void mixcore_sweep_free(mixcore_sweep* sweep);

int mixcore_sweep_row(const mixcore_sweep* sweep, int32_t index, double* c, int32_t* trials,
                      int32_t* failures, double* failure_rate);

typedef struct {
    double x;        /* transition midpoint */
    double y;        /* transition width */
    double ss_res;   /* residual sum of squares */
    int32_t converged;
    int32_t iterations;
} mixcore_sigmoid_fit;

/* Logistic fit of the failure-rate curve.  Returns
 * MIXCORE_ERR_DEGENERATE_FIT (with *out still filled) when every rate is
 * identical. */
int mixcore_sweep_fit(const mixcore_sweep* sweep, mixcore_sigmoid_fit* out);

/* CSV rows plus fit/seed comment lines; with_fit != 0 appends the fit. */
int mixcore_sweep_csv(const mixcore_sweep* sweep, int32_t with_fit, char** out);

/* ---- retrieval -------------------------------------------------------- */

typedef struct mixcore_retrieval mixcore_retrieval;

/* Build an r-bit XOR-retrieval structure over m key/value pairs at build
 * density c_build (cells = ceil(m / c_build)).  Non-empty cores retry with
 * seed+1 up to max_retries times before MIXCORE_ERR_BUILD_FAILED. */
int mixcore_retrieval_build(const uint8_t* const* keys, const size_t* key_lens,
                            const uint64_t* values, uint64_t m, double c_build,
                            const int32_t* sizes, const double* fractions, int32_t mix_count,
                            int32_t r, uint64_t seed, int32_t max_retries,
                            mixcore_retrieval** out);

void mixcore_retrieval_free(mixcore_retrieval* s);

int mixcore_retrieval_query(const mixcore_retrieval* s, const uint8_t* key, size_t key_len,
                            uint64_t* out);

int mixcore_retrieval_space(const mixcore_retrieval* s, double* bits_per_key,
                            double* overhead_factor);

/* Structure parameters: any out-pointer may be NULL. */
int mixcore_retrieval_info(const mixcore_retrieval* s, uint64_t* n, uint64_t* m, int32_t* r,
                           uint64_t* seed);

/* Little-endian blob round-trip; free bytes with mixcore_bytes_free. */
int mixcore_retrieval_serialize(const mixcore_retrieval* s, uint8_t** out_bytes,
                                size_t* out_len);
int mixcore_retrieval_deserialize(const uint8_t* bytes, size_t len, mixcore_retrieval** out);
void mixcore_bytes_free(uint8_t* bytes);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MIXCORE_H */
