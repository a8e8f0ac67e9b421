/* C interface to the groupsketch library.
 *
 * All functions return gs_status; out-parameters are written only on GS_OK.
 * gs_last_error() describes the most recent failure on the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * gs_string_free(). Handles are released with their matching _free call.
 */
#ifndef GROUPSKETCH_H
#define GROUPSKETCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gs_status {
    GS_OK = 0,
    GS_ERR_INVALID_ARGUMENT = 1,
    GS_ERR_CAP_EXCEEDED = 2,  /* type space too large to enumerate */
    GS_ERR_NUMERIC = 3,       /* unverifiable scheme or degenerate numerics */
    GS_ERR_INCONSISTENT = 4,  /* malformed joint law */
    GS_ERR_INTERNAL = 5
} gs_status;

const char* gs_version(void);
const char* gs_last_error(void);
void gs_string_free(char* s);

/* ---- discrete scheme: source + aggregation + channel ---- */

typedef struct gs_scheme gs_scheme;

typedef struct gs_scheme_params {
    int alphabet_size;      /* |X| >= 2 */
    double activation_prob; /* p in (0, 1/|X|] */
    int group_size;         /* n >= 1 */
    double eta0;
    double eta1;
    double eta2;            /* cross errors among active symbols, |X| > 2 */
    /* identity | all1 | majority | threshold:<t> | best | greedy:<k> */
    const char* surjection;
} gs_scheme_params;

gs_status gs_scheme_create(const gs_scheme_params* params, gs_scheme** out);
void gs_scheme_free(gs_scheme* scheme);

typedef struct gs_metrics {
    double compactness;     /* C = H(Y), nats */
    double security;        /* S = H(X|Y), nats */
    double verification;    /* V = I(Y;Q), nats */
    double source_entropy;  /* H(X), nats */
} gs_metrics;

gs_status gs_scheme_metrics(const gs_scheme* scheme, gs_metrics* out);
gs_status gs_scheme_output_symbols(const gs_scheme* scheme, int* out);
/* The surjection table as a JSON array, type index -> output symbol. */
gs_status gs_scheme_surjection_json(const gs_scheme* scheme, char** out_json);

/* Smallest m with m >= -log(epsilon) / v_nats. */
gs_status gs_required_length(double v_nats, double epsilon, long long* out_m);

/* Exhaustive threshold scan for a binary scheme; any p in (0, 1). */
gs_status gs_best_threshold(double p, int group_size, double eta0, double eta1,
                            int* out_threshold, double* out_v);

/* Noiseless gradient of V in the probabilistic surjection theta (length
 * group_size + 1). Entries of out_derivative may be +-infinity; out_diverged
 * is set to 1 when a boundary theta makes the derivative diverge. */
gs_status gs_surjection_gradient(double p, int group_size, const double* theta,
                                 int theta_len, double* out_derivative,
                                 double* out_k1, double* out_k2,
                                 int* out_diverged);

/* ---- random-projection embedding ---- */

gs_status gs_activation_prob(double lambda, double* out_p);
gs_status gs_threshold_for_activation(double p, double* out_lambda);
/* Channel rates induced at correlation c by thresholds (lambda_x, lambda_q). */
gs_status gs_induced_rates(double lambda_x, double lambda_q, double c,
                           double* out_eta0, double* out_eta1);

typedef struct gs_grid_result {
    double lambda_x;
    double lambda_q;
    double v;
    double p;
    double eta0;
    double eta1;
    int threshold; /* 0 for the identity family */
} gs_grid_result;

/* family: identity | majority | all1 | best. Empty grids are rejected. */
gs_status gs_grid_search(double c, int group_size, const char* family,
                         const double* lambda_x_grid, int lambda_x_len,
                         const double* lambda_q_grid, int lambda_q_len,
                         gs_grid_result* out);

/* ---- Monte-Carlo verification ---- */

/* config_json follows the groupsketch.simulation/1 schema; the returned
 * outcome JSON echoes the config so runs reproduce from their own output. */
gs_status gs_simulate_json(const char* config_json, char** out_json);

/* ---- Bloom filter baseline ---- */

typedef struct gs_bloom gs_bloom;

gs_status gs_bloom_create(long long bit_count, int hash_count, uint64_t seed,
                          gs_bloom** out);
void gs_bloom_free(gs_bloom* filter);
gs_status gs_bloom_insert(gs_bloom* filter, const void* data, size_t len);
gs_status gs_bloom_contains(const gs_bloom* filter, const void* data,
                            size_t len, int* out);
gs_status gs_bloom_optimal_k(long long bit_count, long long item_count,
                             int* out);

/* Enrolls item_count random items both as a Bloom filter and as the matching
 * all-ones aggregation, reports structural identity, false-negative and
 * false-positive behaviour, and the shared length bound at epsilon.
 * bit_count = 0 picks the bound's length. */
gs_status gs_bloom_compare_json(int item_count, long long bit_count,
                                double epsilon, uint64_t seed, int probe_count,
                                char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* GROUPSKETCH_H */
