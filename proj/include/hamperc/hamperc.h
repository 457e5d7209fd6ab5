#pragma once

/* C interface to the percolation library. Every function that can fail
 * returns an hp_status; on failure hp_last_error() describes the problem
 * (per thread, valid until the next call on that thread). Strings returned
 * through char** are heap-allocated and released with hp_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(HAMPERC_BUILDING_LIBRARY)
#define HP_API __attribute__((visibility("default")))
#else
#define HP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hp_status {
    HP_OK = 0,
    HP_ERR_INVALID_ARGUMENT = 1,
    HP_ERR_DOMAIN = 2,   /* parameter outside the model's numeric domain */
    HP_ERR_OVERFLOW = 3, /* n^d or the edge count exceeds 64 bits */
    HP_ERR_LIMIT = 4,    /* exhaustive oracle refused the graph size */
    HP_ERR_IO = 5,
    HP_ERR_INTERNAL = 6,
    HP_ERR_NULL = 7 /* required pointer argument was NULL */
} hp_status;

typedef struct hp_graph hp_graph;
typedef struct hp_config hp_config;
typedef struct hp_edges hp_edges;
typedef struct hp_clusters hp_clusters;
typedef struct hp_plan hp_plan;
typedef struct hp_run hp_run;

HP_API const char* hp_version(void);
HP_API const char* hp_status_string(hp_status s);
HP_API const char* hp_last_error(void);
HP_API void hp_string_free(char* s);

/* graph */
HP_API hp_status hp_graph_create(uint32_t d, uint32_t n, hp_graph** out);
HP_API void hp_graph_free(hp_graph* g);
HP_API uint64_t hp_graph_vertex_count(const hp_graph* g);
HP_API uint64_t hp_graph_degree(const hp_graph* g);
HP_API uint64_t hp_graph_edge_count(const hp_graph* g);
/* coords has d entries, 0-based */
HP_API hp_status hp_graph_vertex_index(const hp_graph* g, const uint32_t* coords, uint64_t* out);
HP_API hp_status hp_graph_vertex_coords(const hp_graph* g, uint64_t v, uint32_t* coords_out);

/* percolation */
HP_API hp_status hp_config_create(const hp_graph* g, double epsilon, uint64_t seed, hp_config** out);
HP_API void hp_config_free(hp_config* c);
HP_API double hp_config_p(const hp_config* c);

HP_API hp_status hp_sample(const hp_config* c, uint64_t stream, hp_edges** out);
HP_API void hp_edges_free(hp_edges* e);
HP_API uint64_t hp_edges_count(const hp_edges* e);

HP_API hp_status hp_components(const hp_graph* g, const hp_edges* e, hp_clusters** out);
HP_API void hp_clusters_free(hp_clusters* c);
HP_API uint64_t hp_clusters_cmax(const hp_clusters* c);
HP_API uint64_t hp_clusters_c2(const hp_clusters* c);
HP_API uint64_t hp_clusters_count(const hp_clusters* c);
HP_API uint64_t hp_clusters_z_geq(const hp_clusters* c, uint64_t k);
/* component id of vertex v; ids are dense in [0, hp_clusters_count) */
HP_API hp_status hp_clusters_label(const hp_clusters* c, uint64_t v, uint32_t* out);

typedef struct hp_exploration {
    uint64_t origin;
    uint64_t steps;
    uint64_t cluster_size;
    int died_out;
    uint32_t max_horizontal; /* largest per-line count over horizontal lines */
    uint64_t good_lines;     /* horizontal lines with count >= the requested threshold */
} hp_exploration;

/* d = 2 only. */
HP_API hp_status hp_explore(const hp_config* c, uint64_t origin, uint64_t cap, uint64_t stream,
                            uint64_t good_line_threshold, hp_exploration* out);

typedef struct hp_sprinkle_report {
    double p_minus;
    double eta;
    uint64_t large_threshold;
    uint64_t large_clusters;
    uint64_t z_prime;
    int merged_after;
    uint64_t cmax_before;
    uint64_t cmax_after;
    uint64_t good_line_threshold;
    uint64_t min_good_lines; /* n when there are no large clusters */
} hp_sprinkle_report;

/* eta < 0 selects the default sqrt(eps) V^(-1/6). d = 2 only. */
HP_API hp_status hp_sprinkle(const hp_config* c, double eta, uint64_t stream, hp_sprinkle_report* out);

/* Galton-Watson with Bin(N, p) offspring */
HP_API hp_status hp_gw_extinction(uint64_t N, double p, double* out);
HP_API hp_status hp_gw_pmf(uint64_t N, double p, uint64_t k, double* out);
HP_API hp_status hp_gw_tail(uint64_t N, double p, uint64_t ell, double* out);
HP_API hp_status hp_gw_interval(uint64_t N, double p, uint64_t ell, double* out);

/* statistics */
typedef struct hp_estimate {
    double mean;
    double std_error;
    uint64_t n_samples;
    double ci95_low;
    double ci95_high;
} hp_estimate;

HP_API hp_status hp_estimate_chi(const hp_config* c, uint64_t samples, unsigned threads, hp_estimate* out);
HP_API hp_status hp_estimate_cluster_tail(const hp_config* c, uint64_t k, uint64_t samples, unsigned threads,
                                          hp_estimate* out);

/* exhaustive oracle; kind is one of "cmax", "chi", "tail", "zgeq" (vertex and k
 * are used by the last two) */
HP_API hp_status hp_exact_expectation(const hp_graph* g, double p, const char* kind, uint64_t vertex, uint64_t k,
                                      double* out);

/* experiment plans */
HP_API hp_status hp_plan_create(const char* experiment, hp_plan** out);
HP_API hp_status hp_plan_parse(const char* text, hp_plan** out);
HP_API hp_status hp_plan_load(const char* path, hp_plan** out);
HP_API void hp_plan_free(hp_plan* p);
/* key is "section.key" or a bare key, as in the config file */
HP_API hp_status hp_plan_set(hp_plan* p, const char* key, const char* value);
HP_API hp_status hp_plan_serialize(const hp_plan* p, char** out);
HP_API hp_status hp_plan_validate(const hp_plan* p);

typedef void (*hp_progress_fn)(const char* line, void* user);

HP_API hp_status hp_run_execute(const hp_plan* p, hp_progress_fn progress, void* user, hp_run** out);
HP_API void hp_run_free(hp_run* r);
HP_API hp_status hp_run_csv(const hp_run* r, char** out);
HP_API hp_status hp_run_json(const hp_run* r, char** out);
HP_API hp_status hp_run_summary(const hp_run* r, char** out);
HP_API int hp_run_passed(const hp_run* r);
HP_API hp_status hp_run_write_outputs(const hp_run* r);

/* warning text for eps outside the supercritical regime; *out is NULL when
 * there is nothing to report */
HP_API hp_status hp_regime_check(uint32_t d, uint32_t n, double eps, char** out);

#ifdef __cplusplus
}
#endif
