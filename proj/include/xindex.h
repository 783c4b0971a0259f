/* xindex: citation-distance metric engine, C API.
 *
 * Computes collaboration-distance-weighted citation metrics (x-index along
 * with h-index, c-index, tc, np) over a citation corpus, plus the ranking,
 * nonparametric-test, trajectory and clustering analyses built on them.
 *
 * Conventions:
 *   - Opaque handles own their data; free them with the matching *_free.
 *   - Functions return xidx_status; on failure xidx_last_error() gives a
 *     thread-local message.
 *   - Citation distances travel as doubles: a non-negative hop count, or
 *     INFINITY for citations from disconnected components.
 */

#ifndef XINDEX_H
#define XINDEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define XIDX_API __declspec(dllexport)
#else
#define XIDX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xidx_status {
  XIDX_OK = 0,
  XIDX_ERROR = 1,       /* unexpected failure */
  XIDX_EINVAL = 2,      /* invalid argument or precondition violation */
  XIDX_EIO = 3,         /* file or stream error */
  XIDX_ENOTFOUND = 4,   /* unknown author, paper, year context, ... */
  XIDX_EDEGENERATE = 5  /* no defined answer on this input */
} xidx_status;

XIDX_API const char* xidx_version(void);
/* Message for the most recent failure on this thread; never NULL. */
XIDX_API const char* xidx_last_error(void);
XIDX_API void xidx_string_free(char* s);

/* ------------------------------------------------------------------ corpus */

typedef struct xidx_corpus xidx_corpus;

/* Parses line-delimited records ({id, year, authors:[{id}], references:[]}),
 * drops invalid lines with per-reason tallies, and indexes the rest. */
XIDX_API xidx_status xidx_corpus_open_jsonl(const char* path, xidx_corpus** out);
XIDX_API void xidx_corpus_free(xidx_corpus* corpus);

/* Ingest + index summary as a JSON object (caller frees via
 * xidx_string_free). */
XIDX_API xidx_status xidx_corpus_report_json(const xidx_corpus* corpus, char** out_json);

/* Canonical index file: validated records, one JSON object per line, sorted
 * by paper id. Reopening it with xidx_corpus_open_jsonl is lossless. */
XIDX_API xidx_status xidx_corpus_save_index(const xidx_corpus* corpus, const char* path);

XIDX_API uint64_t xidx_corpus_paper_count(const xidx_corpus* corpus);
XIDX_API uint64_t xidx_corpus_author_count(const xidx_corpus* corpus);
XIDX_API uint64_t xidx_corpus_citation_count(const xidx_corpus* corpus);
XIDX_API xidx_status xidx_corpus_year_range(const xidx_corpus* corpus, int32_t* min_year,
                                            int32_t* max_year);

/* ----------------------------------------------------- collaboration graph */

typedef struct xidx_collab_net xidx_collab_net;

/* Co-authorship graph over papers published in [year - window + 1, year]. */
XIDX_API xidx_status xidx_collab_build(const xidx_corpus* corpus, int32_t year, int32_t window,
                                       xidx_collab_net** out);
XIDX_API void xidx_collab_free(xidx_collab_net* net);

XIDX_API uint64_t xidx_collab_node_count(const xidx_collab_net* net);
XIDX_API uint64_t xidx_collab_edge_count(const xidx_collab_net* net);

/* Edge list dump: "author_id<TAB>author_id", sorted. */
XIDX_API xidx_status xidx_collab_write_edges(const xidx_collab_net* net, const char* path);

typedef struct xidx_lcc_stats {
  uint64_t lcc_size;
  double avg_degree;
  double avg_shortest_path; /* meaningful only when has_avg_path != 0 */
  int has_avg_path;
  uint64_t sample_pairs; /* 0 = exact */
} xidx_lcc_stats;

/* Largest-connected-component statistics. avg_shortest_path is exact when
 * sample_pairs == 0 or the LCC has at most exact_threshold nodes, otherwise
 * it averages over sample_pairs seeded uniform node pairs. */
XIDX_API xidx_status xidx_collab_stats(const xidx_collab_net* net, uint64_t sample_pairs,
                                       uint64_t seed, uint64_t exact_threshold, int workers,
                                       xidx_lcc_stats* out);

/* Shortest collaborative distance between two author-id sets (0 when they
 * share an author, INFINITY when disconnected). */
XIDX_API xidx_status xidx_pair_distance(const xidx_collab_net* net, const char* const* authors_p,
                                        size_t n_p, const char* const* authors_q, size_t n_q,
                                        double* out_distance);

/* -------------------------------------------------------------- distances */

typedef struct xidx_distance_set xidx_distance_set;

/* Citation distances and per-year average-distance contexts for every
 * citation whose citing year lies in [from, to]. depth_cap < 0 disables the
 * BFS depth cap (capping a year excludes it from d_bar and is reported). */
XIDX_API xidx_status xidx_distances_compute(const xidx_corpus* corpus, int32_t from, int32_t to,
                                            int32_t window, int workers, int32_t depth_cap,
                                            xidx_distance_set** out);
XIDX_API void xidx_distances_free(xidx_distance_set* set);

XIDX_API uint64_t xidx_distances_record_count(const xidx_distance_set* set);

/* Record accessor; distance reported as hops, INFINITY, or with
 * *censored = 1 a ">= value" lower bound from the depth cap. */
XIDX_API xidx_status xidx_distances_record(const xidx_distance_set* set,
                                           const xidx_corpus* corpus, uint64_t index,
                                           const char** cited_id, const char** citing_id,
                                           int32_t* citing_year, double* distance,
                                           int* censored);

/* Year context lookup (d_bar, lambda = 1/d_bar, valid pair count). */
XIDX_API xidx_status xidx_distances_context(const xidx_distance_set* set, int32_t year,
                                            double* d_bar, double* lambda,
                                            uint64_t* valid_pair_count);

/* Notes worth surfacing: d_bar fallback substitutions and cap-excluded
 * years, as a JSON object. */
XIDX_API xidx_status xidx_distances_notes_json(const xidx_distance_set* set, char** out_json);

/* Table round trip. Distance column serializes as hops, "inf", or ">=N". */
XIDX_API xidx_status xidx_distances_write(const xidx_distance_set* set,
                                          const xidx_corpus* corpus, const char* distances_path,
                                          const char* contexts_path);
XIDX_API xidx_status xidx_distances_load(const xidx_corpus* corpus, const char* distances_path,
                                         const char* contexts_path, xidx_distance_set** out);

/* ---------------------------------------------------------------- metrics */

/* w(d) = 1 - exp(-d / d_bar); requires d_bar > 0, d >= 0 or INFINITY. */
XIDX_API xidx_status xidx_weight(double distance, double d_bar, double* out);

/* Largest h such that at least h counts are >= h. */
XIDX_API int64_t xidx_h_index(const int64_t* per_paper_citation_counts, size_t n);

/* Largest c such that at least c distances are >= c (INFINITY passes every
 * threshold). Negative entries are invalid and yield -1. */
XIDX_API int64_t xidx_c_index(const double* distances, size_t n);

typedef struct xidx_scholar_metrics {
  int32_t as_of_year;
  uint64_t np;
  uint64_t tc;
  uint64_t h;
  uint64_t c;
  double x;
  uint64_t n_inf;
} xidx_scholar_metrics;

typedef struct xidx_metrics_table xidx_metrics_table;

/* Per-scholar np/tc/h/c/x/n_inf as of the cutoff year, for every scholar
 * with at least one paper by then. */
XIDX_API xidx_status xidx_metrics_compute(const xidx_corpus* corpus,
                                          const xidx_distance_set* distances, int32_t cutoff,
                                          int workers, xidx_metrics_table** out);
XIDX_API void xidx_metrics_free(xidx_metrics_table* table);

XIDX_API uint64_t xidx_metrics_count(const xidx_metrics_table* table);
XIDX_API xidx_status xidx_metrics_row(const xidx_metrics_table* table, uint64_t index,
                                      const char** author_id, xidx_scholar_metrics* out);
XIDX_API xidx_status xidx_metrics_get(const xidx_metrics_table* table, const char* author_id,
                                      xidx_scholar_metrics* out);

XIDX_API xidx_status xidx_metrics_write(const xidx_metrics_table* table, const char* path);
XIDX_API xidx_status xidx_metrics_load(const char* path, xidx_metrics_table** out);

/* --------------------------------------------------------------- analysis */

typedef enum xidx_alternative {
  XIDX_ALT_LESS = 0,
  XIDX_ALT_GREATER = 1
} xidx_alternative;

typedef struct xidx_test_result {
  double statistic;
  double p_value;
  uint64_t n;   /* effective sample size */
  int exact;    /* 1 = exact-enumeration p, 0 = normal approximation */
} xidx_test_result;

/* Rank delta (rank under `metric` minus rank under `baseline`; fractional
 * ranks over the full table population, rank 1 = highest value) for each of
 * n_cohort authors. Optional out_rank_* arrays receive the two ranks. */
XIDX_API xidx_status xidx_metrics_rank_delta(const xidx_metrics_table* table, const char* metric,
                                             const char* baseline, const char* const* cohort,
                                             size_t n_cohort, double* out_delta,
                                             double* out_rank_metric, double* out_rank_baseline);

/* One-sided Wilcoxon signed-rank test (statistic = W+, zeros dropped). */
XIDX_API xidx_status xidx_wilcoxon(const double* deltas, size_t n, xidx_alternative alt,
                                   xidx_test_result* out);

/* One-sided Mann-Whitney U test (statistic = U of group1). */
XIDX_API xidx_status xidx_mann_whitney(const double* group1, size_t n1, const double* group2,
                                       size_t n2, xidx_alternative alt, xidx_test_result* out);

/* Eleven trajectory features over a 10-value cumulative series, in the
 * order: early_slope, early_mean, early_std, late_slope, late_mean,
 * late_std, delta_slope, delta_mean, delta_std, first_nonzero_year,
 * max_increment_year. */
XIDX_API xidx_status xidx_trajectory_features(const double* series10, double* out_features11);

typedef struct xidx_trajectory_table xidx_trajectory_table;

/* Trajectory feature rows for scholars whose first ten career years are
 * covered by the distance set and who have >= min_citations by career year
 * ten. */
XIDX_API xidx_status xidx_trajectories_compute(const xidx_corpus* corpus,
                                               const xidx_distance_set* distances,
                                               uint64_t min_citations,
                                               xidx_trajectory_table** out);
XIDX_API void xidx_trajectories_free(xidx_trajectory_table* table);
XIDX_API uint64_t xidx_trajectories_count(const xidx_trajectory_table* table);
XIDX_API xidx_status xidx_trajectories_row(const xidx_trajectory_table* table, uint64_t index,
                                           const char** author_id, double* out_features11);
XIDX_API xidx_status xidx_trajectories_write(const xidx_trajectory_table* table,
                                             const char* path);

/* ------------------------------------------------------------- clustering */

/* In-place per-dimension z-score (population std; zero-variance dims become
 * zeros). data is row-major n x dim. */
XIDX_API xidx_status xidx_standardize(double* data, size_t n, size_t dim);

/* K-means with k-means++ seeding and `restarts` starts, deterministic for a
 * fixed seed. Labels are renumbered largest-cluster-first, so with k = 2 the
 * smaller cluster is label 1. */
XIDX_API xidx_status xidx_kmeans(const double* data, size_t n, size_t dim, uint32_t k,
                                 uint64_t seed, uint32_t restarts, int32_t* out_labels,
                                 double* out_inertia);

XIDX_API xidx_status xidx_silhouette(const double* data, size_t n, size_t dim,
                                     const int32_t* labels, double* out_score);

/* Two-cluster enrichment of a flagged subpopulation: out[0] = ratio in
 * cluster 1, out[1] = ratio in cluster 0, out[2] = enrichment (INFINITY when
 * cluster 0 has no flagged member but cluster 1 does). */
XIDX_API xidx_status xidx_enrichment(const int32_t* labels, const uint8_t* flags, size_t n,
                                     double out[3]);

/* -------------------------------------------------------------- synthesis */

typedef struct xidx_synth_config {
  uint64_t seed;
  int32_t year_from;
  int32_t year_to;
  uint32_t n_background_authors;
  uint32_t community_count;
  double inter_community_edge_prob;
  uint32_t hp_count;
  uint32_t hp_papers_per_year;
  double hp_citation_radius;
  uint32_t ta_count;
  uint32_t ta_papers_per_year;
  double ta_citation_radius;
  uint32_t background_papers_per_community_year;
  uint32_t background_refs_per_paper;
  uint32_t archetype_refs_per_paper;
} xidx_synth_config;

XIDX_API void xidx_synth_config_default(xidx_synth_config* out);

/* Writes a synthetic corpus (line-delimited records in generation order) to
 * corpus_path, and the hyperprolific / long-reach archetype author ids to
 * the optional cohort paths (one id per line). */
XIDX_API xidx_status xidx_synth_corpus(const xidx_synth_config* config, const char* corpus_path,
                                       const char* hp_cohort_path, const char* ta_cohort_path);

/* n 10-year cumulative trajectories, a breakout_fraction share following a
 * breakout profile. out_series is row-major n x 10; out_flags marks breakout
 * rows with 1. */
XIDX_API xidx_status xidx_synth_trajectories(size_t n, double breakout_fraction, uint64_t seed,
                                             double* out_series, uint8_t* out_flags);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* XINDEX_H */
