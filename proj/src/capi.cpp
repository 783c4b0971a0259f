#include "xindex.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "xidx/analysis.hpp"
#include "xidx/cluster.hpp"
#include "xidx/collabnet.hpp"
#include "xidx/corpus.hpp"
#include "xidx/distance.hpp"
#include "xidx/error.hpp"
#include "xidx/metrics.hpp"
#include "xidx/synth.hpp"
#include "xidx/trajectory.hpp"
#include "xidx/version.hpp"

struct xidx_corpus {
  xidx::CorpusIndex index;
  xidx::IngestReport report;
};

struct xidx_collab_net {
  xidx::CollabNetwork net;
};

struct xidx_distance_set {
  xidx::DistanceSet set;
};

struct xidx_metrics_table {
  xidx::MetricsTable table;
};

struct xidx_trajectory_table {
  std::vector<xidx::TrajectoryRow> rows;
};

namespace {

thread_local std::string t_last_error;

xidx_status fail(xidx_status status, const char* what) {
  t_last_error = what;
  return status;
}

template <typename Fn>
xidx_status guarded(Fn&& fn) {
  try {
    fn();
    return XIDX_OK;
  } catch (const xidx::InvalidArgument& e) {
    return fail(XIDX_EINVAL, e.what());
  } catch (const xidx::NotFound& e) {
    return fail(XIDX_ENOTFOUND, e.what());
  } catch (const xidx::Degenerate& e) {
    return fail(XIDX_EDEGENERATE, e.what());
  } catch (const xidx::IoError& e) {
    return fail(XIDX_EIO, e.what());
  } catch (const std::exception& e) {
    return fail(XIDX_ERROR, e.what());
  }
}

xidx_status require(bool ok, const char* what) {
  return ok ? XIDX_OK : fail(XIDX_EINVAL, what);
}

double distance_to_double(xidx::Distance d) {
  return d.is_infinite() ? std::numeric_limits<double>::infinity()
                         : static_cast<double>(d.value());
}

std::ifstream open_in(const char* path) {
  std::ifstream in(path);
  if (!in) throw xidx::IoError(std::string("cannot open for reading: ") + path);
  return in;
}

std::ofstream open_out(const char* path) {
  std::ofstream out(path);
  if (!out) throw xidx::IoError(std::string("cannot open for writing: ") + path);
  return out;
}

xidx::Alternative to_alt(xidx_alternative alt) {
  return alt == XIDX_ALT_GREATER ? xidx::Alternative::kGreater : xidx::Alternative::kLess;
}

void fill_test_result(const xidx::TestResult& in, xidx_test_result* out) {
  out->statistic = in.statistic;
  out->p_value = in.p_value;
  out->n = in.n;
  out->exact = in.exact ? 1 : 0;
}

void fill_metrics(const xidx::ScholarMetrics& m, xidx_scholar_metrics* out) {
  out->as_of_year = m.as_of_year;
  out->np = m.np;
  out->tc = m.tc;
  out->h = m.h;
  out->c = m.c;
  out->x = m.x;
  out->n_inf = m.n_inf;
}

}  // namespace

extern "C" {

const char* xidx_version(void) { return xidx::kEngineVersion; }

const char* xidx_last_error(void) { return t_last_error.c_str(); }

void xidx_string_free(char* s) { std::free(s); }

/* corpus ------------------------------------------------------------------ */

xidx_status xidx_corpus_open_jsonl(const char* path, xidx_corpus** out) {
  if (auto s = require(path && out, "xidx_corpus_open_jsonl: null argument")) return s;
  return guarded([&] {
    auto in = open_in(path);
    auto handle = std::make_unique<xidx_corpus>();
    auto records = xidx::parse_records(in, handle->report);
    handle->index = xidx::CorpusIndex::build(std::move(records));
    *out = handle.release();
  });
}

void xidx_corpus_free(xidx_corpus* corpus) { delete corpus; }

xidx_status xidx_corpus_report_json(const xidx_corpus* corpus, char** out_json) {
  if (auto s = require(corpus && out_json, "xidx_corpus_report_json: null argument")) return s;
  return guarded([&] {
    nlohmann::json j{{"lines_read", corpus->report.lines_read},
                     {"accepted", corpus->report.accepted},
                     {"rejected", corpus->report.rejected},
                     {"blank_lines", corpus->report.blank_lines},
                     {"reject_reasons", corpus->report.reject_reasons},
                     {"warnings", corpus->report.warnings},
                     {"papers", corpus->index.paper_count()},
                     {"authors", corpus->index.author_count()},
                     {"citations", corpus->index.citation_count()},
                     {"dangling_references", corpus->index.dangling_references()},
                     {"duplicate_citations", corpus->index.duplicate_citations()}};
    *out_json = ::strdup(j.dump().c_str());
    if (!*out_json) throw std::bad_alloc();
  });
}

xidx_status xidx_corpus_save_index(const xidx_corpus* corpus, const char* path) {
  if (auto s = require(corpus && path, "xidx_corpus_save_index: null argument")) return s;
  return guarded([&] {
    auto out = open_out(path);
    corpus->index.save(out);
  });
}

uint64_t xidx_corpus_paper_count(const xidx_corpus* corpus) {
  return corpus ? corpus->index.paper_count() : 0;
}

uint64_t xidx_corpus_author_count(const xidx_corpus* corpus) {
  return corpus ? corpus->index.author_count() : 0;
}

uint64_t xidx_corpus_citation_count(const xidx_corpus* corpus) {
  return corpus ? corpus->index.citation_count() : 0;
}

xidx_status xidx_corpus_year_range(const xidx_corpus* corpus, int32_t* min_year,
                                   int32_t* max_year) {
  if (auto s = require(corpus && min_year && max_year, "xidx_corpus_year_range: null argument")) {
    return s;
  }
  if (corpus->index.empty()) return fail(XIDX_EDEGENERATE, "corpus is empty");
  *min_year = corpus->index.min_year();
  *max_year = corpus->index.max_year();
  return XIDX_OK;
}

/* collaboration graph ----------------------------------------------------- */

xidx_status xidx_collab_build(const xidx_corpus* corpus, int32_t year, int32_t window,
                              xidx_collab_net** out) {
  if (auto s = require(corpus && out, "xidx_collab_build: null argument")) return s;
  return guarded([&] {
    *out = new xidx_collab_net{xidx::build_window_graph(corpus->index, year, window)};
  });
}

void xidx_collab_free(xidx_collab_net* net) { delete net; }

uint64_t xidx_collab_node_count(const xidx_collab_net* net) {
  return net ? net->net.node_count() : 0;
}

uint64_t xidx_collab_edge_count(const xidx_collab_net* net) {
  return net ? net->net.edge_count() : 0;
}

xidx_status xidx_collab_write_edges(const xidx_collab_net* net, const char* path) {
  if (auto s = require(net && path, "xidx_collab_write_edges: null argument")) return s;
  return guarded([&] {
    auto out = open_out(path);
    net->net.write_edges(out);
  });
}

xidx_status xidx_collab_stats(const xidx_collab_net* net, uint64_t sample_pairs, uint64_t seed,
                              uint64_t exact_threshold, int workers, xidx_lcc_stats* out) {
  if (auto s = require(net && out, "xidx_collab_stats: null argument")) return s;
  return guarded([&] {
    auto stats = xidx::graph_stats(net->net, sample_pairs, seed, exact_threshold, workers);
    out->lcc_size = stats.lcc_size;
    out->avg_degree = stats.avg_degree;
    out->has_avg_path = stats.avg_shortest_path.has_value() ? 1 : 0;
    out->avg_shortest_path = stats.avg_shortest_path.value_or(0.0);
    out->sample_pairs = stats.sample_pairs;
  });
}

xidx_status xidx_pair_distance(const xidx_collab_net* net, const char* const* authors_p,
                               size_t n_p, const char* const* authors_q, size_t n_q,
                               double* out_distance) {
  if (auto s = require(net && authors_p && authors_q && out_distance,
                       "xidx_pair_distance: null argument")) {
    return s;
  }
  return guarded([&] {
    std::vector<std::string> p(authors_p, authors_p + n_p);
    std::vector<std::string> q(authors_q, authors_q + n_q);
    *out_distance = distance_to_double(xidx::paper_pair_distance(net->net, p, q));
  });
}

/* distances ---------------------------------------------------------------- */

xidx_status xidx_distances_compute(const xidx_corpus* corpus, int32_t from, int32_t to,
                                   int32_t window, int workers, int32_t depth_cap,
                                   xidx_distance_set** out) {
  if (auto s = require(corpus && out, "xidx_distances_compute: null argument")) return s;
  return guarded([&] {
    *out = new xidx_distance_set{
        xidx::compute_distances(corpus->index, from, to, window, workers, depth_cap)};
  });
}

void xidx_distances_free(xidx_distance_set* set) { delete set; }

uint64_t xidx_distances_record_count(const xidx_distance_set* set) {
  return set ? set->set.records.size() : 0;
}

xidx_status xidx_distances_record(const xidx_distance_set* set, const xidx_corpus* corpus,
                                  uint64_t index, const char** cited_id, const char** citing_id,
                                  int32_t* citing_year, double* distance, int* censored) {
  if (auto s = require(set && corpus, "xidx_distances_record: null argument")) return s;
  if (index >= set->set.records.size()) {
    return fail(XIDX_EINVAL, "xidx_distances_record: index out of range");
  }
  const auto& rec = set->set.records[index];
  if (cited_id) *cited_id = corpus->index.paper(rec.cited).paper_id.c_str();
  if (citing_id) *citing_id = corpus->index.paper(rec.citing).paper_id.c_str();
  if (citing_year) *citing_year = rec.citing_year;
  if (distance) *distance = distance_to_double(rec.distance);
  if (censored) *censored = rec.censored ? 1 : 0;
  return XIDX_OK;
}

xidx_status xidx_distances_context(const xidx_distance_set* set, int32_t year, double* d_bar,
                                   double* lambda, uint64_t* valid_pair_count) {
  if (auto s = require(set != nullptr, "xidx_distances_context: null argument")) return s;
  return guarded([&] {
    const auto& ctx = set->set.contexts.at(year);
    if (d_bar) *d_bar = ctx.d_bar;
    if (lambda) *lambda = ctx.lambda;
    if (valid_pair_count) *valid_pair_count = ctx.valid_pair_count;
  });
}

xidx_status xidx_distances_notes_json(const xidx_distance_set* set, char** out_json) {
  if (auto s = require(set && out_json, "xidx_distances_notes_json: null argument")) return s;
  return guarded([&] {
    nlohmann::json subs = nlohmann::json::object();
    for (const auto& [year, donor] : set->set.contexts.substitutions()) {
      subs[std::to_string(year)] = donor;
    }
    nlohmann::json j{{"substituted_years", subs}, {"capped_years", set->set.capped_years}};
    *out_json = ::strdup(j.dump().c_str());
    if (!*out_json) throw std::bad_alloc();
  });
}

xidx_status xidx_distances_write(const xidx_distance_set* set, const xidx_corpus* corpus,
                                 const char* distances_path, const char* contexts_path) {
  if (auto s = require(set && corpus && distances_path && contexts_path,
                       "xidx_distances_write: null argument")) {
    return s;
  }
  return guarded([&] {
    auto dist_out = open_out(distances_path);
    xidx::write_distance_table(set->set, corpus->index, dist_out);
    auto ctx_out = open_out(contexts_path);
    xidx::write_context_table(set->set, ctx_out);
  });
}

xidx_status xidx_distances_load(const xidx_corpus* corpus, const char* distances_path,
                                const char* contexts_path, xidx_distance_set** out) {
  if (auto s = require(corpus && distances_path && contexts_path && out,
                       "xidx_distances_load: null argument")) {
    return s;
  }
  return guarded([&] {
    auto dist_in = open_in(distances_path);
    auto ctx_in = open_in(contexts_path);
    *out = new xidx_distance_set{xidx::load_distance_set(corpus->index, dist_in, ctx_in)};
  });
}

/* metrics ------------------------------------------------------------------ */

xidx_status xidx_weight(double distance, double d_bar, double* out) {
  if (auto s = require(out != nullptr, "xidx_weight: null argument")) return s;
  if (std::isnan(distance) || distance < 0.0) {
    return fail(XIDX_EINVAL, "xidx_weight: distance must be >= 0 or INFINITY");
  }
  return guarded([&] { *out = xidx::weight(distance, d_bar); });
}

int64_t xidx_h_index(const int64_t* per_paper_citation_counts, size_t n) {
  if (n > 0 && !per_paper_citation_counts) return -1;
  return xidx::h_index({per_paper_citation_counts, n});
}

int64_t xidx_c_index(const double* distances, size_t n) {
  if (n > 0 && !distances) return -1;
  std::vector<xidx::Distance> d;
  d.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const double v = distances[i];
    if (std::isnan(v) || v < 0.0) return -1;
    if (std::isinf(v)) {
      d.push_back(xidx::Distance::infinite());
    } else {
      // Integer thresholds make floor(v) >= c equivalent to v >= c.
      d.push_back(xidx::Distance::finite(static_cast<uint32_t>(std::floor(v))));
    }
  }
  return xidx::c_index(d);
}

xidx_status xidx_metrics_compute(const xidx_corpus* corpus, const xidx_distance_set* distances,
                                 int32_t cutoff, int workers, xidx_metrics_table** out) {
  if (auto s = require(corpus && distances && out, "xidx_metrics_compute: null argument")) {
    return s;
  }
  return guarded([&] {
    *out = new xidx_metrics_table{
        xidx::MetricsTable::compute(corpus->index, distances->set, cutoff, workers)};
  });
}

void xidx_metrics_free(xidx_metrics_table* table) { delete table; }

uint64_t xidx_metrics_count(const xidx_metrics_table* table) {
  return table ? table->table.size() : 0;
}

xidx_status xidx_metrics_row(const xidx_metrics_table* table, uint64_t index,
                             const char** author_id, xidx_scholar_metrics* out) {
  if (auto s = require(table && out, "xidx_metrics_row: null argument")) return s;
  if (index >= table->table.size()) return fail(XIDX_EINVAL, "xidx_metrics_row: index out of range");
  const auto& m = table->table.row(index);
  if (author_id) *author_id = m.author_id.c_str();
  fill_metrics(m, out);
  return XIDX_OK;
}

xidx_status xidx_metrics_get(const xidx_metrics_table* table, const char* author_id,
                             xidx_scholar_metrics* out) {
  if (auto s = require(table && author_id && out, "xidx_metrics_get: null argument")) return s;
  const auto* m = table->table.find(author_id);
  if (!m) return fail(XIDX_ENOTFOUND, "xidx_metrics_get: unknown author");
  fill_metrics(*m, out);
  return XIDX_OK;
}

xidx_status xidx_metrics_write(const xidx_metrics_table* table, const char* path) {
  if (auto s = require(table && path, "xidx_metrics_write: null argument")) return s;
  return guarded([&] {
    auto out = open_out(path);
    table->table.write(out);
  });
}

xidx_status xidx_metrics_load(const char* path, xidx_metrics_table** out) {
  if (auto s = require(path && out, "xidx_metrics_load: null argument")) return s;
  return guarded([&] {
    auto in = open_in(path);
    *out = new xidx_metrics_table{xidx::MetricsTable::load(in)};
  });
}

/* analysis ----------------------------------------------------------------- */

xidx_status xidx_metrics_rank_delta(const xidx_metrics_table* table, const char* metric,
                                    const char* baseline, const char* const* cohort,
                                    size_t n_cohort, double* out_delta, double* out_rank_metric,
                                    double* out_rank_baseline) {
  if (auto s = require(table && metric && baseline && cohort && out_delta,
                       "xidx_metrics_rank_delta: null argument")) {
    return s;
  }
  return guarded([&] {
    auto rank_m = xidx::rank_scholars(table->table.values(metric), metric);
    auto rank_b = xidx::rank_scholars(table->table.values(baseline), baseline);
    std::vector<std::string> ids(cohort, cohort + n_cohort);
    auto deltas = xidx::ranking_delta(rank_m, rank_b, ids);
    for (size_t i = 0; i < n_cohort; ++i) {
      out_delta[i] = deltas.at(ids[i]);
      if (out_rank_metric) out_rank_metric[i] = rank_m.ranks.at(ids[i]);
      if (out_rank_baseline) out_rank_baseline[i] = rank_b.ranks.at(ids[i]);
    }
  });
}

xidx_status xidx_wilcoxon(const double* deltas, size_t n, xidx_alternative alt,
                          xidx_test_result* out) {
  if (auto s = require(deltas && out, "xidx_wilcoxon: null argument")) return s;
  return guarded([&] {
    fill_test_result(xidx::wilcoxon_signed_rank({deltas, n}, to_alt(alt)), out);
  });
}

xidx_status xidx_mann_whitney(const double* group1, size_t n1, const double* group2, size_t n2,
                              xidx_alternative alt, xidx_test_result* out) {
  if (auto s = require(group1 && group2 && out, "xidx_mann_whitney: null argument")) return s;
  return guarded([&] {
    fill_test_result(xidx::mann_whitney_u({group1, n1}, {group2, n2}, to_alt(alt)), out);
  });
}

xidx_status xidx_trajectory_features(const double* series10, double* out_features11) {
  if (auto s = require(series10 && out_features11, "xidx_trajectory_features: null argument")) {
    return s;
  }
  return guarded([&] {
    const auto vec = xidx::trajectory_features({series10, 10}).as_vector();
    std::copy(vec.begin(), vec.end(), out_features11);
  });
}

xidx_status xidx_trajectories_compute(const xidx_corpus* corpus,
                                      const xidx_distance_set* distances,
                                      uint64_t min_citations, xidx_trajectory_table** out) {
  if (auto s = require(corpus && distances && out, "xidx_trajectories_compute: null argument")) {
    return s;
  }
  return guarded([&] {
    *out = new xidx_trajectory_table{
        xidx::trajectory_table(corpus->index, distances->set, min_citations)};
  });
}

void xidx_trajectories_free(xidx_trajectory_table* table) { delete table; }

uint64_t xidx_trajectories_count(const xidx_trajectory_table* table) {
  return table ? table->rows.size() : 0;
}

xidx_status xidx_trajectories_row(const xidx_trajectory_table* table, uint64_t index,
                                  const char** author_id, double* out_features11) {
  if (auto s = require(table != nullptr, "xidx_trajectories_row: null argument")) return s;
  if (index >= table->rows.size()) {
    return fail(XIDX_EINVAL, "xidx_trajectories_row: index out of range");
  }
  const auto& row = table->rows[index];
  if (author_id) *author_id = row.author_id.c_str();
  if (out_features11) {
    const auto vec = row.features.as_vector();
    std::copy(vec.begin(), vec.end(), out_features11);
  }
  return XIDX_OK;
}

xidx_status xidx_trajectories_write(const xidx_trajectory_table* table, const char* path) {
  if (auto s = require(table && path, "xidx_trajectories_write: null argument")) return s;
  return guarded([&] {
    auto out = open_out(path);
    xidx::write_trajectory_table(table->rows, out);
  });
}

/* clustering ----------------------------------------------------------------*/

xidx_status xidx_standardize(double* data, size_t n, size_t dim) {
  if (auto s = require(data || n * dim == 0, "xidx_standardize: null argument")) return s;
  return guarded([&] { xidx::standardize({data, n * dim}, n, dim); });
}

xidx_status xidx_kmeans(const double* data, size_t n, size_t dim, uint32_t k, uint64_t seed,
                        uint32_t restarts, int32_t* out_labels, double* out_inertia) {
  if (auto s = require(data && out_labels, "xidx_kmeans: null argument")) return s;
  return guarded([&] {
    auto result = xidx::kmeans_cluster({data, n * dim}, n, dim, k, seed, restarts);
    std::copy(result.labels.begin(), result.labels.end(), out_labels);
    if (out_inertia) *out_inertia = result.inertia;
  });
}

xidx_status xidx_silhouette(const double* data, size_t n, size_t dim, const int32_t* labels,
                            double* out_score) {
  if (auto s = require(data && labels && out_score, "xidx_silhouette: null argument")) return s;
  return guarded([&] {
    *out_score = xidx::silhouette_score({data, n * dim}, n, dim, {labels, n});
  });
}

xidx_status xidx_enrichment(const int32_t* labels, const uint8_t* flags, size_t n,
                            double out[3]) {
  if (auto s = require(labels && flags && out, "xidx_enrichment: null argument")) return s;
  return guarded([&] {
    auto e = xidx::enrichment_ratio({labels, n}, {flags, n});
    out[0] = e.ratio1;
    out[1] = e.ratio0;
    out[2] = e.enrichment;
  });
}

/* synthesis ------------------------------------------------------------------*/

void xidx_synth_config_default(xidx_synth_config* out) {
  if (!out) return;
  const xidx::SynthConfig def;
  out->seed = def.seed;
  out->year_from = def.year_from;
  out->year_to = def.year_to;
  out->n_background_authors = def.n_background_authors;
  out->community_count = def.community_count;
  out->inter_community_edge_prob = def.inter_community_edge_prob;
  out->hp_count = def.hp_profile.count;
  out->hp_papers_per_year = def.hp_profile.papers_per_year;
  out->hp_citation_radius = def.hp_profile.citation_radius;
  out->ta_count = def.ta_profile.count;
  out->ta_papers_per_year = def.ta_profile.papers_per_year;
  out->ta_citation_radius = def.ta_profile.citation_radius;
  out->background_papers_per_community_year = def.background_papers_per_community_year;
  out->background_refs_per_paper = def.background_refs_per_paper;
  out->archetype_refs_per_paper = def.archetype_refs_per_paper;
}

xidx_status xidx_synth_corpus(const xidx_synth_config* config, const char* corpus_path,
                              const char* hp_cohort_path, const char* ta_cohort_path) {
  if (auto s = require(config && corpus_path, "xidx_synth_corpus: null argument")) return s;
  return guarded([&] {
    xidx::SynthConfig cfg;
    cfg.seed = config->seed;
    cfg.year_from = config->year_from;
    cfg.year_to = config->year_to;
    cfg.n_background_authors = config->n_background_authors;
    cfg.community_count = config->community_count;
    cfg.inter_community_edge_prob = config->inter_community_edge_prob;
    cfg.hp_profile = {config->hp_count, config->hp_papers_per_year, config->hp_citation_radius};
    cfg.ta_profile = {config->ta_count, config->ta_papers_per_year, config->ta_citation_radius};
    cfg.background_papers_per_community_year = config->background_papers_per_community_year;
    cfg.background_refs_per_paper = config->background_refs_per_paper;
    cfg.archetype_refs_per_paper = config->archetype_refs_per_paper;

    auto corpus = xidx::generate_corpus(cfg);
    auto out = open_out(corpus_path);
    for (const auto& rec : corpus.records) out << xidx::serialize_record(rec) << '\n';
    if (!out) throw xidx::IoError("xidx_synth_corpus: write failed");
    if (hp_cohort_path) {
      auto hp = open_out(hp_cohort_path);
      for (const auto& id : corpus.hp_authors) hp << id << '\n';
    }
    if (ta_cohort_path) {
      auto ta = open_out(ta_cohort_path);
      for (const auto& id : corpus.ta_authors) ta << id << '\n';
    }
  });
}

xidx_status xidx_synth_trajectories(size_t n, double breakout_fraction, uint64_t seed,
                                    double* out_series, uint8_t* out_flags) {
  if (auto s = require(out_series && out_flags, "xidx_synth_trajectories: null argument")) {
    return s;
  }
  return guarded([&] {
    auto traj = xidx::generate_trajectories(n, breakout_fraction, seed);
    for (size_t i = 0; i < n; ++i) {
      std::copy(traj.series[i].begin(), traj.series[i].end(), out_series + i * 10);
      out_flags[i] = traj.breakout[i];
    }
  });
}

} /* extern "C" */
