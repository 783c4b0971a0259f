#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xidx/collabnet.hpp"
#include "xidx/corpus.hpp"
#include "xidx/types.hpp"

namespace xidx {

// One citation edge annotated with its collaborative distance in the
// citing-year network. `censored` marks records produced under a BFS depth
// cap: the stored value is then a lower bound ("the distance is >= value").
struct CitationDistanceRecord {
  PaperIdx cited;
  PaperIdx citing;
  int32_t citing_year;
  Distance distance;
  bool censored = false;
};

// Per-year normalization context: d_bar is the mean citation distance over
// valid pairs (both papers have an author inside the LCC), lambda = 1/d_bar.
struct YearContext {
  int32_t year = 0;
  double d_bar = 0.0;
  double lambda = 0.0;
  uint64_t valid_pair_count = 0;
};

// Shortest collaborative distance between two author sets: 0 when they share
// an author id (identity dominates topology), otherwise the minimum BFS
// distance between any present pair, infinite when disconnected or absent.
Distance paper_pair_distance(const CollabNetwork& net, std::span<const std::string> authors_p,
                             std::span<const std::string> authors_q);

// Distance records for every citation with citing year t, one multi-source
// BFS per cited paper. Output is sorted by (cited, citing) id. depth_cap < 0
// disables capping.
std::vector<CitationDistanceRecord> distances_for_year(const CorpusIndex& corpus,
                                                       const CollabNetwork& net, int32_t t,
                                                       int workers = 1, int32_t depth_cap = -1);

// Mean distance over records whose cited AND citing paper each have at least
// one author in `lcc`. All contributing distances are finite by construction.
// Throws Degenerate when no pair qualifies.
YearContext average_citation_distance(std::span<const CitationDistanceRecord> records,
                                      std::span<const NodeIdx> lcc, const CorpusIndex& corpus,
                                      const CollabNetwork& net);

// Year -> context map with nearest-earlier-year fallback for years whose own
// d_bar is undefined (no valid pairs, or a depth cap excluded the year).
class ContextTable {
 public:
  void insert(const YearContext& ctx) { by_year_[ctx.year] = ctx; }
  void insert_substituted(int32_t year, const YearContext& donor, uint64_t valid_pairs = 0);

  const YearContext* find(int32_t year) const;
  // Throws NotFound naming the year.
  const YearContext& at(int32_t year) const;

  const std::map<int32_t, YearContext>& all() const { return by_year_; }
  const std::map<int32_t, int32_t>& substitutions() const { return substituted_from_; }

 private:
  std::map<int32_t, YearContext> by_year_;
  std::map<int32_t, int32_t> substituted_from_;
};

// Full distance stage output across a year range.
struct DistanceSet {
  std::vector<CitationDistanceRecord> records;  // sorted by (year, cited, citing)
  ContextTable contexts;
  std::vector<int32_t> capped_years;  // years excluded from d_bar by the depth cap
  int32_t depth_cap = -1;
};

// Runs the per-year pipeline (window graph -> BFS distances -> d_bar) for
// every year in [from, to] that has citations. Deterministic for any worker
// count.
DistanceSet compute_distances(const CorpusIndex& corpus, int32_t from, int32_t to,
                              int32_t window = 5, int workers = 1, int32_t depth_cap = -1);

// Delimited-text round trip. Distances serialize as a decimal hop count,
// "inf", or ">=N" for censored records.
void write_distance_table(const DistanceSet& set, const CorpusIndex& corpus, std::ostream& out);
void write_context_table(const DistanceSet& set, std::ostream& out);
DistanceSet load_distance_set(const CorpusIndex& corpus, std::istream& distances,
                              std::istream& contexts);

std::string format_distance(Distance d, bool censored = false);

}  // namespace xidx
