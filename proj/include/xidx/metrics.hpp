#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xidx/corpus.hpp"
#include "xidx/distance.hpp"
#include "xidx/types.hpp"

namespace xidx {

// w(d) = 1 - e^(-d / d_bar). Exactly 0 at d = 0 and exactly 1 at d = inf.
// Throws InvalidArgument unless d_bar > 0.
double weight(Distance d, double d_bar);
// Real-valued overload (accepts +infinity).
double weight(double d, double d_bar);

// Largest h such that at least h of the given per-paper citation counts
// are >= h.
int64_t h_index(std::span<const int64_t> per_paper_citation_counts);

// Largest c such that at least c citations have distance >= c; infinite
// distances satisfy every threshold.
int64_t c_index(std::span<const Distance> distances);

// Sum of weight(d_i, d_bar of the citing year), taken in canonical record
// order (citing_year, cited, citing) for floating-point determinism.
// Throws NotFound when a record's citing year has no context.
double x_index(std::span<const CitationDistanceRecord> records, const ContextTable& contexts);

struct ScholarMetrics {
  std::string author_id;
  int32_t as_of_year = 0;
  uint64_t np = 0;     // papers authored with year <= cutoff
  uint64_t tc = 0;     // citations received with citing year <= cutoff
  uint64_t h = 0;
  uint64_t c = 0;
  double x = 0.0;
  uint64_t n_inf = 0;  // citations with infinite distance
};

// Metrics for one scholar as of the cutoff year. A citation to any paper
// authored by the scholar counts once per (cited, citing) pair; self-citing
// papers are included (they contribute distance 0). Throws NotFound for an
// unknown author.
ScholarMetrics metrics_as_of(const CorpusIndex& corpus, const DistanceSet& distances,
                             const std::string& author_id, int32_t cutoff);

// Metrics for every scholar with at least one paper by the cutoff year,
// sorted by author id.
class MetricsTable {
 public:
  static MetricsTable compute(const CorpusIndex& corpus, const DistanceSet& distances,
                              int32_t cutoff, int workers = 1);

  size_t size() const { return rows_.size(); }
  const ScholarMetrics& row(size_t i) const { return rows_[i]; }
  const ScholarMetrics* find(const std::string& author_id) const;

  // author_id -> metric value, for ranking. Valid names:
  // np, tc, h, c, x, n_inf.
  std::map<std::string, double> values(const std::string& metric) const;

  void write(std::ostream& out) const;  // x printed with 6 decimals
  static MetricsTable load(std::istream& in);

 private:
  std::vector<ScholarMetrics> rows_;  // sorted by author_id
};

}  // namespace xidx
