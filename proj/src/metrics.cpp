#include "xidx/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include "xidx/error.hpp"
#include "xidx/parallel.hpp"

namespace xidx {

double weight(double d, double d_bar) {
  if (!(d_bar > 0.0)) throw InvalidArgument("weight: d_bar must be positive");
  if (!(d >= 0.0)) throw InvalidArgument("weight: distance must be >= 0");
  if (std::isinf(d)) return 1.0;
  if (d == 0.0) return 0.0;
  return 1.0 - std::exp(-d / d_bar);
}

double weight(Distance d, double d_bar) {
  if (d.is_infinite()) return weight(std::numeric_limits<double>::infinity(), d_bar);
  return weight(static_cast<double>(d.value()), d_bar);
}

int64_t h_index(std::span<const int64_t> per_paper_citation_counts) {
  std::vector<int64_t> counts(per_paper_citation_counts.begin(),
                              per_paper_citation_counts.end());
  std::sort(counts.begin(), counts.end(), std::greater<>());
  int64_t h = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] >= static_cast<int64_t>(i) + 1) h = static_cast<int64_t>(i) + 1;
  }
  return h;
}

int64_t c_index(std::span<const Distance> distances) {
  std::vector<Distance> sorted(distances.begin(), distances.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  int64_t c = 0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const int64_t threshold = static_cast<int64_t>(i) + 1;
    if (sorted[i].is_infinite() || static_cast<int64_t>(sorted[i].value()) >= threshold) {
      c = threshold;
    }
  }
  return c;
}

double x_index(std::span<const CitationDistanceRecord> records, const ContextTable& contexts) {
  std::vector<uint32_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    const auto& ra = records[a];
    const auto& rb = records[b];
    return std::tie(ra.citing_year, ra.cited, ra.citing) <
           std::tie(rb.citing_year, rb.cited, rb.citing);
  });
  double x = 0.0;
  for (uint32_t i : order) {
    const auto& rec = records[i];
    x += weight(rec.distance, contexts.at(rec.citing_year).d_bar);
  }
  return x;
}

namespace {

// Shared core for single-author and whole-table computation: one pass over
// the (already canonically sorted) records, bucketing record indices per
// author of the cited paper.
struct AuthorBuckets {
  std::vector<std::vector<uint32_t>> record_idx;  // per corpus author
};

AuthorBuckets bucket_records(const CorpusIndex& corpus, const DistanceSet& distances,
                             int32_t cutoff) {
  AuthorBuckets buckets;
  buckets.record_idx.resize(corpus.author_count());
  const auto& records = distances.records;
  for (uint32_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.citing_year > cutoff) break;  // records sorted by citing_year
    if (corpus.paper(rec.cited).year > cutoff) continue;
    for (AuthorIdx a : corpus.paper_authors(rec.cited)) {
      buckets.record_idx[a].push_back(i);
    }
  }
  return buckets;
}

ScholarMetrics metrics_for_author(const CorpusIndex& corpus, const DistanceSet& distances,
                                  AuthorIdx author, std::span<const uint32_t> rec_idx,
                                  int32_t cutoff) {
  ScholarMetrics m;
  m.author_id = corpus.author_id(author);
  m.as_of_year = cutoff;

  for (PaperIdx p : corpus.author_papers(author)) {
    if (corpus.paper(p).year <= cutoff) ++m.np;
  }

  std::vector<Distance> dists;
  std::vector<PaperIdx> cited_papers;
  dists.reserve(rec_idx.size());
  cited_papers.reserve(rec_idx.size());
  double x = 0.0;
  for (uint32_t i : rec_idx) {
    const auto& rec = distances.records[i];
    ++m.tc;
    if (rec.distance.is_infinite()) ++m.n_inf;
    dists.push_back(rec.distance);
    cited_papers.push_back(rec.cited);
    // Bucketing preserved canonical record order, so this sum is stable.
    x += weight(rec.distance, distances.contexts.at(rec.citing_year).d_bar);
  }
  m.x = x;
  m.c = static_cast<uint64_t>(c_index(dists));

  std::sort(cited_papers.begin(), cited_papers.end());
  std::vector<int64_t> counts;
  for (size_t i = 0; i < cited_papers.size();) {
    size_t j = i;
    while (j < cited_papers.size() && cited_papers[j] == cited_papers[i]) ++j;
    counts.push_back(static_cast<int64_t>(j - i));
    i = j;
  }
  m.h = static_cast<uint64_t>(h_index(counts));
  return m;
}

constexpr const char* kMetricsHeader = "author_id\tas_of_year\tnp\ttc\th\tc\tx\tn_inf";

}  // namespace

ScholarMetrics metrics_as_of(const CorpusIndex& corpus, const DistanceSet& distances,
                             const std::string& author_id, int32_t cutoff) {
  auto author = corpus.find_author(author_id);
  if (!author) throw NotFound("unknown author: " + author_id);
  auto buckets = bucket_records(corpus, distances, cutoff);
  return metrics_for_author(corpus, distances, *author, buckets.record_idx[*author], cutoff);
}

MetricsTable MetricsTable::compute(const CorpusIndex& corpus, const DistanceSet& distances,
                                   int32_t cutoff, int workers) {
  auto buckets = bucket_records(corpus, distances, cutoff);

  std::vector<AuthorIdx> active;
  for (AuthorIdx a = 0; a < corpus.author_count(); ++a) {
    bool has_paper = false;
    for (PaperIdx p : corpus.author_papers(a)) {
      if (corpus.paper(p).year <= cutoff) {
        has_paper = true;
        break;
      }
    }
    if (has_paper) active.push_back(a);
  }

  MetricsTable table;
  table.rows_.resize(active.size());
  parallel_chunks(active.size(), workers, [&](int, size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      AuthorIdx a = active[i];
      table.rows_[i] =
          metrics_for_author(corpus, distances, a, buckets.record_idx[a], cutoff);
    }
  });
  return table;
}

const ScholarMetrics* MetricsTable::find(const std::string& author_id) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), author_id,
                             [](const ScholarMetrics& m, const std::string& id) {
                               return m.author_id < id;
                             });
  if (it == rows_.end() || it->author_id != author_id) return nullptr;
  return &*it;
}

std::map<std::string, double> MetricsTable::values(const std::string& metric) const {
  std::map<std::string, double> out;
  for (const auto& m : rows_) {
    double v = 0.0;
    if (metric == "np") {
      v = static_cast<double>(m.np);
    } else if (metric == "tc") {
      v = static_cast<double>(m.tc);
    } else if (metric == "h") {
      v = static_cast<double>(m.h);
    } else if (metric == "c") {
      v = static_cast<double>(m.c);
    } else if (metric == "x") {
      v = m.x;
    } else if (metric == "n_inf") {
      v = static_cast<double>(m.n_inf);
    } else {
      throw InvalidArgument("unknown metric: " + metric);
    }
    out.emplace(m.author_id, v);
  }
  return out;
}

void MetricsTable::write(std::ostream& out) const {
  out << kMetricsHeader << '\n';
  char buf[64];
  for (const auto& m : rows_) {
    std::snprintf(buf, sizeof(buf), "%.6f", m.x);
    out << m.author_id << '\t' << m.as_of_year << '\t' << m.np << '\t' << m.tc << '\t' << m.h
        << '\t' << m.c << '\t' << buf << '\t' << m.n_inf << '\n';
  }
  if (!out) throw IoError("MetricsTable::write: write failed");
}

MetricsTable MetricsTable::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw IoError("metrics table: missing or unexpected header");
  }
  MetricsTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ScholarMetrics m;
    char id[256];
    double x = 0.0;
    long long as_of = 0, np = 0, tc = 0, h = 0, c = 0, n_inf = 0;
    if (std::sscanf(line.c_str(), "%255[^\t]\t%lld\t%lld\t%lld\t%lld\t%lld\t%lf\t%lld", id,
                    &as_of, &np, &tc, &h, &c, &x, &n_inf) != 8) {
      throw IoError("metrics table: bad row: " + line);
    }
    m.author_id = id;
    m.as_of_year = static_cast<int32_t>(as_of);
    m.np = np;
    m.tc = tc;
    m.h = h;
    m.c = c;
    m.x = x;
    m.n_inf = n_inf;
    table.rows_.push_back(std::move(m));
  }
  std::sort(table.rows_.begin(), table.rows_.end(),
            [](const ScholarMetrics& a, const ScholarMetrics& b) {
              return a.author_id < b.author_id;
            });
  return table;
}

}  // namespace xidx
