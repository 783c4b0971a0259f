#include "xidx/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

#include "xidx/error.hpp"
#include "xidx/metrics.hpp"

namespace xidx {

std::vector<TrajectoryRow> trajectory_table(const CorpusIndex& corpus,
                                            const DistanceSet& distances,
                                            uint64_t min_citations) {
  std::vector<TrajectoryRow> rows;
  if (distances.records.empty()) return rows;
  const int32_t horizon =
      std::min(corpus.max_year(), distances.records.back().citing_year);

  // Per-author record lists in canonical order, as in the metrics module.
  std::vector<std::vector<uint32_t>> buckets(corpus.author_count());
  for (uint32_t i = 0; i < distances.records.size(); ++i) {
    for (AuthorIdx a : corpus.paper_authors(distances.records[i].cited)) {
      buckets[a].push_back(i);
    }
  }

  for (AuthorIdx a = 0; a < corpus.author_count(); ++a) {
    int32_t first_pub = kMaxYear + 1;
    for (PaperIdx p : corpus.author_papers(a)) {
      first_pub = std::min(first_pub, corpus.paper(p).year);
    }
    const int32_t year10 = first_pub + 9;
    if (year10 > horizon) continue;  // first decade not fully observable

    TrajectoryRow row;
    row.author_id = corpus.author_id(a);
    row.first_pub_year = first_pub;

    // Weight each record once; the per-year sums below then run in canonical
    // record order, matching metrics_as_of bit for bit.
    const auto& idx = buckets[a];
    std::vector<double> weights(idx.size());
    std::vector<int32_t> effective_year(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
      const auto& rec = distances.records[idx[i]];
      effective_year[i] = std::max(rec.citing_year, corpus.paper(rec.cited).year);
      weights[i] = effective_year[i] <= year10
                       ? weight(rec.distance, distances.contexts.at(rec.citing_year).d_bar)
                       : 0.0;
    }

    for (size_t i = 0; i < idx.size(); ++i) {
      if (effective_year[i] <= year10) ++row.citations_by_year10;
    }
    if (row.citations_by_year10 < min_citations) continue;

    for (int k = 0; k < 10; ++k) {
      const int32_t cutoff = first_pub + k;
      double x = 0.0;
      for (size_t i = 0; i < idx.size(); ++i) {
        if (effective_year[i] <= cutoff) x += weights[i];
      }
      row.series[k] = x;
    }
    row.features = trajectory_features(row.series);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string feature_header() {
  std::string h = "author_id";
  for (const char* name : TrajectoryFeatures::feature_names()) {
    h += '\t';
    h += name;
  }
  return h;
}

}  // namespace

void write_trajectory_table(const std::vector<TrajectoryRow>& rows, std::ostream& out) {
  out << feature_header() << '\n';
  char buf[64];
  for (const auto& row : rows) {
    out << row.author_id;
    const auto vec = row.features.as_vector();
    for (size_t i = 0; i < 9; ++i) {
      std::snprintf(buf, sizeof(buf), "%.6f", vec[i]);
      out << '\t' << buf;
    }
    out << '\t' << row.features.first_nonzero_year << '\t' << row.features.max_increment_year
        << '\n';
  }
  if (!out) throw IoError("write_trajectory_table: write failed");
}

void write_feature_table(const FeatureTable& table, std::ostream& out) {
  if (table.dim != 11) throw InvalidArgument("write_feature_table: expected 11 features");
  out << feature_header() << '\n';
  char buf[64];
  for (size_t r = 0; r < table.ids.size(); ++r) {
    out << table.ids[r];
    for (size_t d = 0; d < table.dim; ++d) {
      std::snprintf(buf, sizeof(buf), "%.6f", table.data[r * table.dim + d]);
      out << '\t' << buf;
    }
    out << '\n';
  }
  if (!out) throw IoError("write_feature_table: write failed");
}

FeatureTable load_feature_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != feature_header()) {
    throw IoError("feature table: missing or unexpected header");
  }
  FeatureTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t pos = line.find('\t');
    if (pos == std::string::npos) throw IoError("feature table: bad row: " + line);
    table.ids.push_back(line.substr(0, pos));
    size_t count = 0;
    const char* p = line.c_str() + pos;
    while (*p == '\t') {
      char* end = nullptr;
      table.data.push_back(std::strtod(p + 1, &end));
      if (end == p + 1) throw IoError("feature table: bad number in row: " + line);
      p = end;
      ++count;
    }
    if (count != table.dim) throw IoError("feature table: expected 11 features: " + line);
  }
  return table;
}

}  // namespace xidx
