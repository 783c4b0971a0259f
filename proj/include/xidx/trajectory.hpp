#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xidx/analysis.hpp"
#include "xidx/corpus.hpp"
#include "xidx/distance.hpp"

namespace xidx {

// Early-career trajectory of one scholar: cumulative x-index at the end of
// each of the first ten career years (career year k = first publication
// year + k - 1).
struct TrajectoryRow {
  std::string author_id;
  int32_t first_pub_year = 0;
  uint64_t citations_by_year10 = 0;
  std::array<double, 10> series{};
  TrajectoryFeatures features;
};

// Rows for every scholar whose first ten career years are fully covered by
// the distance set and who received at least `min_citations` citations by
// the end of career year ten. Sorted by author id.
std::vector<TrajectoryRow> trajectory_table(const CorpusIndex& corpus,
                                            const DistanceSet& distances,
                                            uint64_t min_citations = 10);

// Feature matrix as delimited text: author_id plus the 11 features.
void write_trajectory_table(const std::vector<TrajectoryRow>& rows, std::ostream& out);

struct FeatureTable {
  std::vector<std::string> ids;
  std::vector<double> data;  // row-major, ids.size() x dim
  size_t dim = 11;
};

FeatureTable load_feature_table(std::istream& in);
void write_feature_table(const FeatureTable& table, std::ostream& out);

}  // namespace xidx
