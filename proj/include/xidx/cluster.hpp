#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace xidx {

// In-place per-dimension z-score over row-major data, using the population
// standard deviation; zero-variance dimensions become all zeros.
void standardize(std::span<double> data, size_t n, size_t dim);

struct KMeansResult {
  std::vector<int32_t> labels;
  std::vector<double> centers;  // k x dim, row-major, in relabeled order
  double inertia = 0.0;
  uint32_t k = 0;
};

// Lloyd's algorithm with k-means++ seeding and `restarts` independent starts;
// the best run is kept by (inertia, restart index). Labels are renumbered by
// cluster size, largest first, so with k = 2 label 1 is the smaller cluster.
// Deterministic for a fixed seed. Throws when n < k or k < 2.
KMeansResult kmeans_cluster(std::span<const double> data, size_t n, size_t dim, uint32_t k,
                            uint64_t seed, uint32_t restarts = 10);

// Mean silhouette over all points with Euclidean distance; each point of a
// singleton cluster contributes 0. Requires at least two nonempty clusters.
double silhouette_score(std::span<const double> data, size_t n, size_t dim,
                        std::span<const int32_t> labels);

struct Enrichment {
  uint64_t cluster1_size = 0;
  uint64_t cluster0_size = 0;
  uint64_t flagged1 = 0;
  uint64_t flagged0 = 0;
  double ratio1 = 0.0;
  double ratio0 = 0.0;
  double enrichment = 0.0;  // ratio1 / ratio0; +inf when ratio0 = 0 and flagged1 > 0
};

// Two-cluster enrichment of a flagged subpopulation (labels must be 0/1 and
// both clusters nonempty).
Enrichment enrichment_ratio(std::span<const int32_t> labels, std::span<const uint8_t> flags);

}  // namespace xidx
