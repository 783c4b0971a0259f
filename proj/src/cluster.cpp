#include "xidx/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "xidx/error.hpp"
#include "xidx/rng.hpp"

namespace xidx {

void standardize(std::span<double> data, size_t n, size_t dim) {
  if (data.size() != n * dim) throw InvalidArgument("standardize: data size mismatch");
  if (n == 0) return;
  for (size_t d = 0; d < dim; ++d) {
    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) mean += data[i * dim + d];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double dv = data[i * dim + d] - mean;
      var += dv * dv;
    }
    var /= static_cast<double>(n);
    if (var == 0.0) {
      for (size_t i = 0; i < n; ++i) data[i * dim + d] = 0.0;
    } else {
      const double inv_sd = 1.0 / std::sqrt(var);
      for (size_t i = 0; i < n; ++i) data[i * dim + d] = (data[i * dim + d] - mean) * inv_sd;
    }
  }
}

namespace {

double sq_dist(const double* a, const double* b, size_t dim) {
  double s = 0.0;
  for (size_t d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

struct LloydRun {
  std::vector<int32_t> labels;
  std::vector<double> centers;
  double inertia = 0.0;
};

LloydRun run_lloyd(std::span<const double> data, size_t n, size_t dim, uint32_t k,
                   uint64_t seed) {
  Rng rng(seed);
  std::vector<double> centers(static_cast<size_t>(k) * dim);

  // k-means++ seeding.
  {
    std::vector<double> d2(n, std::numeric_limits<double>::max());
    size_t first = rng.uniform(n);
    std::copy_n(&data[first * dim], dim, centers.begin());
    for (uint32_t c = 1; c < k; ++c) {
      double total = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double d = sq_dist(&data[i * dim], &centers[(c - 1) * dim], dim);
        d2[i] = std::min(d2[i], d);
        total += d2[i];
      }
      size_t pick;
      if (total > 0.0) {
        const double r = rng.uniform_real() * total;
        double acc = 0.0;
        pick = n - 1;
        for (size_t i = 0; i < n; ++i) {
          acc += d2[i];
          if (acc > r) {
            pick = i;
            break;
          }
        }
      } else {
        pick = rng.uniform(n);  // all points coincide with chosen centers
      }
      std::copy_n(&data[pick * dim], dim, centers.begin() + static_cast<size_t>(c) * dim);
    }
  }

  std::vector<int32_t> labels(n, 0);
  std::vector<double> sums(static_cast<size_t>(k) * dim);
  std::vector<uint64_t> sizes(k);

  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::max();
      int32_t best_c = 0;
      for (uint32_t c = 0; c < k; ++c) {
        const double d = sq_dist(&data[i * dim], &centers[static_cast<size_t>(c) * dim], dim);
        if (d < best) {
          best = d;
          best_c = static_cast<int32_t>(c);
        }
      }
      if (labels[i] != best_c) {
        labels[i] = best_c;
        changed = true;
      }
    }

    std::fill(sizes.begin(), sizes.end(), 0);
    for (size_t i = 0; i < n; ++i) ++sizes[labels[i]];
    // Empty clusters are reseeded with the point farthest from its center
    // (smallest index on ties).
    for (uint32_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      double worst = -1.0;
      size_t worst_i = 0;
      for (size_t i = 0; i < n; ++i) {
        if (sizes[labels[i]] <= 1) continue;  // do not empty another cluster
        const double d =
            sq_dist(&data[i * dim], &centers[static_cast<size_t>(labels[i]) * dim], dim);
        if (d > worst) {
          worst = d;
          worst_i = i;
        }
      }
      --sizes[labels[worst_i]];
      labels[worst_i] = static_cast<int32_t>(c);
      ++sizes[c];
      changed = true;
    }

    std::fill(sums.begin(), sums.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
      double* s = &sums[static_cast<size_t>(labels[i]) * dim];
      const double* p = &data[i * dim];
      for (size_t d = 0; d < dim; ++d) s[d] += p[d];
    }
    for (uint32_t c = 0; c < k; ++c) {
      double* ctr = &centers[static_cast<size_t>(c) * dim];
      const double* s = &sums[static_cast<size_t>(c) * dim];
      for (size_t d = 0; d < dim; ++d) ctr[d] = s[d] / static_cast<double>(sizes[c]);
    }
    if (!changed && iter > 0) break;
  }

  LloydRun run;
  run.labels = std::move(labels);
  run.centers = std::move(centers);
  run.inertia = 0.0;
  for (size_t i = 0; i < n; ++i) {
    run.inertia +=
        sq_dist(&data[i * dim], &run.centers[static_cast<size_t>(run.labels[i]) * dim], dim);
  }
  return run;
}

}  // namespace

KMeansResult kmeans_cluster(std::span<const double> data, size_t n, size_t dim, uint32_t k,
                            uint64_t seed, uint32_t restarts) {
  if (data.size() != n * dim) throw InvalidArgument("kmeans_cluster: data size mismatch");
  if (k < 2) throw InvalidArgument("kmeans_cluster: k must be >= 2");
  if (n < k) throw InvalidArgument("kmeans_cluster: fewer points than clusters");
  if (restarts == 0) throw InvalidArgument("kmeans_cluster: restarts must be >= 1");

  LloydRun best;
  bool have_best = false;
  for (uint32_t r = 0; r < restarts; ++r) {
    LloydRun run = run_lloyd(data, n, dim, k, substream_seed(seed, "kmeans.restart", r));
    if (!have_best || run.inertia < best.inertia) {
      best = std::move(run);
      have_best = true;
    }
  }

  // Relabel by cluster size, largest first; ties go to the cluster whose
  // earliest member comes first.
  std::vector<uint64_t> sizes(k, 0);
  std::vector<size_t> first_member(k, n);
  for (size_t i = 0; i < n; ++i) {
    const auto c = static_cast<uint32_t>(best.labels[i]);
    ++sizes[c];
    first_member[c] = std::min(first_member[c], i);
  }
  std::vector<uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return first_member[a] < first_member[b];
  });
  std::vector<int32_t> new_label(k);
  for (uint32_t pos = 0; pos < k; ++pos) new_label[order[pos]] = static_cast<int32_t>(pos);

  KMeansResult result;
  result.k = k;
  result.inertia = best.inertia;
  result.labels.resize(n);
  for (size_t i = 0; i < n; ++i) result.labels[i] = new_label[best.labels[i]];
  result.centers.resize(static_cast<size_t>(k) * dim);
  for (uint32_t c = 0; c < k; ++c) {
    std::copy_n(best.centers.begin() + static_cast<size_t>(c) * dim, dim,
                result.centers.begin() + static_cast<size_t>(new_label[c]) * dim);
  }
  return result;
}

double silhouette_score(std::span<const double> data, size_t n, size_t dim,
                        std::span<const int32_t> labels) {
  if (data.size() != n * dim || labels.size() != n) {
    throw InvalidArgument("silhouette_score: size mismatch");
  }
  int32_t max_label = -1;
  for (int32_t l : labels) {
    if (l < 0) throw InvalidArgument("silhouette_score: negative label");
    max_label = std::max(max_label, l);
  }
  const size_t k = static_cast<size_t>(max_label) + 1;
  std::vector<uint64_t> sizes(k, 0);
  for (int32_t l : labels) ++sizes[l];
  size_t nonempty = 0;
  for (uint64_t s : sizes) nonempty += (s > 0);
  if (nonempty < 2) throw InvalidArgument("silhouette_score: needs at least two clusters");

  double total = 0.0;
  std::vector<double> cluster_dist(k);
  for (size_t i = 0; i < n; ++i) {
    if (sizes[labels[i]] == 1) continue;  // singleton contributes 0
    std::fill(cluster_dist.begin(), cluster_dist.end(), 0.0);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cluster_dist[labels[j]] += std::sqrt(sq_dist(&data[i * dim], &data[j * dim], dim));
    }
    const auto own = static_cast<size_t>(labels[i]);
    const double a = cluster_dist[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::max();
    for (size_t c = 0; c < k; ++c) {
      if (c == own || sizes[c] == 0) continue;
      b = std::min(b, cluster_dist[c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

Enrichment enrichment_ratio(std::span<const int32_t> labels, std::span<const uint8_t> flags) {
  if (labels.size() != flags.size()) throw InvalidArgument("enrichment_ratio: size mismatch");
  Enrichment e;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) {
      ++e.cluster0_size;
      e.flagged0 += flags[i] ? 1 : 0;
    } else if (labels[i] == 1) {
      ++e.cluster1_size;
      e.flagged1 += flags[i] ? 1 : 0;
    } else {
      throw InvalidArgument("enrichment_ratio: labels must be 0 or 1");
    }
  }
  if (e.cluster0_size == 0 || e.cluster1_size == 0) {
    throw InvalidArgument("enrichment_ratio: both clusters must be nonempty");
  }
  e.ratio1 = static_cast<double>(e.flagged1) / static_cast<double>(e.cluster1_size);
  e.ratio0 = static_cast<double>(e.flagged0) / static_cast<double>(e.cluster0_size);
  if (e.ratio1 == 0.0) {
    e.enrichment = 0.0;
  } else if (e.ratio0 == 0.0) {
    e.enrichment = std::numeric_limits<double>::infinity();
  } else {
    e.enrichment = e.ratio1 / e.ratio0;
  }
  return e;
}

}  // namespace xidx
