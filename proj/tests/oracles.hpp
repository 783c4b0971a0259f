// Brute-force reference implementations used only by tests. Each oracle is
// written from the definition, independent of the engine code paths it
// checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace oracle {

inline constexpr int64_t kInf = std::numeric_limits<int64_t>::max();

// All-pairs shortest paths over an undirected unit-weight graph.
inline std::vector<std::vector<int64_t>> floyd_warshall(
    size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int64_t>> d(n, std::vector<int64_t>(n, kInf));
  for (size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) {
    if (a == b) continue;
    d[a][b] = 1;
    d[b][a] = 1;
  }
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (size_t j = 0; j < n; ++j) {
        if (d[k][j] == kInf) continue;
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

// min over author pairs of D(a, b); authors with index >= n are absent from
// the graph. Shared ids dominate: any common id gives 0.
inline int64_t setmin_distance(const std::vector<std::vector<int64_t>>& d, size_t n,
                               const std::vector<int>& p, const std::vector<int>& q) {
  for (int a : p) {
    for (int b : q) {
      if (a == b) return 0;
    }
  }
  int64_t best = kInf;
  for (int a : p) {
    if (a < 0 || static_cast<size_t>(a) >= n) continue;
    for (int b : q) {
      if (b < 0 || static_cast<size_t>(b) >= n) continue;
      best = std::min(best, d[a][b]);
    }
  }
  return best;
}

// Largest h with at least h entries >= h, by checking every candidate.
inline int64_t h_brute(std::span<const int64_t> counts) {
  int64_t best = 0;
  for (int64_t h = 0; h <= static_cast<int64_t>(counts.size()); ++h) {
    int64_t at_least = 0;
    for (int64_t c : counts) {
      if (c >= h) ++at_least;
    }
    if (at_least >= h) best = h;
  }
  return best;
}

// Largest c with at least c distances >= c; kInf passes every threshold.
inline int64_t c_brute(std::span<const int64_t> dists) {
  int64_t best = 0;
  for (int64_t c = 0; c <= static_cast<int64_t>(dists.size()); ++c) {
    int64_t at_least = 0;
    for (int64_t d : dists) {
      if (d == kInf || d >= c) ++at_least;
    }
    if (at_least >= c) best = c;
  }
  return best;
}

// One-sided Wilcoxon signed-rank p by enumerating all 2^n sign assignments
// of the nonzero deltas (mean ranks for tied magnitudes).
inline double wilcoxon_enum_p(std::span<const double> deltas, bool less) {
  std::vector<double> nz;
  for (double d : deltas) {
    if (d != 0.0) nz.push_back(d);
  }
  const size_t n = nz.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return std::fabs(nz[a]) < std::fabs(nz[b]); });
  std::vector<double> rank(n);
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && std::fabs(nz[order[j]]) == std::fabs(nz[order[i]])) ++j;
    const double mean = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) rank[order[k]] = mean;
    i = j;
  }
  double w_obs = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (nz[i] > 0.0) w_obs += rank[i];
  }
  uint64_t favorable = 0;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < total; ++mask) {
    double w = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (mask & (uint64_t{1} << i)) w += rank[i];
    }
    if (less ? (w <= w_obs + 1e-9) : (w >= w_obs - 1e-9)) ++favorable;
  }
  return static_cast<double>(favorable) / static_cast<double>(total);
}

inline double mwu_statistic(std::span<const double> g1, std::span<const double> g2) {
  double u = 0.0;
  for (double x : g1) {
    for (double y : g2) {
      if (x > y) {
        u += 1.0;
      } else if (x == y) {
        u += 0.5;
      }
    }
  }
  return u;
}

// One-sided Mann-Whitney p by enumerating every split of the pooled sample
// into groups of the original sizes.
inline double mwu_enum_p(std::span<const double> g1, std::span<const double> g2, bool less) {
  const double u_obs = mwu_statistic(g1, g2);
  std::vector<double> pooled(g1.begin(), g1.end());
  pooled.insert(pooled.end(), g2.begin(), g2.end());
  const size_t n = pooled.size();
  const size_t n1 = g1.size();

  std::vector<size_t> pick(n1);
  std::iota(pick.begin(), pick.end(), 0);
  uint64_t favorable = 0, total = 0;
  for (;;) {
    std::vector<double> a, b;
    std::vector<bool> used(n, false);
    for (size_t i : pick) {
      a.push_back(pooled[i]);
      used[i] = true;
    }
    for (size_t i = 0; i < n; ++i) {
      if (!used[i]) b.push_back(pooled[i]);
    }
    const double u = mwu_statistic(a, b);
    ++total;
    if (less ? (u <= u_obs + 1e-9) : (u >= u_obs - 1e-9)) ++favorable;

    // next combination
    size_t i = n1;
    while (i > 0 && pick[i - 1] == n - n1 + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (size_t j = i; j < n1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return static_cast<double>(favorable) / static_cast<double>(total);
}

// Largest connected component by flood fill over an explicit adjacency list;
// ties keep the component containing the smallest node.
inline std::vector<int> lcc_floodfill(size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> comp(n, -1);
  int best_comp = -1;
  size_t best_size = 0;
  int next = 0;
  for (size_t s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    const int c = next++;
    size_t size = 0;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = c;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++size;
      for (int w : adj[v]) {
        if (comp[w] == -1) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best_comp = c;
    }
  }
  std::vector<int> out;
  for (size_t v = 0; v < n; ++v) {
    if (comp[v] == best_comp) out.push_back(static_cast<int>(v));
  }
  return out;
}

// Minimum two-cluster inertia by trying every nonempty bipartition.
inline double best_two_partition_inertia(std::span<const double> data, size_t n, size_t dim) {
  auto part_inertia = [&](const std::vector<size_t>& members) {
    std::vector<double> mean(dim, 0.0);
    for (size_t i : members) {
      for (size_t d = 0; d < dim; ++d) mean[d] += data[i * dim + d];
    }
    for (double& m : mean) m /= static_cast<double>(members.size());
    double inertia = 0.0;
    for (size_t i : members) {
      for (size_t d = 0; d < dim; ++d) {
        const double diff = data[i * dim + d] - mean[d];
        inertia += diff * diff;
      }
    }
    return inertia;
  };
  double best = std::numeric_limits<double>::max();
  const uint64_t total = uint64_t{1} << (n - 1);  // point 0 fixed in part A
  for (uint64_t mask = 0; mask < total; ++mask) {
    std::vector<size_t> a{0}, b;
    for (size_t i = 1; i < n; ++i) {
      if (mask & (uint64_t{1} << (i - 1))) {
        a.push_back(i);
      } else {
        b.push_back(i);
      }
    }
    if (b.empty()) continue;
    best = std::min(best, part_inertia(a) + part_inertia(b));
  }
  return best;
}

}  // namespace oracle
