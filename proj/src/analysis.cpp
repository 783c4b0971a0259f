#include "xidx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xidx/error.hpp"

namespace xidx {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Mean ranks over a sorted key sequence, doubled so ties stay integral:
// positions lo..hi (0-based) share rank (lo + hi + 2) / 2.
std::vector<int64_t> doubled_mean_ranks(std::span<const double> sorted_keys) {
  std::vector<int64_t> rank2(sorted_keys.size());
  for (size_t i = 0; i < sorted_keys.size();) {
    size_t j = i;
    while (j < sorted_keys.size() && sorted_keys[j] == sorted_keys[i]) ++j;
    const int64_t r2 = static_cast<int64_t>(i) + static_cast<int64_t>(j) + 1;  // (i+1 + j)
    for (size_t k = i; k < j; ++k) rank2[k] = r2;
    i = j;
  }
  return rank2;
}

}  // namespace

RankTable rank_scholars(const std::map<std::string, double>& values,
                        const std::string& metric_name) {
  if (values.empty()) throw InvalidArgument("rank_scholars: no values");
  std::vector<std::pair<double, const std::string*>> order;
  order.reserve(values.size());
  for (const auto& [id, v] : values) order.emplace_back(v, &id);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;  // descending value
    return *a.second < *b.second;
  });

  RankTable table;
  table.metric_name = metric_name;
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && order[j].first == order[i].first) ++j;
    const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) table.ranks.emplace(*order[k].second, mean_rank);
    i = j;
  }
  return table;
}

std::map<std::string, double> ranking_delta(const RankTable& rank_x,
                                            const RankTable& rank_baseline,
                                            std::span<const std::string> cohort) {
  if (rank_x.ranks.size() != rank_baseline.ranks.size() ||
      !std::equal(rank_x.ranks.begin(), rank_x.ranks.end(), rank_baseline.ranks.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw InvalidArgument("ranking_delta: rank tables cover different scholar populations");
  }
  std::map<std::string, double> deltas;
  for (const auto& id : cohort) {
    auto x_it = rank_x.ranks.find(id);
    auto b_it = rank_baseline.ranks.find(id);
    if (x_it == rank_x.ranks.end() || b_it == rank_baseline.ranks.end()) {
      throw NotFound("ranking_delta: cohort member missing from rank tables: " + id);
    }
    deltas[id] = x_it->second - b_it->second;
  }
  return deltas;
}

TestResult wilcoxon_signed_rank(std::span<const double> deltas, Alternative alternative) {
  std::vector<double> nonzero;
  for (double d : deltas) {
    if (d != 0.0) nonzero.push_back(d);
  }
  const size_t n = nonzero.size();
  if (n == 0) throw Degenerate("wilcoxon_signed_rank: degenerate sample (all deltas zero)");

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return std::fabs(nonzero[a]) < std::fabs(nonzero[b]); });
  std::vector<double> abs_sorted(n);
  for (size_t i = 0; i < n; ++i) abs_sorted[i] = std::fabs(nonzero[order[i]]);
  const std::vector<int64_t> rank2 = doubled_mean_ranks(abs_sorted);

  int64_t w2_pos = 0;  // 2 * W+
  for (size_t i = 0; i < n; ++i) {
    if (nonzero[order[i]] > 0.0) w2_pos += rank2[i];
  }

  TestResult res;
  res.statistic = static_cast<double>(w2_pos) / 2.0;
  res.n = n;
  res.alternative = alternative;

  if (n <= 25) {
    // Exact sign-flip distribution of 2*W+ via subset-sum counting over the
    // doubled ranks; handles mean ranks from ties without any rounding.
    const int64_t total = std::accumulate(rank2.begin(), rank2.end(), int64_t{0});
    std::vector<uint64_t> dp(total + 1, 0);
    dp[0] = 1;
    for (int64_t r2 : rank2) {
      for (int64_t s = total; s >= r2; --s) dp[s] += dp[s - r2];
    }
    uint64_t tail = 0;
    if (alternative == Alternative::kLess) {
      for (int64_t s = 0; s <= w2_pos; ++s) tail += dp[s];
    } else {
      for (int64_t s = w2_pos; s <= total; ++s) tail += dp[s];
    }
    res.p_value = static_cast<double>(tail) / std::ldexp(1.0, static_cast<int>(n));
    res.exact = true;
  } else {
    const double w = res.statistic;
    const double mean = static_cast<double>(n) * (n + 1) / 4.0;
    // Var(W+) = sum of squared mean ranks / 4, which equals the textbook
    // n(n+1)(2n+1)/24 minus the tie correction.
    double var = 0.0;
    for (int64_t r2 : rank2) var += static_cast<double>(r2) * static_cast<double>(r2);
    var /= 16.0;
    const double sd = std::sqrt(var);
    if (alternative == Alternative::kLess) {
      res.p_value = normal_cdf((w - mean + 0.5) / sd);
    } else {
      res.p_value = 1.0 - normal_cdf((w - mean - 0.5) / sd);
    }
    res.exact = false;
  }
  return res;
}

TestResult mann_whitney_u(std::span<const double> group1, std::span<const double> group2,
                          Alternative alternative) {
  const size_t n1 = group1.size();
  const size_t n2 = group2.size();
  if (n1 == 0 || n2 == 0) throw InvalidArgument("mann_whitney_u: both groups must be nonempty");

  // Pooled mean ranks; U1 = R1 - n1(n1+1)/2.
  std::vector<std::pair<double, int>> pooled;
  pooled.reserve(n1 + n2);
  for (double v : group1) pooled.emplace_back(v, 0);
  for (double v : group2) pooled.emplace_back(v, 1);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<double> keys(pooled.size());
  for (size_t i = 0; i < pooled.size(); ++i) keys[i] = pooled[i].first;
  const std::vector<int64_t> rank2 = doubled_mean_ranks(keys);

  bool has_ties = false;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  for (size_t i = 0; i < keys.size();) {
    size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const double t = static_cast<double>(j - i);
    if (j - i > 1) {
      has_ties = true;
      tie_term += t * t * t - t;
    }
    i = j;
  }

  int64_t r1_doubled = 0;
  for (size_t i = 0; i < pooled.size(); ++i) {
    if (pooled[i].second == 0) r1_doubled += rank2[i];
  }
  const double u1 = static_cast<double>(r1_doubled) / 2.0 -
                    static_cast<double>(n1) * (n1 + 1) / 2.0;

  TestResult res;
  res.statistic = u1;
  res.n = static_cast<uint64_t>(n1 + n2);
  res.alternative = alternative;

  if (!has_ties && n1 * n2 <= 400) {
    // Exact null distribution of U by the standard count recursion.
    const size_t umax = n1 * n2;
    // count[i][j][u] = arrangements of i group1 / j group2 values with U = u.
    std::vector<std::vector<std::vector<uint64_t>>> count(
        n1 + 1, std::vector<std::vector<uint64_t>>(n2 + 1, std::vector<uint64_t>(umax + 1, 0)));
    for (size_t j = 0; j <= n2; ++j) count[0][j][0] = 1;
    for (size_t i = 1; i <= n1; ++i) {
      for (size_t j = 0; j <= n2; ++j) {
        for (size_t u = 0; u <= i * j; ++u) {
          uint64_t ways = 0;
          if (u >= j) ways += count[i - 1][j][u - j];
          if (j >= 1) ways += count[i][j - 1][u];
          count[i][j][u] = ways;
        }
      }
    }
    const auto& dist = count[n1][n2];
    uint64_t total = 0;
    for (uint64_t c : dist) total += c;
    const auto u_obs = static_cast<size_t>(std::llround(u1));
    uint64_t tail = 0;
    if (alternative == Alternative::kLess) {
      for (size_t u = 0; u <= u_obs && u <= umax; ++u) tail += dist[u];
    } else {
      for (size_t u = u_obs; u <= umax; ++u) tail += dist[u];
    }
    res.p_value = static_cast<double>(tail) / static_cast<double>(total);
    res.exact = true;
  } else {
    const double n = static_cast<double>(n1 + n2);
    const double mean = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;
    const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                       ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
      // Every pooled value identical: no evidence in either direction.
      res.p_value = 0.5;
    } else {
      const double sd = std::sqrt(var);
      if (alternative == Alternative::kLess) {
        res.p_value = normal_cdf((u1 - mean + 0.5) / sd);
      } else {
        res.p_value = 1.0 - normal_cdf((u1 - mean - 0.5) / sd);
      }
    }
    res.exact = false;
  }
  return res;
}

namespace {

struct WindowStats {
  double slope;
  double mean;
  double std;
};

// OLS slope of value against year index plus mean and population std.
WindowStats window_stats(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;

  const double t_mean = (n + 1.0) / 2.0;  // year indices 1..n within the window
  double cov = 0.0, t_var = 0.0, v_var = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double dt = static_cast<double>(i + 1) - t_mean;
    const double dv = values[i] - mean;
    cov += dt * dv;
    t_var += dt * dt;
    v_var += dv * dv;
  }
  return {cov / t_var, mean, std::sqrt(v_var / n)};
}

}  // namespace

TrajectoryFeatures trajectory_features(std::span<const double> series) {
  if (series.size() != 10) {
    throw InvalidArgument("trajectory_features: series must have exactly 10 values");
  }
  TrajectoryFeatures f;
  const WindowStats early = window_stats(series.subspan(0, 5));
  const WindowStats late = window_stats(series.subspan(5, 5));
  f.early_slope = early.slope;
  f.early_mean = early.mean;
  f.early_std = early.std;
  f.late_slope = late.slope;
  f.late_mean = late.mean;
  f.late_std = late.std;
  f.delta_slope = late.slope - early.slope;
  f.delta_mean = late.mean - early.mean;
  f.delta_std = late.std - early.std;

  f.first_nonzero_year = 11;
  for (size_t i = 0; i < 10; ++i) {
    if (series[i] > 0.0) {
      f.first_nonzero_year = static_cast<int32_t>(i + 1);
      break;
    }
  }

  f.max_increment_year = 2;
  double best = series[1] - series[0];
  for (size_t k = 3; k <= 10; ++k) {
    const double inc = series[k - 1] - series[k - 2];
    if (inc > best) {
      best = inc;
      f.max_increment_year = static_cast<int32_t>(k);
    }
  }
  return f;
}

std::array<double, 11> TrajectoryFeatures::as_vector() const {
  return {early_slope,
          early_mean,
          early_std,
          late_slope,
          late_mean,
          late_std,
          delta_slope,
          delta_mean,
          delta_std,
          static_cast<double>(first_nonzero_year),
          static_cast<double>(max_increment_year)};
}

const std::array<const char*, 11>& TrajectoryFeatures::feature_names() {
  static const std::array<const char*, 11> names = {
      "early_slope", "early_mean", "early_std",  "late_slope",         "late_mean",
      "late_std",    "delta_slope", "delta_mean", "delta_std",
      "first_nonzero_year", "max_increment_year"};
  return names;
}

}  // namespace xidx
