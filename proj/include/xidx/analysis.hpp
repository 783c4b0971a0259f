#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace xidx {

// Fractional ranking over descending metric value: rank 1 is the best
// (highest) value, ties receive the mean of the ranks they span.
struct RankTable {
  std::string metric_name;
  std::map<std::string, double> ranks;
};

RankTable rank_scholars(const std::map<std::string, double>& values,
                        const std::string& metric_name = "");

// Delta r = rank under x minus rank under the baseline, per cohort member;
// negative means the scholar improves under x. Both tables must be ranked
// over the identical population.
std::map<std::string, double> ranking_delta(const RankTable& rank_x,
                                            const RankTable& rank_baseline,
                                            std::span<const std::string> cohort);

enum class Alternative { kLess, kGreater };

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  uint64_t n = 0;  // effective sample size
  Alternative alternative = Alternative::kLess;
  bool exact = false;
};

// One-sided Wilcoxon signed-rank test. Zero deltas are dropped (Wilcoxon's
// original treatment), ties among |delta| get mean ranks, and the statistic
// is W+ (rank sum of positive deltas). Exact p (sign-flip distribution) for
// n <= 25, otherwise a normal approximation with tie and continuity
// corrections. Throws Degenerate when every delta is zero.
TestResult wilcoxon_signed_rank(std::span<const double> deltas, Alternative alternative);

// One-sided Mann-Whitney U test; the statistic is U for group1. Exact p by
// count recursion when n1*n2 <= 400 and the pooled sample is tie-free,
// otherwise normal approximation with tie and continuity corrections.
TestResult mann_whitney_u(std::span<const double> group1, std::span<const double> group2,
                          Alternative alternative);

// Eleven trajectory descriptors over a 10-year cumulative index series:
// per-phase OLS slope, mean and population std for years 1-5 and 6-10,
// late-minus-early deltas, and two temporal position markers.
struct TrajectoryFeatures {
  double early_slope = 0.0;
  double early_mean = 0.0;
  double early_std = 0.0;
  double late_slope = 0.0;
  double late_mean = 0.0;
  double late_std = 0.0;
  double delta_slope = 0.0;
  double delta_mean = 0.0;
  double delta_std = 0.0;
  int32_t first_nonzero_year = 11;  // 11 = never nonzero
  int32_t max_increment_year = 2;   // earliest year of the largest annual increase

  std::array<double, 11> as_vector() const;
  static const std::array<const char*, 11>& feature_names();
};

// Throws InvalidArgument unless the series has exactly 10 values.
TrajectoryFeatures trajectory_features(std::span<const double> series);

}  // namespace xidx
