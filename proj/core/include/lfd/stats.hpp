#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lfd {

struct GroupStats {
  std::size_t n = 0;
  double mean = 0;
  double sample_variance = 0;  // n - 1 denominator
  double ci_lo = 0;
  double ci_hi = 0;
  double confidence = 0.95;
};

struct TestResult {
  std::string test;  // "bartlett", "anova", "ttest", "welch"
  double statistic = 0;
  double df1 = 0;
  std::optional<double> df2;
  double p_value = 1;

  /// Reject at significance `alpha` (0.05 unless stated otherwise).
  bool significant(double alpha = 0.05) const { return p_value < alpha; }
};

/// Mean, sample variance and the Student-t confidence interval
/// mean +/- t(n-1, 1 - alpha/2) * sqrt(variance / n). Needs n >= 2.
GroupStats group_stats(std::span<const double> samples, double confidence = 0.95);

/// Bartlett's test for equal variances across k >= 2 groups (each n >= 2);
/// chi-square with k - 1 degrees of freedom. A group with zero variance makes
/// the statistic undefined and raises DomainError.
TestResult bartlett(const std::vector<std::vector<double>>& groups);

/// One-way ANOVA F = MS_between / MS_within with (k - 1, N - k) degrees of
/// freedom.
TestResult anova_oneway(const std::vector<std::vector<double>>& groups);

enum class TTestVariant { pooled, welch };

/// Two-sided two-sample t-test. The pooled variant uses
/// df = n_a + n_b - 2. When both groups have zero variance the result is
/// t = 0, p = 1 for equal means and t = +/-inf, p = 0 otherwise.
TestResult ttest_two_sample(std::span<const double> a, std::span<const double> b,
                            TTestVariant variant = TTestVariant::pooled);

}  // namespace lfd
