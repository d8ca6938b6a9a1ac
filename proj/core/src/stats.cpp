#include "lfd/stats.hpp"

#include <cmath>
#include <limits>

#include "lfd/core_model.hpp"
#include "lfd/special_functions.hpp"

namespace lfd {

namespace {

struct Moments {
  std::size_t n = 0;
  double mean = 0;
  double ss = 0;  // sum of squared deviations
  double variance() const { return ss / static_cast<double>(n - 1); }
};

Moments moments(std::span<const double> x) {
  Moments m;
  m.n = x.size();
  if (m.n == 0) return m;
  double sum = 0;
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("samples must be finite");
    sum += v;
  }
  m.mean = sum / static_cast<double>(m.n);
  for (double v : x) m.ss += (v - m.mean) * (v - m.mean);
  return m;
}

double clamp_p(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

GroupStats group_stats(std::span<const double> samples, double confidence) {
  if (samples.size() < 2) throw DomainError("group statistics need at least two samples");
  if (!(confidence > 0 && confidence < 1)) throw DomainError("confidence must lie in (0, 1)");
  const auto m = moments(samples);
  GroupStats g;
  g.n = m.n;
  g.mean = m.mean;
  g.sample_variance = m.variance();
  g.confidence = confidence;
  const double t = special::student_t_quantile(1.0 - (1.0 - confidence) / 2.0,
                                               static_cast<double>(m.n - 1));
  const double half = t * std::sqrt(g.sample_variance / static_cast<double>(m.n));
  g.ci_lo = g.mean - half;
  g.ci_hi = g.mean + half;
  return g;
}

TestResult bartlett(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw DomainError("Bartlett's test needs at least two groups");
  const auto k = static_cast<double>(groups.size());
  double total_dof = 0;
  double pooled_ss = 0;
  double sum_log = 0;
  double sum_inv = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].size() < 2) throw DomainError("every group needs at least two samples");
    const auto m = moments(groups[i]);
    const double var = m.variance();
    if (!(var > 0)) {
      throw DomainError("group " + std::to_string(i) +
                        " has zero variance; Bartlett's statistic is undefined");
    }
    const double dof = static_cast<double>(m.n - 1);
    total_dof += dof;
    pooled_ss += m.ss;
    sum_log += dof * std::log(var);
    sum_inv += 1.0 / dof;
  }
  const double pooled_var = pooled_ss / total_dof;
  const double numerator = total_dof * std::log(pooled_var) - sum_log;
  const double correction = 1.0 + (sum_inv - 1.0 / total_dof) / (3.0 * (k - 1.0));
  TestResult r;
  r.test = "bartlett";
  r.statistic = std::max(0.0, numerator / correction);
  r.df1 = k - 1.0;
  r.p_value = clamp_p(special::chi_square_sf(r.statistic, r.df1));
  return r;
}

TestResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw DomainError("ANOVA needs at least two groups");
  std::size_t total_n = 0;
  double grand_sum = 0;
  std::vector<Moments> ms;
  for (const auto& g : groups) {
    if (g.empty()) throw DomainError("every ANOVA group needs at least one sample");
    ms.push_back(moments(g));
    total_n += g.size();
    grand_sum += ms.back().mean * static_cast<double>(g.size());
  }
  const auto k = static_cast<double>(groups.size());
  const auto n = static_cast<double>(total_n);
  if (!(n > k)) throw DomainError("ANOVA needs more samples than groups");
  const double grand_mean = grand_sum / n;

  double ss_between = 0;
  double ss_within = 0;
  for (const auto& m : ms) {
    ss_between += static_cast<double>(m.n) * (m.mean - grand_mean) * (m.mean - grand_mean);
    ss_within += m.ss;
  }
  if (!(ss_within > 0)) {
    throw DomainError("all groups have zero within-group variance; F is undefined");
  }
  TestResult r;
  r.test = "anova";
  r.df1 = k - 1.0;
  r.df2 = n - k;
  r.statistic = (ss_between / r.df1) / (ss_within / *r.df2);
  r.p_value = clamp_p(special::f_sf(r.statistic, r.df1, *r.df2));
  return r;
}

TestResult ttest_two_sample(std::span<const double> a, std::span<const double> b,
                            TTestVariant variant) {
  if (a.size() < 2 || b.size() < 2) throw DomainError("t-test needs at least two samples per group");
  const auto ma = moments(a);
  const auto mb = moments(b);
  const auto na = static_cast<double>(ma.n);
  const auto nb = static_cast<double>(mb.n);
  const double diff = ma.mean - mb.mean;

  TestResult r;
  r.test = variant == TTestVariant::pooled ? "ttest" : "welch";

  if (ma.ss == 0 && mb.ss == 0) {
    r.df1 = na + nb - 2.0;
    if (diff == 0) {
      r.statistic = 0;
      r.p_value = 1;
    } else {
      r.statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
      r.p_value = 0;
    }
    return r;
  }

  double se = 0;
  if (variant == TTestVariant::pooled) {
    r.df1 = na + nb - 2.0;
    const double pooled = (ma.ss + mb.ss) / r.df1;
    se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  } else {
    const double va = ma.variance() / na;
    const double vb = mb.variance() / nb;
    se = std::sqrt(va + vb);
    r.df1 = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  }
  r.statistic = diff / se;
  r.p_value = clamp_p(special::student_t_two_sided_p(r.statistic, r.df1));
  return r;
}

}  // namespace lfd
