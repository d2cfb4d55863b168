#include "tireval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "tireval/errors.hpp"
#include "tireval/numeric.hpp"

namespace tireval {

namespace {

double two_sided_p(double t, double df) {
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace

double unpaired_ttest(std::span<const double> a, std::span<const double> b, bool welch) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("t-test samples need at least two values each");
  }
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double m1 = mean(a);
  const double m2 = mean(b);
  const double v1 = sample_variance(a);
  const double v2 = sample_variance(b);

  if (v1 == 0.0 && v2 == 0.0) {
    if (m1 == m2) return 1.0;  // identical constants
    throw std::invalid_argument("t-test undefined: both samples constant with different values");
  }

  double t = 0.0;
  double df = 0.0;
  if (welch) {
    const double se1 = v1 / n1;
    const double se2 = v2 / n2;
    t = (m1 - m2) / std::sqrt(se1 + se2);
    df = (se1 + se2) * (se1 + se2) /
         (se1 * se1 / (n1 - 1.0) + se2 * se2 / (n2 - 1.0));
  } else {
    const double pooled = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / (n1 + n2 - 2.0);
    t = (m1 - m2) / std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
    df = n1 + n2 - 2.0;
  }
  return two_sided_p(t, df);
}

double paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired t-test samples must have equal length");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("paired t-test needs at least two pairs");
  }
  std::vector<double> diffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = a[i] - b[i];
  const double m = mean(diffs);
  const double v = sample_variance(diffs);
  if (v == 0.0) {
    return m == 0.0 ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(diffs.size());
  const double t = m / std::sqrt(v / n);
  return two_sided_p(t, n - 1.0);
}

std::vector<SignificanceFlag> paired_ttest_bonferroni(std::span<const ScoreTable> systems,
                                                      const ScoreTable& baseline,
                                                      const MeasureId& measure, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0) {
    throw std::invalid_argument("alpha must be in (0, 1)");
  }
  for (const auto& table : systems) {
    if (table.evaluated_topics != baseline.evaluated_topics) {
      throw ValidationError("score table for run '" + table.run_tag +
                            "' does not share the baseline topic set");
    }
  }
  std::vector<SignificanceFlag> flags;
  if (systems.empty()) return flags;

  const double threshold = alpha / static_cast<double>(systems.size());
  std::vector<double> baseline_scores;
  baseline_scores.reserve(baseline.evaluated_topics.size());
  for (const auto& topic : baseline.evaluated_topics) {
    baseline_scores.push_back(baseline.score(measure, topic));
  }
  for (const auto& table : systems) {
    std::vector<double> scores;
    scores.reserve(table.evaluated_topics.size());
    for (const auto& topic : table.evaluated_topics) {
      scores.push_back(table.score(measure, topic));
    }
    SignificanceFlag flag;
    flag.run_tag = table.run_tag;
    flag.p_value = paired_ttest(scores, baseline_scores);
    flag.significant = flag.p_value < threshold;
    flags.push_back(std::move(flag));
  }
  return flags;
}

}  // namespace tireval
