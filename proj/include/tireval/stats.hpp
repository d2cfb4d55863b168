#pragma once

#include <span>
#include <string>
#include <vector>

#include "tireval/metrics.hpp"

namespace tireval {

// Two-sided two-sample t-test p-value. The default is the equal-variance
// (Student) variant; welch = true switches to Welch's test. Samples may
// differ in length but each needs >= 2 values. A zero pooled variance is
// accepted only when both samples are the same constant (p = 1); it is an
// error otherwise.
double unpaired_ttest(std::span<const double> a, std::span<const double> b, bool welch = false);

// Two-sided paired t-test p-value; samples must have equal length >= 2.
// All-zero differences give p = 1; a constant nonzero difference gives 0.
double paired_ttest(std::span<const double> a, std::span<const double> b);

struct SignificanceFlag {
  std::string run_tag;
  double p_value = 1.0;
  bool significant = false;
};

// Paired t-test of every system against the baseline on per-topic scores,
// flagged significant iff p < alpha / m with m = systems.size(). All tables
// must share the baseline's topic set.
std::vector<SignificanceFlag> paired_ttest_bonferroni(std::span<const ScoreTable> systems,
                                                      const ScoreTable& baseline,
                                                      const MeasureId& measure, double alpha);

}  // namespace tireval
