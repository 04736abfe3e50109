#pragma once

// Independent two-pass statistics used to check summarize().

#include <cmath>
#include <span>

#include "seqcast/metrics.hpp"

namespace seqcast::testing {

inline ErrorSummary brute_force_summary(std::span<const PredictionPair> pairs) {
  const double n = static_cast<double>(pairs.size());
  double sum = 0.0, sum_abs = 0.0;
  for (const auto& p : pairs) {
    sum += p.predicted - p.actual;
    sum_abs += std::abs(p.predicted - p.actual);
  }
  const double mean = sum / n;
  const double mean_abs = sum_abs / n;
  double ss = 0.0, ss_abs = 0.0;
  for (const auto& p : pairs) {
    const double e = p.predicted - p.actual;
    ss += (e - mean) * (e - mean);
    ss_abs += (std::abs(e) - mean_abs) * (std::abs(e) - mean_abs);
  }
  ErrorSummary s;
  s.n = pairs.size();
  s.mean_error = mean;
  s.std_error = std::sqrt(ss / n);
  s.mean_abs_error = mean_abs;
  s.std_abs_error = std::sqrt(ss_abs / n);
  return s;
}

}  // namespace seqcast::testing
