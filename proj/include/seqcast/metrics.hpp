#pragma once

// Forecast error statistics in physical units. Errors are signed as
// predicted - actual, so systematic under-prediction gives a negative mean.
// Spreads are population standard deviations (divide by n).

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqcast/dataset.hpp"

namespace seqcast {

struct PredictionPair {
  YearMonth target_month;
  double actual = 0.0;
  double predicted = 0.0;

  double error() const { return predicted - actual; }
};

struct ErrorSummary {
  std::size_t n = 0;
  double mean_error = 0.0;
  double std_error = 0.0;
  double mean_abs_error = 0.0;
  double std_abs_error = 0.0;
  std::string units;
};

ErrorSummary summarize(std::span<const PredictionPair> pairs, std::string units = "");

/// Rescales a population standard deviation over n values to the sample
/// (divide by n - 1) form. Needs n >= 2.
double sample_std(double population_std, std::size_t n);

/// (target_month, error) sorted by month.
std::vector<std::pair<YearMonth, double>> errors_series(std::span<const PredictionPair> pairs);

}  // namespace seqcast
