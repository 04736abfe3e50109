#include "seqcast/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace seqcast {

ErrorSummary summarize(std::span<const PredictionPair> pairs, std::string units) {
  if (pairs.empty()) throw PreconditionError("summarize: no prediction pairs");
  const auto n = static_cast<Eigen::Index>(pairs.size());
  Eigen::ArrayXd err(n);
  for (Eigen::Index k = 0; k < n; ++k) err(k) = pairs[static_cast<std::size_t>(k)].error();
  const Eigen::ArrayXd abs_err = err.abs();

  ErrorSummary s;
  s.n = pairs.size();
  s.units = std::move(units);
  s.mean_error = err.mean();
  s.std_error = std::sqrt((err - s.mean_error).square().mean());
  s.mean_abs_error = abs_err.mean();
  s.std_abs_error = std::sqrt((abs_err - s.mean_abs_error).square().mean());
  return s;
}

double sample_std(double population_std, std::size_t n) {
  if (n < 2) throw PreconditionError("sample_std: needs at least two values");
  const double nd = static_cast<double>(n);
  return population_std * std::sqrt(nd / (nd - 1.0));
}

std::vector<std::pair<YearMonth, double>> errors_series(std::span<const PredictionPair> pairs) {
  if (pairs.empty()) throw PreconditionError("errors_series: no prediction pairs");
  std::vector<std::pair<YearMonth, double>> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.emplace_back(p.target_month, p.error());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace seqcast
