#include "seqcast/forecast.hpp"

#include <deque>
#include <string>

namespace seqcast {

std::vector<PredictionPair> one_step_predictions(const SavedModel& model,
                                                 const SeriesDataset& history,
                                                 YearMonth first_target) {
  const auto window = static_cast<std::size_t>(model.window);
  const auto samples = make_target_windows(history, model.normalization, window, first_target);
  std::vector<PredictionPair> pairs;
  pairs.reserve(samples.size());
  for (const auto& s : samples) {
    const double unit = forward_sequence(std::span<const double>(s.inputs), model.parameters).prediction;
    pairs.push_back({s.target_month, history.value(history.index_of(s.target_month)),
                     model.normalization.denormalize(unit)});
  }
  return pairs;
}

std::vector<RolloutPoint> rollout_forecast(const SavedModel& model, const SeriesDataset& history,
                                           std::size_t horizon) {
  if (horizon == 0) throw PreconditionError("rollout: horizon must be >= 1");
  const auto window = static_cast<std::size_t>(model.window);
  if (history.size() < window) {
    throw DataError("rollout: need " + std::to_string(window) + " observations, have " +
                    std::to_string(history.size()));
  }
  std::vector<double> inputs;
  for (std::size_t k = history.size() - window; k < history.size(); ++k) {
    inputs.push_back(model.normalization.normalize(history.value(k)));
  }

  std::vector<RolloutPoint> out;
  out.reserve(horizon);
  YearMonth month = history.last_month();
  for (std::size_t step = 0; step < horizon; ++step) {
    const double unit = forward_sequence(std::span<const double>(inputs), model.parameters).prediction;
    month = month.next();
    out.push_back({month, model.normalization.denormalize(unit)});
    inputs.erase(inputs.begin());
    inputs.push_back(unit);
  }
  return out;
}

}  // namespace seqcast
