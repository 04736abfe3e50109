#pragma once

#include <cstddef>
#include <vector>

#include "seqcast/dataset.hpp"
#include "seqcast/lstm_network.hpp"
#include "seqcast/metrics.hpp"

namespace seqcast {

/// One-step-ahead predictions for every month of `history` from
/// `first_target` on, each made from the preceding actual observations.
/// Results are denormalized to physical units.
std::vector<PredictionPair> one_step_predictions(const SavedModel& model,
                                                 const SeriesDataset& history,
                                                 YearMonth first_target);

struct RolloutPoint {
  YearMonth month;
  double predicted = 0.0;  // physical units
};

/// Extends the series `horizon` months past its last observation by feeding
/// each normalized prediction back in as the newest input.
std::vector<RolloutPoint> rollout_forecast(const SavedModel& model, const SeriesDataset& history,
                                           std::size_t horizon);

}  // namespace seqcast
