#pragma once

// Online (batch size 1) training of the forecasting network with squared
// error loss and Adam.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "seqcast/dataset.hpp"
#include "seqcast/lstm_network.hpp"

namespace seqcast {

struct TrainConfig {
  Index hidden_dim = 100;
  double learning_rate = 0.001;
  int epochs = 100;
  Index window = 12;
  std::uint64_t seed = 42;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  bool shuffle = false;
  /// Global gradient-norm ceiling applied before each update; 0 disables.
  double clip_norm = 5.0;

  /// Throws PreconditionError on out-of-range settings. A learning rate of
  /// exactly zero is accepted so a run can be replayed without updates.
  void validate() const;
};

struct AdamState {
  NetworkParameters<double> m;  // first moment
  NetworkParameters<double> v;  // second moment
  std::uint64_t step = 0;       // completed updates

  static AdamState zeros_like(const NetworkParameters<double>& p);
};

struct LossGradient {
  double loss;
  double d_prediction;
};

/// (prediction - target)^2 and its derivative with respect to prediction.
inline LossGradient mse_loss(double prediction, double target) {
  const double diff = prediction - target;
  return {diff * diff, 2.0 * diff};
}

/// Bias-corrected Adam update, elementwise over every tensor.
void adam_step(NetworkParameters<double>& p, const NetworkGradients<double>& g, AdamState& s,
               const TrainConfig& cfg);

/// Scales `g` in place so its global L2 norm is at most `max_norm`.
/// Returns the norm before scaling.
double clip_global_norm(NetworkGradients<double>& g, double max_norm);

struct TrainReport {
  std::vector<double> epoch_loss;  // mean per-sample loss, one per epoch
  NetworkParameters<double> parameters;
  NormalizationSpec normalization;
  TrainConfig config;
};

/// Called after every epoch with (1-based epoch, mean loss).
using EpochCallback = std::function<void(int, double)>;

/// Trains from init_network(1, hidden_dim, seed). Samples are visited in the
/// given order unless cfg.shuffle is set, in which case each epoch uses a
/// permutation drawn from a generator seeded with cfg.seed.
/// Throws DivergenceError if any loss is non-finite.
TrainReport train(std::span<const WindowedSample> samples, const NormalizationSpec& normalization,
                  const TrainConfig& cfg, const EpochCallback& on_epoch = {});

}  // namespace seqcast
