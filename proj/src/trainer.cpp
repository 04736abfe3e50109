#include "seqcast/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace seqcast {

void TrainConfig::validate() const {
  if (hidden_dim < 1) throw PreconditionError("hidden_dim must be >= 1");
  if (window < 1) throw PreconditionError("window must be >= 1");
  if (epochs < 1) throw PreconditionError("epochs must be >= 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw PreconditionError("learning_rate must be finite and non-negative");
  }
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0)) throw PreconditionError("adam_beta1 must be in (0,1)");
  if (!(adam_beta2 > 0.0 && adam_beta2 < 1.0)) throw PreconditionError("adam_beta2 must be in (0,1)");
  if (!(adam_epsilon > 0.0)) throw PreconditionError("adam_epsilon must be > 0");
  if (!(clip_norm >= 0.0)) throw PreconditionError("clip_norm must be >= 0");
}

AdamState AdamState::zeros_like(const NetworkParameters<double>& p) {
  return {NetworkParameters<double>::zeros(p.input_dim(), p.hidden_dim()),
          NetworkParameters<double>::zeros(p.input_dim(), p.hidden_dim()), 0};
}

void adam_step(NetworkParameters<double>& p, const NetworkGradients<double>& g, AdamState& s,
               const TrainConfig& cfg) {
  for_each_tensor(
      [](const auto& a, const auto& b, const auto& c, const auto& d) {
        if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != c.rows() ||
            a.cols() != c.cols() || a.rows() != d.rows() || a.cols() != d.cols()) {
          throw DimensionError("adam_step: parameter, gradient and state shapes differ");
        }
      },
      p, g, s.m, s.v);

  ++s.step;
  const double b1 = cfg.adam_beta1;
  const double b2 = cfg.adam_beta2;
  const double t = static_cast<double>(s.step);
  const double correction1 = 1.0 - std::pow(b1, t);
  const double correction2 = 1.0 - std::pow(b2, t);
  const double lr = cfg.learning_rate;
  const double eps = cfg.adam_epsilon;

  for_each_tensor(
      [&](auto& param, const auto& grad, auto& m, auto& v) {
        m.array() = b1 * m.array() + (1.0 - b1) * grad.array();
        v.array() = b2 * v.array() + (1.0 - b2) * grad.array().square();
        param.array() -=
            lr * (m.array() / correction1) / ((v.array() / correction2).sqrt() + eps);
      },
      p, g, s.m, s.v);
}

double clip_global_norm(NetworkGradients<double>& g, double max_norm) {
  double sq = 0.0;
  for_each_tensor([&](const auto& t) { sq += t.squaredNorm(); }, g);
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for_each_tensor([&](auto& t) { t *= scale; }, g);
  }
  return norm;
}

TrainReport train(std::span<const WindowedSample> samples, const NormalizationSpec& normalization,
                  const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  if (samples.empty()) throw PreconditionError("train: no samples");
  for (const auto& s : samples) {
    if (s.inputs.size() != static_cast<std::size_t>(cfg.window)) {
      throw DimensionError("train: sample window length " + std::to_string(s.inputs.size()) +
                           " differs from configured window " + std::to_string(cfg.window));
    }
  }

  TrainReport report;
  report.config = cfg;
  report.normalization = normalization;
  report.parameters = init_network<double>(1, cfg.hidden_dim, cfg.seed);
  auto& params = report.parameters;
  AdamState adam = AdamState::zeros_like(params);
  auto grads = NetworkGradients<double>::zeros(1, cfg.hidden_dim);

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Generator shuffler(cfg.seed);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.shuffle) std::shuffle(order.begin(), order.end(), shuffler);
    double total = 0.0;
    for (std::size_t idx : order) {
      const auto& sample = samples[idx];
      const auto fwd = forward_sequence(std::span<const double>(sample.inputs), params);
      const auto [loss, d_pred] = mse_loss(fwd.prediction, sample.target);
      if (!std::isfinite(loss)) {
        throw DivergenceError("non-finite loss at epoch " + std::to_string(epoch) + ", sample " +
                              std::to_string(idx) + " (" + sample.target_month.to_string() + ")");
      }
      total += loss;
      for_each_tensor([](auto& t) { t.setZero(); }, grads);
      backward_sequence_accumulate(d_pred, fwd.cache, params, grads);
      if (cfg.clip_norm > 0.0) clip_global_norm(grads, cfg.clip_norm);
      adam_step(params, grads, adam, cfg);
    }
    const double mean = total / static_cast<double>(samples.size());
    if (!std::isfinite(mean)) {
      throw DivergenceError("non-finite mean loss at epoch " + std::to_string(epoch));
    }
    report.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
  return report;
}

}  // namespace seqcast
