#pragma once

// The forecasting block: one LSTM cell unrolled over an input window, with
// the last hidden state mapped to a scalar through a sigmoid head,
//
//   prediction = sigmoid(W_fc h_T + b_fc).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seqcast/core_math.hpp"
#include "seqcast/lstm_cell.hpp"
#include "seqcast/normalization.hpp"

namespace seqcast {

template <typename Scalar>
struct NetworkParameters {
  CellParameters<Scalar> cell;
  Matrix<Scalar> w_fc;  // 1 x hidden_dim
  Vector<Scalar> b_fc;  // length 1

  Index hidden_dim() const { return cell.hidden_dim(); }
  Index input_dim() const { return cell.input_dim(); }

  static NetworkParameters zeros(Index input_dim, Index hidden_dim) {
    return {CellParameters<Scalar>::zeros(input_dim, hidden_dim),
            Matrix<Scalar>::Zero(1, hidden_dim), Vector<Scalar>::Zero(1)};
  }

  void validate() const {
    cell.validate();
    if (w_fc.rows() != 1 || w_fc.cols() != cell.hidden_dim()) {
      throw DimensionError("NetworkParameters: head weight must be 1 x hidden_dim");
    }
    if (b_fc.size() != 1) throw DimensionError("NetworkParameters: head bias must have length 1");
  }
};

template <typename Scalar>
using NetworkGradients = NetworkParameters<Scalar>;

/// Applies f to matching tensors of each argument: the eight cell blocks,
/// then W_fc, then b_fc. This is also the on-disk order.
template <typename F, typename... Nets>
void for_each_tensor(F&& f, Nets&&... nets) {
  for_each_cell_tensor(f, nets.cell...);
  f(nets.w_fc...);
  f(nets.b_fc...);
}

template <typename Scalar>
bool bitwise_equal(const NetworkParameters<Scalar>& a, const NetworkParameters<Scalar>& b) {
  bool same = true;
  for_each_tensor([&](const auto& x, const auto& y) { same = same && bitwise_equal(x, y); }, a, b);
  return same;
}

/// Total number of scalars across all tensors.
template <typename Scalar>
Index parameter_count(const NetworkParameters<Scalar>& p) {
  Index n = 0;
  for_each_tensor([&](const auto& t) { n += t.size(); }, p);
  return n;
}

/// Cell from init_cell on the same generator stream, then the head weights
/// drawn with the same uniform bound; head bias zero.
template <typename Scalar = double>
NetworkParameters<Scalar> init_network(Index input_dim, Index hidden_dim, std::uint64_t seed) {
  Generator gen(seed);
  NetworkParameters<Scalar> p;
  p.cell = init_cell<Scalar>(input_dim, hidden_dim, gen);
  const Scalar bound = Scalar(1) / std::sqrt(static_cast<Scalar>(hidden_dim));
  p.w_fc.resize(1, hidden_dim);
  for (Index k = 0; k < hidden_dim; ++k) p.w_fc(0, k) = uniform_symmetric(gen, bound);
  p.b_fc = Vector<Scalar>::Zero(1);
  return p;
}

template <typename Scalar>
struct SequenceCache {
  std::vector<CellCache<Scalar>> steps;
  Vector<Scalar> final_hidden;
  Scalar head_preactivation{};
  Scalar prediction{};
};

template <typename Scalar>
struct SequenceForward {
  Scalar prediction;
  SequenceCache<Scalar> cache;
};

template <typename Scalar>
SequenceForward<Scalar> forward_sequence(std::span<const Scalar> window,
                                         const NetworkParameters<Scalar>& p) {
  if (window.empty()) throw PreconditionError("forward_sequence: empty window");
  if (p.input_dim() != 1) {
    throw DimensionError("forward_sequence: scalar windows need input_dim == 1");
  }
  if (p.w_fc.cols() != p.hidden_dim()) {
    throw DimensionError("forward_sequence: head width does not match hidden_dim");
  }

  SequenceForward<Scalar> out;
  auto& cache = out.cache;
  cache.steps.reserve(window.size());
  auto state = CellState<Scalar>::zeros(p.hidden_dim());
  Vector<Scalar> x(1);
  for (Scalar value : window) {
    x(0) = value;
    auto step = cell_forward(x, state, p.cell);
    state = std::move(step.state);
    cache.steps.push_back(std::move(step.cache));
  }
  cache.final_hidden = std::move(state.h);
  cache.head_preactivation = (p.w_fc * cache.final_hidden)(0) + p.b_fc(0);
  cache.prediction = sigmoid(cache.head_preactivation);
  out.prediction = cache.prediction;
  return out;
}

template <typename Scalar>
SequenceForward<Scalar> forward_sequence(const std::vector<Scalar>& window,
                                         const NetworkParameters<Scalar>& p) {
  return forward_sequence(std::span<const Scalar>(window), p);
}

/// Backpropagation through time. Adds gradients of the loss into `acc`,
/// given dL/d(prediction). `acc` must be shaped like `p`.
template <typename Scalar>
void backward_sequence_accumulate(Scalar d_prediction, const SequenceCache<Scalar>& cache,
                                  const NetworkParameters<Scalar>& p,
                                  NetworkGradients<Scalar>& acc) {
  const Index hidden = p.hidden_dim();
  if (cache.steps.empty() || cache.final_hidden.size() != hidden) {
    throw DimensionError("backward_sequence: cache does not match parameters");
  }
  if (acc.w_fc.cols() != hidden || acc.b_fc.size() != 1) {
    throw DimensionError("backward_sequence: accumulator does not match parameters");
  }

  const Scalar d_head = d_prediction * sigmoid_grad_from_output(cache.prediction);
  acc.w_fc.noalias() += d_head * cache.final_hidden.transpose();
  acc.b_fc(0) += d_head;

  Vector<Scalar> dh = d_head * p.w_fc.row(0).transpose();
  Vector<Scalar> dc = Vector<Scalar>::Zero(hidden);
  for (auto it = cache.steps.rbegin(); it != cache.steps.rend(); ++it) {
    auto flows = cell_backward_accumulate(dh, dc, *it, p.cell, acc.cell);
    dh = std::move(flows.dh_prev);
    dc = std::move(flows.dc_prev);
  }
}

template <typename Scalar>
NetworkGradients<Scalar> backward_sequence(Scalar d_prediction, const SequenceCache<Scalar>& cache,
                                           const NetworkParameters<Scalar>& p) {
  auto grads = NetworkGradients<Scalar>::zeros(p.input_dim(), p.hidden_dim());
  backward_sequence_accumulate(d_prediction, cache, p, grads);
  return grads;
}

// ---------------------------------------------------------------------------
// Model files. Byte layout is documented in docs/model_format.md.

inline constexpr char kModelMagic[8] = {'S', 'E', 'Q', 'C', 'A', 'S', 'T', '1'};
inline constexpr std::uint32_t kModelFormatVersion = 1;

/// Everything needed to reuse a trained network on new data.
struct SavedModel {
  NetworkParameters<double> parameters;
  NormalizationSpec normalization;
  Index window = 12;
  std::string variable;  // "temperature" or "rainfall"
};

void write_model(std::ostream& out, const SavedModel& model);
SavedModel read_model(std::istream& in);

/// Atomic: the destination either holds the complete file or is untouched.
void save_model(const SavedModel& model, const std::filesystem::path& destination);
SavedModel load_model(const std::filesystem::path& source);

}  // namespace seqcast
