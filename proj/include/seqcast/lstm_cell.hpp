#pragma once

// A single LSTM memory cell:
//
//   z   = [h_prev, x]
//   f   = sigmoid(W_f z + b_f)        forget gate
//   i   = sigmoid(W_i z + b_i)        input gate
//   g   = tanh(W_c z + b_c)           candidate update
//   c   = f * c_prev + i * g          (elementwise)
//   o   = sigmoid(W_o z + b_o)        output gate
//   h   = o * tanh(c)
//
// plus the reverse-mode step that maps upstream dL/dh, dL/dc to gradients
// for every parameter, the previous state and the input.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "seqcast/core_math.hpp"
#include "seqcast/random.hpp"

namespace seqcast {

template <typename Scalar>
struct CellParameters {
  // Each weight matrix is hidden_dim x (hidden_dim + input_dim), columns
  // ordered as [h_prev, x].
  Matrix<Scalar> w_forget, w_input, w_candidate, w_output;
  Vector<Scalar> b_forget, b_input, b_candidate, b_output;

  Index hidden_dim() const { return w_forget.rows(); }
  Index input_dim() const { return w_forget.cols() - w_forget.rows(); }

  static CellParameters zeros(Index input_dim, Index hidden_dim) {
    if (input_dim < 1 || hidden_dim < 1) {
      throw PreconditionError("CellParameters: dimensions must be >= 1");
    }
    const Index cols = hidden_dim + input_dim;
    CellParameters p;
    p.w_forget = p.w_input = p.w_candidate = p.w_output = Matrix<Scalar>::Zero(hidden_dim, cols);
    p.b_forget = p.b_input = p.b_candidate = p.b_output = Vector<Scalar>::Zero(hidden_dim);
    return p;
  }

  /// Throws DimensionError if the eight blocks do not agree on shape.
  void validate() const {
    const Index h = w_forget.rows();
    const Index cols = w_forget.cols();
    if (h < 1 || cols <= h) throw DimensionError("CellParameters: bad weight shape");
    for (const auto* w : {&w_input, &w_candidate, &w_output}) {
      if (w->rows() != h || w->cols() != cols) {
        throw DimensionError("CellParameters: gate weights disagree in shape");
      }
    }
    for (const auto* b : {&b_forget, &b_input, &b_candidate, &b_output}) {
      if (b->size() != h) throw DimensionError("CellParameters: bias length != hidden_dim");
    }
  }
};

/// Gradients share the parameter layout.
template <typename Scalar>
using CellGradients = CellParameters<Scalar>;

/// Applies f to the matching tensors of each argument, in serialization order.
template <typename F, typename... Cells>
void for_each_cell_tensor(F&& f, Cells&&... cells) {
  f(cells.w_forget...);
  f(cells.w_input...);
  f(cells.w_candidate...);
  f(cells.w_output...);
  f(cells.b_forget...);
  f(cells.b_input...);
  f(cells.b_candidate...);
  f(cells.b_output...);
}

/// True when both parameter sets have the same shapes and bit patterns.
template <typename Scalar>
bool bitwise_equal(const CellParameters<Scalar>& a, const CellParameters<Scalar>& b) {
  bool same = true;
  for_each_cell_tensor([&](const auto& x, const auto& y) { same = same && bitwise_equal(x, y); }, a, b);
  return same;
}

template <typename Scalar>
struct CellState {
  Vector<Scalar> h;
  Vector<Scalar> c;

  static CellState zeros(Index hidden_dim) {
    return {Vector<Scalar>::Zero(hidden_dim), Vector<Scalar>::Zero(hidden_dim)};
  }
};

/// Forward intermediates of one step. Derivatives are recovered from the
/// stored activations, so no pre-activations are kept.
template <typename Scalar>
struct CellCache {
  Vector<Scalar> x;
  Vector<Scalar> concat;  // [h_prev, x]
  Vector<Scalar> forget, input, output, candidate;
  Vector<Scalar> prev_c, c;
  Vector<Scalar> tanh_c;
};

template <typename Scalar>
struct CellStep {
  CellState<Scalar> state;
  CellCache<Scalar> cache;
};

/// Gradients flowing out of a cell step towards earlier steps and the input.
template <typename Scalar>
struct CellInputGradients {
  Vector<Scalar> dh_prev;
  Vector<Scalar> dc_prev;
  Vector<Scalar> dx;
};

template <typename Scalar>
struct CellBackward {
  CellGradients<Scalar> grads;
  Vector<Scalar> dh_prev;
  Vector<Scalar> dc_prev;
  Vector<Scalar> dx;
};

/// Weights i.i.d. uniform on [-1/sqrt(hidden_dim), 1/sqrt(hidden_dim)],
/// drawn in serialization order from `gen`; biases zero except the forget
/// bias, which starts at 1.
template <typename Scalar>
CellParameters<Scalar> init_cell(Index input_dim, Index hidden_dim, Generator& gen) {
  auto p = CellParameters<Scalar>::zeros(input_dim, hidden_dim);
  const Scalar bound = Scalar(1) / std::sqrt(static_cast<Scalar>(hidden_dim));
  for (auto* w : {&p.w_forget, &p.w_input, &p.w_candidate, &p.w_output}) {
    for (Index k = 0; k < w->size(); ++k) w->data()[k] = uniform_symmetric(gen, bound);
  }
  p.b_forget.setOnes();
  return p;
}

template <typename Scalar = double>
CellParameters<Scalar> init_cell(Index input_dim, Index hidden_dim, std::uint64_t seed) {
  Generator gen(seed);
  return init_cell<Scalar>(input_dim, hidden_dim, gen);
}

template <typename Scalar>
CellStep<Scalar> cell_forward(const Vector<Scalar>& x, const CellState<Scalar>& prev,
                              const CellParameters<Scalar>& p) {
  const Index hidden = p.hidden_dim();
  if (x.size() != p.input_dim()) {
    throw DimensionError("cell_forward: input length " + std::to_string(x.size()) +
                         ", expected " + std::to_string(p.input_dim()));
  }
  if (prev.h.size() != hidden || prev.c.size() != hidden) {
    throw DimensionError("cell_forward: state length does not match hidden_dim " +
                         std::to_string(hidden));
  }

  CellStep<Scalar> step;
  CellCache<Scalar>& cache = step.cache;
  cache.x = x;
  cache.concat = concat(prev.h, x);
  cache.forget = sigmoid((p.w_forget * cache.concat + p.b_forget).eval());
  cache.input = sigmoid((p.w_input * cache.concat + p.b_input).eval());
  cache.candidate = tanh_act((p.w_candidate * cache.concat + p.b_candidate).eval());
  cache.output = sigmoid((p.w_output * cache.concat + p.b_output).eval());
  cache.prev_c = prev.c;
  cache.c = cache.forget.cwiseProduct(prev.c) + cache.input.cwiseProduct(cache.candidate);
  cache.tanh_c = tanh_act(cache.c);

  step.state.c = cache.c;
  step.state.h = cache.output.cwiseProduct(cache.tanh_c);
  return step;
}

/// Adds this step's parameter gradients into `acc` and returns the
/// gradients for h_prev, c_prev and x. `acc` must already be shaped like `p`.
template <typename Scalar>
CellInputGradients<Scalar> cell_backward_accumulate(const Vector<Scalar>& dh,
                                                    const Vector<Scalar>& dc,
                                                    const CellCache<Scalar>& cache,
                                                    const CellParameters<Scalar>& p,
                                                    CellGradients<Scalar>& acc) {
  const Index hidden = p.hidden_dim();
  if (dh.size() != hidden || dc.size() != hidden) {
    throw DimensionError("cell_backward: upstream gradient length != hidden_dim");
  }
  if (cache.concat.size() != p.w_forget.cols() || cache.c.size() != hidden) {
    throw DimensionError("cell_backward: cache does not match parameters");
  }
  if (acc.w_forget.rows() != hidden || acc.w_forget.cols() != p.w_forget.cols()) {
    throw DimensionError("cell_backward: accumulator does not match parameters");
  }

  const auto& f = cache.forget.array();
  const auto& i = cache.input.array();
  const auto& o = cache.output.array();
  const auto& g = cache.candidate.array();
  const auto& tc = cache.tanh_c.array();

  const Vector<Scalar> dc_total = (dc.array() + dh.array() * o * (Scalar(1) - tc.square())).matrix();
  const Vector<Scalar> da_forget =
      (dc_total.array() * cache.prev_c.array() * f * (Scalar(1) - f)).matrix();
  const Vector<Scalar> da_input = (dc_total.array() * g * i * (Scalar(1) - i)).matrix();
  const Vector<Scalar> da_candidate = (dc_total.array() * i * (Scalar(1) - g.square())).matrix();
  const Vector<Scalar> da_output = (dh.array() * tc * o * (Scalar(1) - o)).matrix();

  acc.w_forget.noalias() += da_forget * cache.concat.transpose();
  acc.w_input.noalias() += da_input * cache.concat.transpose();
  acc.w_candidate.noalias() += da_candidate * cache.concat.transpose();
  acc.w_output.noalias() += da_output * cache.concat.transpose();
  acc.b_forget += da_forget;
  acc.b_input += da_input;
  acc.b_candidate += da_candidate;
  acc.b_output += da_output;

  Vector<Scalar> dz = p.w_forget.transpose() * da_forget;
  dz.noalias() += p.w_input.transpose() * da_input;
  dz.noalias() += p.w_candidate.transpose() * da_candidate;
  dz.noalias() += p.w_output.transpose() * da_output;

  return {dz.head(hidden), (dc_total.array() * f).matrix(), dz.tail(p.input_dim())};
}

template <typename Scalar>
CellBackward<Scalar> cell_backward(const Vector<Scalar>& dh, const Vector<Scalar>& dc,
                                   const CellCache<Scalar>& cache,
                                   const CellParameters<Scalar>& p) {
  CellBackward<Scalar> out;
  out.grads = CellGradients<Scalar>::zeros(p.input_dim(), p.hidden_dim());
  auto flows = cell_backward_accumulate(dh, dc, cache, p, out.grads);
  out.dh_prev = std::move(flows.dh_prev);
  out.dc_prev = std::move(flows.dc_prev);
  out.dx = std::move(flows.dx);
  return out;
}

}  // namespace seqcast
