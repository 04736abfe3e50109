#pragma once

// Dense vector/matrix aliases and the activation kernels used by the LSTM.
// Everything is templated on the scalar type; the library itself runs in
// double, but the kernels accept any Eigen-compatible floating type.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstring>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "seqcast/errors.hpp"

namespace seqcast {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Row-major so the serialized parameter order is the natural reading order.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

namespace detail {

inline std::string shape_string(Index rows, Index cols) {
  std::ostringstream os;
  os << rows << "x" << cols;
  return os.str();
}

}  // namespace detail

/// Throws DimensionError unless every coefficient is finite.
template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& x, const char* what) {
  if (!x.derived().allFinite()) {
    throw DimensionError(std::string(what) + ": non-finite element");
  }
}

/// Same shape and identical bit patterns (distinguishes -0.0 from 0.0).
template <typename A, typename B>
bool bitwise_equal(const Eigen::PlainObjectBase<A>& a, const Eigen::PlainObjectBase<B>& b) {
  static_assert(std::is_same_v<typename A::Scalar, typename B::Scalar>);
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return a.size() == 0 ||
         std::memcmp(a.data(), b.data(), sizeof(typename A::Scalar) * a.size()) == 0;
}

/// Builds a validated vector: non-empty, all elements finite.
template <typename Scalar = double>
Vector<Scalar> make_vector(std::initializer_list<Scalar> values) {
  if (values.size() == 0) throw PreconditionError("make_vector: empty vector");
  Vector<Scalar> v(static_cast<Index>(values.size()));
  Index k = 0;
  for (Scalar x : values) v(k++) = x;
  require_finite(v, "make_vector");
  return v;
}

/// Builds a validated row-major matrix from nested rows.
template <typename Scalar = double>
Matrix<Scalar> make_matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  if (rows.size() == 0 || rows.begin()->size() == 0) {
    throw PreconditionError("make_matrix: empty matrix");
  }
  const auto cols = static_cast<Index>(rows.begin()->size());
  Matrix<Scalar> m(static_cast<Index>(rows.size()), cols);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != cols) {
      throw DimensionError("make_matrix: ragged rows");
    }
    Index c = 0;
    for (Scalar x : row) m(r, c++) = x;
    ++r;
  }
  require_finite(m, "make_matrix");
  return m;
}

/// Logistic sigmoid, branching on sign so exp never overflows.
/// The result is kept inside the open interval (0, 1) even where the exact
/// value rounds to an endpoint (|x| beyond ~37 in double).
template <std::floating_point Scalar>
Scalar sigmoid(Scalar x) {
  using std::exp;
  Scalar s;
  if (x >= Scalar(0)) {
    s = Scalar(1) / (Scalar(1) + exp(-x));
  } else {
    const Scalar e = exp(x);
    s = e / (Scalar(1) + e);
  }
  return std::clamp(s, std::numeric_limits<Scalar>::denorm_min(),
                    std::nextafter(Scalar(1), Scalar(0)));
}

/// Hyperbolic tangent, kept inside the open interval (-1, 1).
template <std::floating_point Scalar>
Scalar tanh_act(Scalar x) {
  const Scalar bound = std::nextafter(Scalar(1), Scalar(0));
  return std::clamp(std::tanh(x), -bound, bound);
}

/// Elementwise sigmoid over any Eigen expression.
template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return x.unaryExpr([](Scalar v) { return sigmoid(v); });
}

template <typename Derived>
auto tanh_act(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return x.unaryExpr([](Scalar v) { return tanh_act(v); });
}

/// d/dx sigmoid expressed through its output s.
template <typename Scalar>
Scalar sigmoid_grad_from_output(Scalar s) {
  return s * (Scalar(1) - s);
}

/// d/dx tanh expressed through its output t.
template <typename Scalar>
Scalar tanh_grad_from_output(Scalar t) {
  return Scalar(1) - t * t;
}

template <typename Scalar>
Vector<Scalar> matvec(const Matrix<Scalar>& m, const Vector<Scalar>& v) {
  if (m.cols() != v.size()) {
    throw DimensionError("matvec: matrix " + detail::shape_string(m.rows(), m.cols()) +
                         " vs vector of length " + std::to_string(v.size()));
  }
  return m * v;
}

/// [a, b]: a's elements first. Parameter layout depends on this order.
template <typename Scalar>
Vector<Scalar> concat(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() == 0 || b.size() == 0) {
    throw PreconditionError("concat: empty operand");
  }
  Vector<Scalar> out(a.size() + b.size());
  out << a, b;
  return out;
}

template <typename Scalar>
Vector<Scalar> hadamard(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) {
    throw DimensionError("hadamard: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  return a.cwiseProduct(b);
}

}  // namespace seqcast
