#pragma once

#include <stdexcept>
#include <string>

namespace seqcast {

/// Shape disagreement between operands of a math or parameter routine.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Violated precondition on an argument that is not a shape problem
/// (empty vector, zero dimension, out-of-range setting).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problems with input data: unreadable CSV, missing columns, gaps, bad splits.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for everything that can go wrong reading a model file.
class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated, trailing garbage, bad magic, non-finite payload.
class MalformedModelError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

class VersionMismatchError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

/// Declared dimensions disagree with the stored parameter blocks.
class ShapeInconsistencyError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

/// Training produced a non-finite loss.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seqcast
