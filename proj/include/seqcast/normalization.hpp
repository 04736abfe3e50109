#pragma once

#include "seqcast/errors.hpp"

namespace seqcast {

/// Affine map from [min, max] (training statistics) onto [lo, hi] ⊂ (0, 1).
/// Values outside the training range map outside [lo, hi]; nothing is clipped.
struct NormalizationSpec {
  double min = 0.0;
  double max = 1.0;
  double lo = 0.1;
  double hi = 0.9;

  void validate() const {
    if (!(max > min)) throw PreconditionError("NormalizationSpec: max must exceed min");
    if (!(0.0 < lo && lo < hi && hi < 1.0)) {
      throw PreconditionError("NormalizationSpec: need 0 < lo < hi < 1");
    }
  }

  double normalize(double value) const { return lo + (value - min) * (hi - lo) / (max - min); }
  double denormalize(double unit) const { return min + (unit - lo) * (max - min) / (hi - lo); }

  friend bool operator==(const NormalizationSpec&, const NormalizationSpec&) = default;
};

}  // namespace seqcast
