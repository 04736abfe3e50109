#pragma once

#include <cstdint>
#include <random>

namespace seqcast {

/// Seeded generator used for every random draw in the library.
using Generator = std::mt19937_64;

/// Uniform draw on [-bound, bound]. Built from the raw 64-bit output so the
/// sequence does not depend on the standard library's distribution code.
template <typename Scalar>
Scalar uniform_symmetric(Generator& gen, Scalar bound) {
  const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
  return static_cast<Scalar>(bound * (2.0 * unit - 1.0));
}

}  // namespace seqcast
