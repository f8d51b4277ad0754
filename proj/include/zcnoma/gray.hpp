#pragma once

#include <bit>
#include <cstdint>

namespace zcnoma {

/// Binary-reflected Gray label of a level index; adjacent indices (and the
/// wrap-around pair, which PSK needs) differ in exactly one bit.
inline std::uint32_t gray_encode(std::uint32_t i) { return i ^ (i >> 1); }

/// Number of differing label bits between two level indices.
inline unsigned gray_bit_errors(std::uint32_t a, std::uint32_t b) {
  return static_cast<unsigned>(std::popcount(gray_encode(a) ^ gray_encode(b)));
}

}  // namespace zcnoma
