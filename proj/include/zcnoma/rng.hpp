#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace zcnoma {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The output
/// block is a pure function of (key, counter), so any (stream, draw index)
/// can be generated without sequencing through earlier draws; that is what
/// makes trial-level parallelism reproducible. The generator identity is part
/// of the simulator's reproducibility contract.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  static Block generate(std::uint64_t key, const Block& counter) {
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    Block c = counter;
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
      }
      const std::uint64_t p0 = 0xD2511F53ull * c[0];
      const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      c = Block{hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    }
    return c;
  }
};

/// One substream of draws: the upper counter words are pinned to
/// (stream_hi, stream_lo) and the lower two words count blocks. Each block
/// yields two 64-bit words. Gaussians come from Box-Muller (no rejection, a
/// fixed two-uniform cost), with the second variate of each pair cached.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint32_t stream_hi, std::uint32_t stream_lo)
      : seed_(seed), hi_(stream_hi), lo_(stream_lo) {}

  std::uint64_t next_u64() {
    if (have_word_) {
      have_word_ = false;
      return spare_word_;
    }
    const Philox4x32::Block c{static_cast<std::uint32_t>(block_index_),
                              static_cast<std::uint32_t>(block_index_ >> 32), lo_, hi_};
    const Philox4x32::Block out = Philox4x32::generate(seed_, c);
    ++block_index_;
    spare_word_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    have_word_ = true;
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  }

  /// Uniform on (0, 1]: 53 random bits, then shifted off zero.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal.
  double next_gaussian() {
    if (have_gauss_) {
      have_gauss_ = false;
      return spare_gauss_;
    }
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_gauss_ = radius * std::sin(angle);
    have_gauss_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t seed_;
  std::uint32_t hi_;
  std::uint32_t lo_;
  std::uint64_t block_index_ = 0;
  std::uint64_t spare_word_ = 0;
  bool have_word_ = false;
  double spare_gauss_ = 0.0;
  bool have_gauss_ = false;
};

}  // namespace zcnoma
