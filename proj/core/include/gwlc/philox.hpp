#pragma once

#include <array>
#include <cstdint>

namespace gwlc {

/// Philox4x32-10 counter-based generator. A (counter, key) pair maps to
/// four 32-bit words through ten bijective rounds; nearby counters give
/// statistically independent outputs, so (seed, stream) fully determines a
/// worker's draws with no sequential state to hand around.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> x,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
      std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return x;
  }
};

/// Buffered sequential view over one Philox stream: the 64-bit seed forms
/// the key, the 64-bit stream index sits in counter words 2-3, and words
/// 0-1 count blocks (2^64 blocks of four words per stream).
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        counter_{0, 0, static_cast<std::uint32_t>(stream),
                 static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buffer_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  void refill() {
    buffer_ = Philox4x32::block(counter_, key_);
    pos_ = 0;
    if (++counter_[0] == 0) ++counter_[1];
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int pos_ = 4;
};

}  // namespace gwlc
