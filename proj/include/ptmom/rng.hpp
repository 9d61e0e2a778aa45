#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ptmom {

// Philox4x32-10 counter-based generator.  A (seed, stream) pair addresses an
// independent deterministic sequence, so parallel consumers can draw from
// disjoint streams without coordination and reruns reproduce bit-exactly.
class PhiloxRng {
 public:
  explicit PhiloxRng(uint64_t seed, uint64_t stream = 0)
      : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
        stream_lo_(static_cast<uint32_t>(stream)),
        stream_hi_(static_cast<uint32_t>(stream >> 32)) {}

  uint32_t next_u32() {
    if (have_ == 0) {
      block_ = philox(block_index_++);
      have_ = 4;
    }
    return block_[4 - have_--];
  }

  uint64_t next_u64() {
    const uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // uniform on (0, 1]: 53 random bits, never zero (safe under log)
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  // standard normal via Box-Muller, one spare value cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // one keyed block: counter = (index lo, index hi, stream lo, stream hi)
  std::array<uint32_t, 4> philox(uint64_t index) const {
    std::array<uint32_t, 4> c{static_cast<uint32_t>(index),
                              static_cast<uint32_t>(index >> 32), stream_lo_,
                              stream_hi_};
    uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      if (round) {
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
      }
      const uint64_t m0 = static_cast<uint64_t>(0xD2511F53u) * c[0];
      const uint64_t m1 = static_cast<uint64_t>(0xCD9E8D57u) * c[2];
      const uint32_t hi0 = static_cast<uint32_t>(m0 >> 32);
      const uint32_t lo0 = static_cast<uint32_t>(m0);
      const uint32_t hi1 = static_cast<uint32_t>(m1 >> 32);
      const uint32_t lo1 = static_cast<uint32_t>(m1);
      c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    }
    return c;
  }

  // raw keyed block for known-answer tests: full 128-bit counter and 64-bit key
  static std::array<uint32_t, 4> keyed_block(const std::array<uint32_t, 4>& counter,
                                             const std::array<uint32_t, 2>& key) {
    PhiloxRng g(static_cast<uint64_t>(key[0]) | (static_cast<uint64_t>(key[1]) << 32),
                static_cast<uint64_t>(counter[2]) |
                    (static_cast<uint64_t>(counter[3]) << 32));
    return g.philox(static_cast<uint64_t>(counter[0]) |
                    (static_cast<uint64_t>(counter[1]) << 32));
  }

 private:
  std::array<uint32_t, 2> key_;
  uint32_t stream_lo_, stream_hi_;
  uint64_t block_index_ = 0;
  std::array<uint32_t, 4> block_{};
  int have_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ptmom
