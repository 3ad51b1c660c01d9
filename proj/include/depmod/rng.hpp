#pragma once

#include <cstdint>

namespace depmod {

// Philox4x32-10 keyed by the seed; the 128-bit counter block is
// (draw counter, stream id). Output is a pure function of
// (seed, stream, counter), so identical inputs give identical values on
// every platform and streams can be derived for parallel work without
// any coordination.
std::uint64_t philox_u64(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t counter);

class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0,
                     std::uint64_t counter = 0)
      : seed_(seed), stream_(stream), counter_(counter) {}

  std::uint64_t next_u64() { return philox_u64(seed_, stream_, counter_++); }

  // Uniform draw strictly inside (0,1).
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Pure derivation: a fresh stream named by `key`, counter reset to zero.
  // Derived ids live in the counter range near 2^64, far above any counter
  // a draw loop reaches, so they never collide with draw blocks.
  RngStream derive(std::uint64_t key) const {
    return RngStream(seed_, philox_u64(seed_, stream_, ~key));
  }

  // Consumes one draw to name a fresh independent stream.
  RngStream split() { return RngStream(seed_, next_u64()); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace depmod
