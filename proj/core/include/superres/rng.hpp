#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace superres {

/// Philox4x32-10 counter-based generator keyed by a 64-bit seed.
///
/// A stream is the sequence of blocks Philox(key = seed, counter = (block,
/// stream_id)). Two streams with different ids never share a counter value,
/// so trial i of a sweep can use stream_id = i and produce the same draws
/// no matter which worker thread runs it or in which order.
class RngStream {
public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  result_type operator()() noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// The raw bijection, exposed for known-answer tests.
  static Block philox(Block counter, std::array<std::uint32_t, 2> key) noexcept;

private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  unsigned next_ = 4;
};

} // namespace superres
