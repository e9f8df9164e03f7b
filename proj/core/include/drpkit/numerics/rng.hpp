#pragma once

#include <array>
#include <cstdint>

namespace drpkit::numerics {

/// xoshiro256** generator with (seed, stream_index) substreams.
///
/// The 256-bit state is filled by running splitmix64 from a key that mixes the
/// seed and the stream index, so every (seed, stream_index) pair names its own
/// stream. Only integer arithmetic is used to produce the raw 64-bit words,
/// which makes sequences bit-identical across compilers and platforms.
/// Uniform doubles take the top 53 bits; normals use the Marsaglia polar
/// method (needs only std::log and std::sqrt).
///
/// Instances are single-owner. Parallel callers derive one stream per task.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept;
  /// Standard normal.
  double normal() noexcept;
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; exposed for stream-id derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Combines two identifiers into one stream index (e.g. sim id and purpose).
std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace drpkit::numerics
