#pragma once

#include <cstdint>
#include <random>

namespace rumorsim {

/// Seeded random stream with a platform-independent sequence.
///
/// std::mt19937_64 output is fixed by the standard; the distributions of the
/// standard library are not, so draws are derived from raw 64-bit words here.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for trial `k` of a run seeded with `master_seed`.
  static RngStream for_trial(std::uint64_t master_seed, std::uint64_t k);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rumorsim
