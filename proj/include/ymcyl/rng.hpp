#pragma once

// Counter-based random streams (Philox4x32-10).
//
// A stream is identified by (seed, stream id). Monte Carlo sample i of an
// experiment always draws from stream i, so results do not depend on how
// samples are distributed over threads.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace ymcyl {

/// One Philox4x32-10 block.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal (Box-Muller, both variates used).
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Worker count from YMCYL_THREADS (default 1).
unsigned thread_count();

/// Calls body(begin, end, chunk_index) over fixed-size chunks of [0, count).
/// The chunking depends only on count, never on the thread count, so any
/// per-chunk partial results reduced in chunk order are deterministic.
void for_each_chunk(std::size_t count, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline constexpr std::size_t kDefaultChunk = 4096;

/// Sample means and 1-sigma standard errors of `width` real components.
struct MomentEstimate {
  std::size_t count = 0;
  std::vector<double> mean;
  std::vector<double> std_error;
};

/// sample(i, out) writes `width` values for sample i. Chunks are reduced in
/// chunk order (Welford within a chunk, Chan's merge across chunks), so the
/// result is bit-identical for any thread count.
MomentEstimate sample_moments(std::size_t count, std::size_t width,
                              const std::function<void(std::size_t, double*)>& sample);

}  // namespace ymcyl
