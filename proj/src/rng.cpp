#include "ymcyl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace ymcyl {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> x, std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, x[0], hi0, lo0);
    mulhilo(kMul1, x[2], hi1, lo1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return x;
}

CounterRng::result_type CounterRng::operator()() {
  if (used_ >= 4) {
    buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                             static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                            {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    ++block_;
    used_ = 0;
  }
  const std::uint64_t v = (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
  used_ += 2;
  return v;
}

double CounterRng::uniform() {
  // 53 random bits, shifted half a step off zero.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  have_spare_ = true;
  return r * std::cos(phi);
}

unsigned thread_count() {
  if (const char* env = std::getenv("YMCYL_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void for_each_chunk(std::size_t count, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (chunk_size == 0) chunk_size = kDefaultChunk;
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  const unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(chunks, 1));
  auto run = [&](std::size_t first_chunk) {
    for (std::size_t c = first_chunk; c < chunks; c += workers) {
      const std::size_t begin = c * chunk_size;
      body(begin, std::min(count, begin + chunk_size), c);
    }
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
}

MomentEstimate sample_moments(std::size_t count, std::size_t width,
                              const std::function<void(std::size_t, double*)>& sample) {
  const std::size_t chunks = (count + kDefaultChunk - 1) / kDefaultChunk;
  std::vector<double> chunk_mean(chunks * width, 0.0), chunk_m2(chunks * width, 0.0);
  std::vector<std::size_t> chunk_n(chunks, 0);
  for_each_chunk(count, kDefaultChunk, [&](std::size_t begin, std::size_t end, std::size_t c) {
    std::vector<double> x(width);
    double* mean = &chunk_mean[c * width];
    double* m2 = &chunk_m2[c * width];
    std::size_t n = 0;
    for (std::size_t i = begin; i < end; ++i) {
      sample(i, x.data());
      ++n;
      for (std::size_t k = 0; k < width; ++k) {
        const double delta = x[k] - mean[k];
        mean[k] += delta / static_cast<double>(n);
        m2[k] += delta * (x[k] - mean[k]);
      }
    }
    chunk_n[c] = n;
  });

  MomentEstimate out;
  out.mean.assign(width, 0.0);
  out.std_error.assign(width, 0.0);
  std::vector<double> m2(width, 0.0);
  std::size_t n = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t nb = chunk_n[c];
    if (nb == 0) continue;
    const double total = static_cast<double>(n + nb);
    for (std::size_t k = 0; k < width; ++k) {
      const double delta = chunk_mean[c * width + k] - out.mean[k];
      out.mean[k] += delta * static_cast<double>(nb) / total;
      m2[k] += chunk_m2[c * width + k] + delta * delta * static_cast<double>(n) * static_cast<double>(nb) / total;
    }
    n += nb;
  }
  out.count = n;
  if (n > 1) {
    for (std::size_t k = 0; k < width; ++k) out.std_error[k] = std::sqrt(m2[k] / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return out;
}

}  // namespace ymcyl
