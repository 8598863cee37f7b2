#pragma once
// Splittable 64-bit random stream. A (seed, stream_id) pair fully determines
// the sequence, and child streams derived per work unit depend only on
// (seed, stream_id, index) -- never on how much the parent has drawn -- so
// parallel Monte Carlo output is independent of thread count and scheduling.

#include <cmath>
#include <cstdint>

namespace hs {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
      : seed_(seed), stream_id_(stream_id), state_(derive_state(seed, stream_id)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // Stream for work unit `index`, reproducible from the constructor arguments
  // alone. Starts with an empty normal cache.
  RngStream child(std::uint64_t index) const noexcept {
    return RngStream(seed_, mix64(stream_id_ + kGolden) ^ mix64(index ^ kStreamSalt));
  }

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += kGolden);  // splitmix64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1). Uses the top 52 bits offset by 1/2,
  // so the result lies in [2^-53, 1 - 2^-53] and is symmetric about 1/2;
  // neither endpoint is reachable.
  double next_uniform() noexcept {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double next_normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(next_uniform()));
    double a = k2Pi * next_uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  bool next_bernoulli(double p) noexcept { return next_uniform() < p; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
  static constexpr double k2Pi = 6.283185307179586476925287;

  static std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive_state(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    return mix64(seed + kGolden) ^ mix64(stream_id ^ kStreamSalt);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hs
