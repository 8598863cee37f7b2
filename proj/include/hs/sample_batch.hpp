#pragma once
// Seeded, provenance-tagged vector of Monte Carlo draws. Values are finite by
// construction and the metadata is fixed at creation.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hs {

class SampleBatch {
 public:
  SampleBatch(std::vector<double> values, std::uint64_t seed, std::uint64_t stream_id,
              std::uint64_t redraw_count, std::string generator_tag)
      : values_(std::move(values)),
        seed_(seed),
        stream_id_(stream_id),
        redraw_count_(redraw_count),
        generator_tag_(std::move(generator_tag)) {
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("SampleBatch: non-finite value");
  }

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t redraw_count() const noexcept { return redraw_count_; }
  const std::string& generator_tag() const noexcept { return generator_tag_; }

 private:
  std::vector<double> values_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t redraw_count_;
  std::string generator_tag_;
};

}  // namespace hs
