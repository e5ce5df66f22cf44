#pragma once

#include <cstdint>
#include <string_view>

namespace msm {

// Counter-based random stream. Every draw is a pure function of (key, counter),
// so a stream can be split into named or indexed sub-streams and individual
// draws can be addressed directly (e.g. one counter per node pair), which keeps
// results independent of evaluation order and thread count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(mix(seed ^ 0x5eedf00dcafeULL)) {}

  RngStream substream(std::string_view name) const;
  RngStream substream(std::uint64_t index) const;

  std::uint64_t key() const noexcept { return key_; }

  std::uint64_t bits_at(std::uint64_t counter) const noexcept {
    return mix(key_ + (counter + 1) * kGolden);
  }
  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform_at(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits_at(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_uniform() noexcept { return uniform_at(counter_++); }
  std::uint64_t position() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  struct FromKey {};
  RngStream(FromKey, std::uint64_t key) : key_(key) {}

  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace msm
