#include "msm/rng.hpp"

namespace msm {

RngStream RngStream::substream(std::string_view name) const {
  // FNV-1a over the name, then folded into the parent key.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return RngStream(FromKey{}, mix(key_ ^ mix(h)));
}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(FromKey{}, mix(key_ ^ mix(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace msm
