#pragma once

#include <cstdint>

namespace perp {

// Counter-based RNG stream. Each (seed, worker, draw) triple owns an
// independent substream, so results do not depend on thread scheduling.
// Mixing is the splitmix64 finalizer applied to a keyed counter.
class RngStream {
 public:
  static RngStream for_draw(std::uint64_t seed, std::uint64_t worker,
                            std::uint64_t draw) {
    RngStream s;
    std::uint64_t k = mix(seed + 0x9e3779b97f4a7c15ull);
    k = mix(k ^ (worker + 0xbf58476d1ce4e5b9ull));
    k = mix(k ^ (draw + 0x94d049bb133111ebull));
    s.key_ = k;
    return s;
  }

  std::uint64_t next_u64() {
    ctr_ += 0x9e3779b97f4a7c15ull;
    return mix(key_ ^ ctr_);
  }

  // uniform on (0,1), both endpoints excluded
  double next_unit() {
    double u = (next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_ = 0;
  std::uint64_t ctr_ = 0;
};

}  // namespace perp
