#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace tbda {

// Deterministic 64-bit generator (SplitMix64). All experiment data flows
// through this class so that instances are bit-reproducible across
// platforms; std::random distributions are implementation-defined and
// must not be used for anything that ends up in a report.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derive an independent stream for (seed, instance-id) pairs.
  static Rng stream(std::uint64_t seed, std::string_view instance_id) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (char c : instance_id) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    Rng r(seed ^ h);
    r.next_u64();  // decorrelate nearby seeds
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; one value per call, no caching, so the
  // stream position is a pure function of the call count.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Multiply-shift; bias is negligible for n << 2^64 and identical on
    // every platform, which is what matters here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace tbda
