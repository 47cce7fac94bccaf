#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace srcrank {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic random source. The engine is std::mt19937_64 (fully pinned
// by the standard); all transforms live here because the standard library's
// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in {0, .., n-1}, unbiased via rejection.
  int uniform_int(int n) {
    uint64_t bound = UINT64_MAX - UINT64_MAX % uint64_t(n);
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= bound);
    return int(x % uint64_t(n));
  }

  // Box-Muller; stateless between calls so derived streams stay independent.
  double normal(double mu, double sigma) {
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    return mu + sigma * z;
  }

  // Gaussian truncated to strictly positive values by rejection.
  double positive_normal(double mu, double sigma) {
    double d;
    do {
      d = normal(mu, sigma);
    } while (d <= 0.0);
    return d;
  }

  // Independent child stream; derivation depends only on the original seed
  // and the stream index, never on how much this stream has been consumed.
  Rng derive(uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
  }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace srcrank
