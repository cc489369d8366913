#ifndef QWALK_RANDOM_HPP
#define QWALK_RANDOM_HPP

#include <cstdint>
#include <random>

namespace qwalk {

//! 64-bit Mersenne Twister with a platform-independent uniform draw.
//! std::uniform_real_distribution is implementation-defined, so outputs
//! would differ between standard libraries for the same seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  //! Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

//! Derives an independent stream seed for sub-task `index` of a run seeded
//! with `seed` (splitmix64 finalizer).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qwalk

#endif  // QWALK_RANDOM_HPP
