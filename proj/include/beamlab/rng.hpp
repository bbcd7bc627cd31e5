#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace beamlab {

// Deterministic random source. The mt19937_64 core is bit-exact per the
// standard; the transforms below are hand-rolled so that sampled values are
// identical across standard libraries (std::*_distribution makes no such
// guarantee), which the byte-identical report contract requires.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // in [0, 1)
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double angle() { return uniform() * 2.0 * pi_; }

  // standard normal, Box-Muller (no state carried between calls)
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi_ * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // independent N(0, sd^2) on each component
  std::complex<double> complex_normal(double sd) {
    double re = normal();
    double im = normal();
    return {sd * re, sd * im};
  }

  // Knuth product method, chunked so exp(-mean) never underflows
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 30.0) {
      total += poisson_small(30.0);
      mean -= 30.0;
    }
    return total + poisson_small(mean);
  }

  // uniform integer in [0, bound), rejection sampled
  std::uint64_t integer(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  // splitmix64 step, used to derive independent per-trial sub-seeds
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = 1.0;
    for (;;) {
      prod *= uniform();
      if (prod <= limit) return k;
      ++k;
    }
  }

  static constexpr double pi_ = 3.14159265358979323846;
  std::mt19937_64 eng_;
};

}  // namespace beamlab
