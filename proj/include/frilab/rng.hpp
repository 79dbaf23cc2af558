#ifndef FRILAB_RNG_HPP
#define FRILAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

#include "frilab/common.hpp"

namespace frilab {

/**
 * Counter-based splittable random stream.
 *
 * A stream is identified by a 64-bit key derived from the root seed and the
 * path of child labels that produced it. Draws are a pure function of
 * (key, counter), so identical (seed, path) reproduces the same values
 * bit-exactly regardless of thread count or call site. Distinct paths give
 * statistically independent streams (SplitMix64 construction, Steele/Lea/
 * Flood 2014).
 *
 * Streams are cheap values. Derive a fresh child per parallel task and never
 * share one stream across concurrent tasks.
 */
class RngStream {
 public:
  explicit RngStream(uint64_t root_seed) : key_(mix64(root_seed + kGolden)) {}

  RngStream child(uint64_t label) const {
    RngStream s(*this);
    s.key_ = mix64(key_ ^ (mix64(label + kGolden) + 0x71C67E2D4E9B35EDULL));
    s.ctr_ = 0;
    return s;
  }

  RngStream child(std::initializer_list<uint64_t> labels) const {
    RngStream s = *this;
    for (uint64_t l : labels) s = s.child(l);
    return s;
  }

  uint64_t next_u64() { return mix64(key_ + (++ctr_) * kGolden); }

  // Uniform on [0,1), 53 bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1], safe as a log() argument.
  double next_double_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, n) (Lemire's multiply-shift with rejection).
  uint64_t uniform_below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t threshold = (0ULL - n) % n;  // 2^64 mod n
    while (true) {
      __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
      if (static_cast<uint64_t>(m) >= threshold) return static_cast<uint64_t>(m >> 64);
    }
  }

  bool bernoulli(double p) { return next_double() < p; }

  double exponential() { return -std::log(next_double_pos()); }

  // Poisson via exponential inter-arrivals; exact, deterministic per stream.
  // Large means are split in halves so the inner loop stays short.
  int64_t poisson(double lambda) {
    if (!(lambda >= 0)) throw ValidationError("poisson: lambda must be >= 0");
    int64_t total = 0;
    while (lambda > 32.0) {
      double half = lambda / 2;
      total += poisson_small(half);
      lambda -= half;
    }
    return total + poisson_small(lambda);
  }

  // Geometric with pmf p(n) = lambda (1-lambda)^n on n >= 0.
  int64_t geometric(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
      throw ValidationError("geometric: lambda must be in (0,1]");
    if (lambda >= 1.0) return 0;
    double u = next_double_pos();
    double n = std::floor(std::log(u) / std::log1p(-lambda));
    if (n < 0) n = 0;
    if (n > 9.0e15) n = 9.0e15;
    return static_cast<int64_t>(n);
  }

  uint64_t key() const { return key_; }

 private:
  int64_t poisson_small(double lambda) {
    if (lambda <= 0) return 0;
    int64_t k = -1;
    double t = 0;
    while (t < lambda) {
      t += exponential();
      ++k;
    }
    return k < 0 ? 0 : k;
  }

  uint64_t key_;
  uint64_t ctr_ = 0;
};

}  // namespace frilab

#endif  // FRILAB_RNG_HPP
