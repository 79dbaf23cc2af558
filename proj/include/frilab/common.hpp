#ifndef FRILAB_COMMON_HPP
#define FRILAB_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frilab {

// Runtime lattice dimension: one binary serves d in [4, 8].
inline constexpr int kMinDim = 4;
inline constexpr int kMaxDim = 8;

// Raised on malformed configs, parameters out of range, schema violations.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a sampler or estimator exhausts its attempt/memory budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a runtime invariant check fails (exit code 4 in the CLI).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

inline void check_dimension(int d) {
  if (d < kMinDim || d > kMaxDim)
    throw ValidationError("dimension must be in [" + std::to_string(kMinDim) + "," +
                          std::to_string(kMaxDim) + "], got " + std::to_string(d));
}

// 64-bit finalizer from SplitMix64 (Vigna); used for hashing and stream keys.
inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace frilab

#endif  // FRILAB_COMMON_HPP
