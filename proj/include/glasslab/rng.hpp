#ifndef GLASSLAB_RNG_HPP
#define GLASSLAB_RNG_HPP

#include <cstdint>

// Counter-based random number generation. Every variate is a pure function
// of a 64-bit key assembled from (seed, stream, index words), so sampled
// arrays do not depend on iteration order or thread count, and any draw can
// be regenerated in isolation.

namespace glasslab::rng {

// Stream tags keep independent consumers of the same user seed decorrelated.
enum : std::uint64_t {
  stream_tensor = 1,       // disorder coefficient arrays, per (p, flat index)
  stream_diagnostic = 2,   // scalar disorder draws for MGF diagnostics
  stream_direction = 3,    // unit directions (descent fallback, regularity probes)
  stream_point = 4,        // sampled locations in the ball
  stream_radius = 5,       // radial coordinate for ball sampling
  stream_trial = 6,        // per-trial seed derivation
};

// SplitMix64 finalizer: full-avalanche 64-bit mixing.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Key for one variate: seed plus up to three context words.
std::uint64_t key(std::uint64_t seed, std::uint64_t s1, std::uint64_t s2,
                  std::uint64_t s3) noexcept;

// Derived seed for a sub-computation (trial t, point j, ...).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                          std::uint64_t index) noexcept;

// Uniform on the open interval (0,1); never returns 0 or 1.
double uniform01(std::uint64_t hashed) noexcept;

// Standard normal CDF and its inverse (double-precision rational
// approximation, relative error below 1e-15). The inverse consumes one
// uniform per normal variate, keeping the counter discipline intact.
double normal_cdf(double x) noexcept;
double inverse_normal_cdf(double p);

// One standard normal variate from one key.
double normal(std::uint64_t hashed);

}  // namespace glasslab::rng

#endif
