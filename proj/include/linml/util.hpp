#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace linml {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

// Deterministic random source. Every random draw in the library goes through
// this wrapper so that a seed fully determines the outcome; no use of
// distribution classes whose output is implementation-defined.
class Rng {
public:
  // Recorded in model files so a stored model names the generator it was
  // trained with.
  static constexpr const char* kIdentity = "mt19937_64-u53";

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform integer in [0, n); n must be nonzero.
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

private:
  std::mt19937_64 gen_;
};

}  // namespace linml
