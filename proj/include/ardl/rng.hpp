#pragma once

#include <cstdint>
#include <random>

namespace ardl {

/// Reproducible stream: std::mt19937_64 (bit-exact across platforms by the
/// standard) with uniforms taken as the top 53 bits and normals generated by
/// the Box-Muller transform. std::normal_distribution is implementation
/// defined, so it is never used here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on (0, 1].
  double uniform() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53; }

  /// Standard normal via Box-Muller; draws come in deterministic pairs.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ardl
