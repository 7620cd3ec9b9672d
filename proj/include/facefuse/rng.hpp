#pragma once

#include <cstdint>

namespace facefuse {

/// xoshiro256** seeded through splitmix64, with Box-Muller normals (cosine
/// branch only, one normal per two uniforms).
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double gaussian(double sigma);

  static constexpr const char* kName = "xoshiro256**/splitmix64/box-muller";

 private:
  std::uint64_t s_[4];
};

}  // namespace facefuse
