#ifndef GSMF_RANDOM_H_
#define GSMF_RANDOM_H_

#include <cstdint>
#include <random>

#include "gsmf/types.h"

namespace gsmf {

// Reproducible random numbers with a fully specified algorithm, so datasets
// and starting points can be regenerated bit-for-bit in other languages:
//
//  * engine: 64-bit Mersenne Twister (std::mt19937_64) seeded with the seed;
//  * Uniform(): (x >> 11) * 2^-53 for one engine output x, in [0, 1);
//  * Normal(): Box-Muller on two uniforms u1, u2 (u1 drawn first):
//      sqrt(-2 ln(1 - u1)) * cos(2 pi u2); the sine branch is discarded.
//
// Matrices are filled in column-major order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform();
  double Normal();

  Matrix UniformMatrix(Eigen::Index rows, Eigen::Index cols);
  Matrix NormalMatrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gsmf

#endif  // GSMF_RANDOM_H_
