#ifndef MOMEXT_RNG_HPP
#define MOMEXT_RNG_HPP

#include <cmath>
#include <cstdint>

#include "momext/complex_matrix.hpp"

namespace momext {

// Deterministic xoshiro-style generator built on splitmix64 seeding.
// Hand-rolled (rather than <random> distributions) so that identical seeds
// give identical streams on every platform, which the CLI byte-identity
// contract relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0x5eed0001u) { reseed(seed); }

  void reseed(std::uint64_t seed);
  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double normal();

  cplx unit_phase();  // e^{i theta}, theta uniform in [0, 2pi)

 private:
  std::uint64_t state_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace momext

#endif
