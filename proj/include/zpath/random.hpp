#pragma once

#include <cstdint>
#include <random>

#include "zpath/tuple.hpp"
#include "zpath/zero_set.hpp"

namespace zpath {

// Seeded deterministic generator.  Doubles are produced from raw engine bits
// so streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t bits() { return engine_(); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  int index(int count) {
    return static_cast<int>(engine_() % static_cast<uint64_t>(count));
  }

 private:
  std::mt19937_64 engine_;
};

// Product of Givens rotations with random angles and phases over all index
// pairs; deterministic for a given generator state.
CMatrix random_unitary(int n, Rng& rng);

// Random skew-hermitian matrix scaled to the requested operator norm.
CMatrix random_skew(int n, Rng& rng, double norm);

// Random hermitian with entries of magnitude about `scale`.
CMatrix random_hermitian(int n, Rng& rng, double scale);

struct SeededMember {
  MatrixTuple tuple;
  std::vector<int> row_points;  // zero-set index behind each joint eigenvalue
};

// Member of the algebraic cube/disk over Z: joint eigenvalues drawn from the
// zero-set points, conjugated by a random unitary.
SeededMember random_member(const ZeroSet& z, int n, Rng& rng, bool hermitize);

// Commuting hermitian contraction tuple with joint eigenvalues uniform in
// [-1, 1]^m.
MatrixTuple random_cube_tuple(int n, int m, Rng& rng);

}  // namespace zpath
