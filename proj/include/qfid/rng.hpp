// rng.hpp — Seeded sampling with a fully pinned sequence (splitmix64 core,
// Box-Muller normals). Avoids std::*_distribution so that identical seeds give
// identical streams across standard-library versions.

#pragma once

#include "qfid/types.hpp"

#include <cmath>
#include <cstdint>

namespace qfid {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent sub-stream seed for restart/job `stream` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master + 0x9e3779b97f4a7c15ull) ^
               (stream * 0xd1b54a32d192ed03ull + 0x2545f4914f6cdd1dull));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    return mix64(z);
  }

  // Uniform on (0, 1]; never returns 0 so it is safe under log().
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  Complex complex_normal() { return {normal(), normal()}; }

  // Haar-uniform pure state: normalized vector of iid standard complex normals.
  Vector haar_vector(Index dim) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = complex_normal();
    double nrm = v.norm();
    while (nrm == 0.0) {  // astronomically unlikely
      for (Index i = 0; i < dim; ++i) v(i) = complex_normal();
      nrm = v.norm();
    }
    return v / nrm;
  }

  Matrix gaussian_matrix(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace qfid
