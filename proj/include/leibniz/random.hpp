#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "leibniz/matrix.hpp"

namespace leibniz {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Seed from LEIBNIZ_SEED when set, else the fixed default.
inline std::uint64_t default_seed() {
  if (const char* s = std::getenv("LEIBNIZ_SEED"); s && *s) {
    try {
      return std::stoull(s);
    } catch (...) {
      throw InputError(std::string("LEIBNIZ_SEED is not an integer: ") + s);
    }
  }
  return kDefaultSeed;
}

/// Small rational samples. Coefficients come from {±1, ±2, ±1/2, ±3} so
/// that repeated products stay cheap.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = default_seed()) : rng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return rng_; }

  Scalar nonzero() {
    static const Scalar kPool[] = {1, -1, 2, -2, Scalar::frac(1, 2), Scalar::frac(-1, 2), 3, -3};
    return kPool[index(8)];
  }
  /// Zero with probability 1/3, else nonzero().
  Scalar sparse() { return index(3) == 0 ? Scalar() : nonzero(); }

  size_t index(size_t bound) { return std::uniform_int_distribution<size_t>(0, bound - 1)(rng_); }

  Vector vector(size_t n) {
    Vector v(n);
    for (auto& x : v) x = sparse();
    return v;
  }
  Vector nonzero_vector(size_t n) {
    Vector v = vector(n);
    if (is_zero(v)) v[index(n)] = nonzero();
    return v;
  }

  /// Permutation times a few elementary transvections times a diagonal with
  /// small entries. Always invertible; entries stay small.
  Matrix invertible(size_t n, size_t transvections = 3) {
    Matrix p(n, n);
    std::vector<size_t> perm(n);
    for (size_t k = 0; k < n; ++k) perm[k] = k;
    std::shuffle(perm.begin(), perm.end(), rng_);
    for (size_t k = 0; k < n; ++k) p(perm[k], k) = 1;
    for (size_t t = 0; t < transvections && n > 1; ++t) {
      size_t a = index(n), b = index(n - 1);
      if (b >= a) ++b;
      Matrix e = Matrix::identity(n);
      e(a, b) = nonzero();
      p = p * e;
    }
    Matrix d = Matrix::identity(n);
    for (size_t k = 0; k < n; ++k) d(k, k) = nonzero();
    return p * d;
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

}  // namespace leibniz
