#ifndef ORBITQUAD_RNG_HPP
#define ORBITQUAD_RNG_HPP

#include <cstdint>
#include <random>

#include "orbitquad/linalg.hpp"

namespace orbitquad {

/// Seeded source of small exact values. Range reduction is done by hand so
/// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  std::int64_t nonzero_integer(std::int64_t bound) {
    std::int64_t v = integer(1, bound);
    return integer(0, 1) ? v : -v;
  }

  /// p/q with 1 <= |p| <= num_bound, 1 <= q <= den_bound.
  Scalar nonzero_rational(std::int64_t num_bound, std::int64_t den_bound) {
    Scalar q(static_cast<long>(nonzero_integer(num_bound)), static_cast<unsigned long>(integer(1, den_bound)));
    q.canonicalize();
    return q;
  }

  Vec integer_vector(std::size_t n, std::int64_t bound) {
    Vec v(n);
    for (auto& x : v) x = Scalar(static_cast<long>(integer(-bound, bound)));
    return v;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace orbitquad

#endif  // ORBITQUAD_RNG_HPP
