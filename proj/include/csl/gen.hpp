#pragma once

// Deterministic sample generators shared by the law checkers and the test
// suites. All randomness flows from an explicit seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "csl/value.hpp"

namespace csl {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  long below(long n) { return static_cast<long>(eng_() % static_cast<std::uint64_t>(n)); }
  long range(long lo, long hi) { return lo + below(hi - lo + 1); }
  bool coin() { return below(2) == 0; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Probability with denominator at most `denom_bound`.
Rational random_prob(Rng& rng, long denom_bound);

/// Ground carrier of 1..max_gens single-letter generators.
Carrier random_ground(Rng& rng, int max_gens);

/// Distribution over the carrier (⋆ included when present) with bounded
/// denominators and support of at most max_support elements.
Dist random_dist(Rng& rng, const Carrier& carrier, long denom_bound, int max_support = 3);

ConvexSet random_convex_set(Rng& rng, const Carrier& carrier, int max_base, long denom_bound);

// Monad values over a ground carrier X (without ⋆):
ConvexSet random_cp1(Rng& rng, const Carrier& ground, int max_base, long denom);      // C(X+1)
ConvexSet random_cp1_sq(Rng& rng, const Carrier& ground, int max_base, long denom);   // C((C(X+1))+1)
ConvexSet random_cp1_cube(Rng& rng, const Carrier& ground, int max_base, long denom);

MaybeSet random_cplus1(Rng& rng, const Carrier& ground, int max_base, long denom);    // C(X)+1
MaybeSet random_cplus1_sq(Rng& rng, const Carrier& ground, int max_base, long denom);
MaybeSet random_cplus1_cube(Rng& rng, const Carrier& ground, int max_base, long denom);

ConvexSet random_cdown(Rng& rng, const Carrier& ground, int max_base, long denom);    // C↓(X)
ConvexSet random_cdown_sq(Rng& rng, const Carrier& ground, int max_base, long denom);
ConvexSet random_cdown_cube(Rng& rng, const Carrier& ground, int max_base, long denom);

}  // namespace csl
