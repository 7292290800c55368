#include "csl/gen.hpp"

#include <algorithm>

#include "csl/errors.hpp"

namespace csl {

Rational random_prob(Rng& rng, long denom_bound) {
  const long den = rng.range(2, std::max<long>(2, denom_bound));
  const long num = rng.range(1, den - 1);
  return Rational(num, den);
}

Carrier random_ground(Rng& rng, int max_gens) {
  static const std::vector<std::string> pool = {"a", "b", "c", "d"};
  const int k = static_cast<int>(rng.range(1, std::min(max_gens, 4)));
  std::vector<std::string> names(pool.begin(), pool.begin() + k);
  return Carrier::names(names, false);
}

Dist random_dist(Rng& rng, const Carrier& carrier, long denom_bound, int max_support) {
  std::vector<Elem> pool = carrier.gens();
  if (carrier.has_star()) pool.push_back(Elem::star());
  std::shuffle(pool.begin(), pool.end(), rng.engine());
  const std::size_t support =
      1 + static_cast<std::size_t>(rng.below(std::min<long>(max_support, static_cast<long>(pool.size()))));
  const long denom = rng.range(static_cast<long>(support), std::max<long>(denom_bound, static_cast<long>(support)));
  std::vector<long> parts(support, 1);
  for (long r = denom - static_cast<long>(support); r > 0; --r) ++parts[rng.below(static_cast<long>(support))];
  std::vector<Dist::Entry> entries;
  for (std::size_t i = 0; i < support; ++i) entries.emplace_back(pool[i], Rational(parts[i], denom));
  return Dist::make(std::move(entries));
}

ConvexSet random_convex_set(Rng& rng, const Carrier& carrier, int max_base, long denom_bound) {
  std::vector<Dist> gens;
  const int k = static_cast<int>(rng.range(1, std::max(1, max_base)));
  for (int i = 0; i < k; ++i) gens.push_back(random_dist(rng, carrier, denom_bound));
  return ConvexSet::cc(carrier, std::move(gens));
}

ConvexSet random_cp1(Rng& rng, const Carrier& ground, int max_base, long denom) {
  return random_convex_set(rng, ground.with_star(), max_base, denom);
}

namespace {

// Builds a set over a carrier of previously sampled sets (plus ⋆).
ConvexSet over_sets(Rng& rng, std::vector<ConvexSet> inner, int max_base, long denom) {
  std::vector<Elem> gens;
  gens.reserve(inner.size());
  for (auto& s : inner) gens.push_back(Elem::set(std::move(s)));
  const Carrier carrier = Carrier::of(std::move(gens), true);
  return random_convex_set(rng, carrier, max_base, denom);
}

}  // namespace

ConvexSet random_cp1_sq(Rng& rng, const Carrier& ground, int max_base, long denom) {
  std::vector<ConvexSet> inner;
  const int k = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k; ++i) inner.push_back(random_cp1(rng, ground, max_base, denom));
  return over_sets(rng, std::move(inner), max_base, denom);
}

ConvexSet random_cp1_cube(Rng& rng, const Carrier& ground, int max_base, long denom) {
  // one shared alphabet per nesting level keeps the value well-typed
  std::vector<Elem> level1;
  const int k1 = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k1; ++i)
    level1.push_back(Elem::set(random_cp1(rng, ground, std::min(max_base, 2), denom)));
  const Carrier m1 = Carrier::of(std::move(level1), true);

  std::vector<Elem> level2;
  const int k2 = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k2; ++i)
    level2.push_back(Elem::set(random_convex_set(rng, m1, std::min(max_base, 2), denom)));
  const Carrier m2 = Carrier::of(std::move(level2), true);
  return random_convex_set(rng, m2, std::min(max_base, 2), denom);
}

MaybeSet random_cplus1(Rng& rng, const Carrier& ground, int max_base, long denom) {
  if (rng.below(8) == 0) return MaybeSet::star();
  return MaybeSet::set(random_convex_set(rng, ground, max_base, denom));
}

namespace {

MaybeSet over_maybe(Rng& rng, std::vector<MaybeSet> inner, int max_base, long denom) {
  if (rng.below(8) == 0) return MaybeSet::star();
  std::vector<Elem> gens;
  for (auto& v : inner)
    if (!v.is_star()) gens.push_back(Elem::set(v.set_value()));
  const Carrier carrier = Carrier::of(std::move(gens), true);
  if (carrier.gens().empty())
    return MaybeSet::set(ConvexSet::cc(carrier, {Dist::dirac(Elem::star())}));
  return MaybeSet::set(random_convex_set(rng, carrier, max_base, denom));
}

}  // namespace

MaybeSet random_cplus1_sq(Rng& rng, const Carrier& ground, int max_base, long denom) {
  std::vector<MaybeSet> inner;
  const int k = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k; ++i) inner.push_back(random_cplus1(rng, ground, max_base, denom));
  return over_maybe(rng, std::move(inner), max_base, denom);
}

MaybeSet random_cplus1_cube(Rng& rng, const Carrier& ground, int max_base, long denom) {
  if (rng.below(8) == 0) return MaybeSet::star();
  // shared alphabet of plain sets over X, then of sets over C(X)+1
  std::vector<Elem> level1;
  const int k1 = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k1; ++i)
    level1.push_back(Elem::set(random_convex_set(rng, ground, std::min(max_base, 2), denom)));
  const Carrier m1 = Carrier::of(std::move(level1), true);

  std::vector<Elem> level2;
  const int k2 = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k2; ++i)
    level2.push_back(Elem::set(random_convex_set(rng, m1, std::min(max_base, 2), denom)));
  const Carrier m2 = Carrier::of(std::move(level2), true);
  if (m2.gens().empty())
    return MaybeSet::set(ConvexSet::cc(m2, {Dist::dirac(Elem::star())}));
  return MaybeSet::set(random_convex_set(rng, m2, std::min(max_base, 2), denom));
}

ConvexSet random_cdown(Rng& rng, const Carrier& ground, int max_base, long denom) {
  return xi(random_cp1(rng, ground, max_base, denom));
}

ConvexSet random_cdown_sq(Rng& rng, const Carrier& ground, int max_base, long denom) {
  std::vector<ConvexSet> inner;
  const int k = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k; ++i) inner.push_back(random_cdown(rng, ground, std::min(max_base, 2), denom));
  std::vector<Elem> gens;
  for (auto& s : inner) gens.push_back(Elem::set(std::move(s)));
  const Carrier carrier = Carrier::of(std::move(gens), true);
  return xi(random_convex_set(rng, carrier, std::min(max_base, 2), denom));
}

ConvexSet random_cdown_cube(Rng& rng, const Carrier& ground, int max_base, long denom) {
  std::vector<Elem> level1;
  const int k1 = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k1; ++i)
    level1.push_back(Elem::set(random_cdown(rng, ground, std::min(max_base, 2), denom)));
  const Carrier m1 = Carrier::of(std::move(level1), true);

  std::vector<Elem> level2;
  const int k2 = static_cast<int>(rng.range(1, 2));
  for (int i = 0; i < k2; ++i)
    level2.push_back(Elem::set(xi(random_convex_set(rng, m1, 2, denom))));
  const Carrier m2 = Carrier::of(std::move(level2), true);
  return xi(random_convex_set(rng, m2, 2, denom));
}

}  // namespace csl
