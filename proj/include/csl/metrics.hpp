#pragma once

#include <string>
#include <vector>

#include "csl/gen.hpp"
#include "csl/monads.hpp"
#include "csl/term.hpp"
#include "csl/value.hpp"

namespace csl {

/// 1-bounded rational metric on a finite carrier, stored as a full symmetric
/// table. Every axiom is verified exactly at construction; the pseudometric
/// factory relaxes only the identity of indiscernibles (needed for the
/// intermediate tables of fixpoint iterations).
class FinMetric {
 public:
  static FinMetric discrete(std::vector<Elem> carrier);
  static FinMetric metric(std::vector<Elem> carrier, std::vector<std::vector<Rational>> table);
  static FinMetric pseudometric(std::vector<Elem> carrier, std::vector<std::vector<Rational>> table);

  const std::vector<Elem>& carrier() const { return carrier_; }
  const std::vector<std::vector<Rational>>& table() const { return d_; }
  bool is_strict() const { return strict_; }
  std::size_t index_of(const Elem& e) const;
  const Rational& dist(const Elem& a, const Elem& b) const;

  /// Coproduct with the one-point space: adjoins ⋆ at distance exactly 1.
  FinMetric with_star() const;

  friend bool operator==(const FinMetric&, const FinMetric&) = default;

 private:
  std::vector<Elem> carrier_;  // sorted, unique
  std::vector<std::vector<Rational>> d_;
  bool strict_ = true;
};

/// Coproduct of two metric spaces on disjoint carriers; points in different
/// components sit at distance exactly 1.
struct CoproductMetric {
  FinMetric left;
  FinMetric right;
  FinMetric flatten() const;
};

/// Metric-table file format: a header line of carrier names followed by a
/// lower-triangular matrix of rationals (row i holds d(x_i, x_0..x_i)).
/// Validation failures name the violated axiom and the offending elements.
FinMetric parse_metric_table(const std::string& text);

/// Exact Kantorovich (optimal transport) distance via the coupling LP.
Rational kantorovich(const Dist& phi, const Dist& psi, const FinMetric& d);

/// Hausdorff lifting of the Kantorovich metric between canonical convex sets.
/// When the sets' carrier has ⋆, `d` is a metric on the generators and is
/// lifted with d(·,⋆) = 1 internally. Each directed distance evaluates base
/// points of the sup side against one joint LP over couplings and convex
/// coefficients of the inf side.
Rational hk_distance(const ConvexSet& a, const ConvexSet& b, const FinMetric& d);

/// One directed Hausdorff distance: sup over `a` of the inf over `b` of the
/// Kantorovich distance.
Rational directed_hk(const ConvexSet& a, const ConvexSet& b, const FinMetric& d);

/// Distance on C(X)+1: 0 between ⋆ and ⋆, 1 across components, Hausdorff-
/// Kantorovich between sets.
Rational hk_maybe(const MaybeSet& a, const MaybeSet& b, const FinMetric& d);

/// Distance between terms in the free quantitative model of a theory
/// (cs-star or cs-bot; the black-hole theory has no nontrivial models).
Rational term_distance(const Term& a, const Term& b, const FinMetric& space, TheoryId th);

enum class MapUnderTest { XiHat, GammaHat, MuCplus1Hat };

/// Non-expansiveness checking. XiHat is asserted on every sample (plus the
/// unit-isometry identity); GammaHat and MuCplus1Hat reproduce the known
/// counterexamples exactly and report the violations observed on samples.
std::vector<LawReport> check_nonexpansive(MapUnderTest f, const SampleConfig& cfg);

/// Random strict metric with rational distances (shortest-path completion).
FinMetric random_metric(Rng& rng, const Carrier& ground, long denom_bound);

}  // namespace csl
