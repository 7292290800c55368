#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csl/rational.hpp"

namespace csl {

class ConvexSet;

/// One element of a carrier: the termination point ⋆, a named generator, or a
/// nested convex set (used when carriers are built over monad values).
/// Total order: ⋆ first, then generators lexicographically, then sets
/// recursively by their bases.
class Elem {
 public:
  enum class Kind { Star, Gen, Set };

  static Elem star();
  static Elem gen(std::string name);
  static Elem set(ConvexSet value);

  Kind kind() const { return kind_; }
  bool is_star() const { return kind_ == Kind::Star; }
  bool is_gen() const { return kind_ == Kind::Gen; }
  bool is_set() const { return kind_ == Kind::Set; }
  const std::string& name() const;
  const ConvexSet& set_value() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Elem& a, const Elem& b) { return compare(a, b); }
  friend bool operator==(const Elem& a, const Elem& b) { return compare(a, b) == 0; }

 private:
  static std::strong_ordering compare(const Elem& a, const Elem& b);
  Kind kind_ = Kind::Star;
  std::string name_;
  std::shared_ptr<const ConvexSet> set_;
};

/// Ordered finite alphabet of generators, optionally extended with ⋆.
/// ⋆ is never listed among the generators.
class Carrier {
 public:
  Carrier() = default;
  static Carrier of(std::vector<Elem> gens, bool with_star);
  static Carrier names(const std::vector<std::string>& gens, bool with_star);

  bool has_star() const { return has_star_; }
  const std::vector<Elem>& gens() const { return gens_; }
  bool contains(const Elem& e) const;

  Carrier with_star() const;
  Carrier without_star() const;
  static Carrier united(const Carrier& a, const Carrier& b);

  friend std::strong_ordering operator<=>(const Carrier&, const Carrier&) = default;
  friend bool operator==(const Carrier&, const Carrier&) = default;

 private:
  std::vector<Elem> gens_;  // sorted, unique, no ⋆
  bool has_star_ = false;
};

/// Finitely supported probability distribution: sorted support with strictly
/// positive weights summing to exactly 1.
class Dist {
 public:
  using Entry = std::pair<Elem, Rational>;

  static Dist dirac(Elem e);
  /// Sorts, merges duplicates, validates positivity and total mass 1.
  static Dist make(std::vector<Entry> entries);
  /// Convex combination Σ wᵢ·dᵢ with Σ wᵢ = 1, wᵢ > 0.
  static Dist mix(const std::vector<std::pair<Dist, Rational>>& parts);

  const std::vector<Entry>& entries() const { return entries_; }
  Rational weight(const Elem& e) const;
  Rational star_weight() const;
  std::size_t support_size() const { return entries_.size(); }

  /// Pushforward along f on non-⋆ elements (⋆ stays ⋆). f may map into ⋆,
  /// in which case the mass joins the ⋆ mass.
  Dist pushforward(const std::function<Elem(const Elem&)>& f) const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Dist& a, const Dist& b);
  friend bool operator==(const Dist& a, const Dist& b) { return (a <=> b) == 0; }

 private:
  std::vector<Entry> entries_;
};

/// Non-empty finitely generated convex set of distributions, stored by its
/// unique base: no base element is a convex combination of the others.
class ConvexSet {
 public:
  ConvexSet() = default;
  /// Convex closure of the given distributions; reduces to the unique base.
  static ConvexSet cc(Carrier carrier, std::vector<Dist> dists);
  /// Trusts the caller that `base` is already the unique base (sorted and
  /// deduplicated here, but no redundancy elimination is performed).
  static ConvexSet from_base_unchecked(Carrier carrier, std::vector<Dist> base);

  const Carrier& carrier() const { return carrier_; }
  const std::vector<Dist>& base() const { return base_; }

  /// Re-tags the set over a wider carrier (supports must remain valid).
  ConvexSet with_carrier(Carrier c) const;

  /// Exact LP check that the stored base is convex-linearly independent.
  bool is_canonical_base() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const ConvexSet&, const ConvexSet&);
  friend bool operator==(const ConvexSet& a, const ConvexSet& b) { return (a <=> b) == 0; }

 private:
  Carrier carrier_;
  std::vector<Dist> base_;
};

/// Element of C(X)+1: either a convex set over X or the extra point ⋆.
class MaybeSet {
 public:
  static MaybeSet star() { return MaybeSet(); }
  static MaybeSet set(ConvexSet s) {
    MaybeSet m;
    m.set_ = std::move(s);
    return m;
  }
  bool is_star() const { return !set_.has_value(); }
  const ConvexSet& set_value() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const MaybeSet&, const MaybeSet&);
  friend bool operator==(const MaybeSet& a, const MaybeSet& b) { return (a <=> b) == 0; }

 private:
  std::optional<ConvexSet> set_;
};

// --- structural operations -------------------------------------------------

/// Coordinates of a distribution over a fixed axis (sorted element list).
std::vector<Rational> coords(const Dist& d, const std::vector<Elem>& axis);

/// Sorted union of the supports of the given distributions.
std::vector<Elem> support_union(const std::vector<Dist>& dists);

/// Reduces a list of distributions to the unique base of their convex hull.
std::vector<Dist> unique_base(std::vector<Dist> points);

/// S1 ⊕ S2 = cc(S1 ∪ S2). Carriers must agree.
ConvexSet convex_union(const ConvexSet& a, const ConvexSet& b);

/// Weighted Minkowski sum of a distribution over convex sets: every convex
/// combination drawing one element from each set in the support.
ConvexSet wms(const Dist& phi);

/// The raw generator list behind wms: one mixture per choice of base elements
/// of the support sets (not reduced).
std::vector<Dist> wms_combinations(const Dist& phi);

/// Binary convex-combination operation of the free algebra:
/// S1 +_p S2 = wms(p·S1 + (1−p)·S2).
ConvexSet pplus_op(const ConvexSet& a, const ConvexSet& b, const Rational& p);

/// Full-distribution face: the sub-convex-set of weight-0-at-⋆ distributions
/// restricted to X, or ⋆ when that face is empty.
MaybeSet gamma(const ConvexSet& s);

/// Like gamma, but ⋆ unless every member of S is a full distribution.
MaybeSet gamma_top(const ConvexSet& s);

/// ⊥-closure: smallest set closed under pointwise lowering of mass on X with
/// the excess moved to ⋆.
ConvexSet xi(const ConvexSet& s);

/// True iff xi(s) == s.
bool is_bot_closed(const ConvexSet& s);

/// Exact membership phi ∈ s via hull membership on the base.
bool contains(const ConvexSet& s, const Dist& phi);

/// True iff every base element of `a` lies in `b` (so cc(a) ⊆ b).
bool subset_of(const ConvexSet& a, const ConvexSet& b);

/// Pushforward of a whole set along f on generators; f may map into ⋆ only if
/// the target carrier has ⋆. Result is reduced to its unique base.
ConvexSet pushforward_set(const ConvexSet& s, const Carrier& target,
                          const std::function<Elem(const Elem&)>& f);

}  // namespace csl
