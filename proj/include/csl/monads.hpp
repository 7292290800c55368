#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csl/value.hpp"

namespace csl {

/// The three monads: C(·+1) over convex sets of subdistributions, C(·)+1 over
/// possibly-absent convex sets of full distributions, and the ⊥-closed
/// restriction C↓.
enum class MonadId { Cp1, Cplus1, Cdown };

std::string monad_name(MonadId m);

using ElemFn = std::function<Elem(const Elem&)>;

// Units. `gens` is the generator alphabet (no ⋆); x must be one of its
// elements, never ⋆.
ConvexSet unit_cp1(const Carrier& gens, const Elem& x);
MaybeSet unit_cplus1(const Carrier& gens, const Elem& x);
ConvexSet unit_cdown(const Carrier& gens, const Elem& x);

/// Plain C multiplication: the union of the weighted Minkowski sums of the
/// base distributions (no termination bookkeeping; the carrier has no ⋆ and
/// all its generators are sets).
ConvexSet mult_c(const ConvexSet& s);

/// C(+1) multiplication: folds outer-⋆ mass onto {δ⋆} in each base
/// distribution, then takes weighted Minkowski sums and unions.
ConvexSet mult_cp1(const ConvexSet& s);

/// C+1 multiplication: ⋆ when the outer value is ⋆ or no member of the outer
/// set avoids ⋆; otherwise the plain C multiplication of the full face.
MaybeSet mult_cplus1(const MaybeSet& v);

/// C↓ multiplication: mult_cp1 restricted to ⊥-closed inputs; the result is
/// checked ⊥-closed.
ConvexSet mult_cdown(const ConvexSet& s);

/// Distributive law of the termination monad over a monad M:
/// Set(S) ↦ S widened with ⋆, ⋆ ↦ {δ⋆}.
ConvexSet iota(const MaybeSet& v, const Carrier& gens);

// Functor actions. f maps generators to generators of `target_gens` and must
// never produce ⋆.
ConvexSet fmap_cp1(const ConvexSet& s, const Carrier& target_gens, const ElemFn& f);
MaybeSet fmap_cplus1(const MaybeSet& v, const Carrier& target_gens, const ElemFn& f);
ConvexSet fmap_cdown(const ConvexSet& s, const Carrier& target_gens, const ElemFn& f);

// --- executable law checking ------------------------------------------------

struct LawReport {
  std::string law;
  int samples = 0;
  std::vector<std::string> failures;
  LawReport() = default;
  explicit LawReport(std::string name) : law(std::move(name)) {}
  bool pass() const { return failures.empty(); }
};

struct SampleConfig {
  int carrier_size = 3;   // ground generators, at most 4
  int base_size = 3;      // base elements per sampled set
  long denom_bound = 6;   // probability denominators
  int samples = 100;
  std::uint64_t seed = 1;
};

/// Test hook: a deliberately broken multiplication that skips unique-base
/// reduction, for checking that the law harness flags it.
enum class Mutation { None, SkipReduction };

/// Unit laws and associativity, checked by exact equality of canonical values;
/// every computed value is additionally re-checked for base canonicity.
std::vector<LawReport> check_monad_laws(MonadId m, const SampleConfig& cfg,
                                        Mutation mut = Mutation::None);

/// The four distributive-law diagrams plus naturality for γ.
std::vector<LawReport> check_distributive_law(const SampleConfig& cfg);

/// The same five checks for the exploratory γ⊤; callers report rather than
/// assert these.
std::vector<LawReport> check_gamma_top_diagrams(const SampleConfig& cfg);

enum class MonadMapId { Gamma, Xi };

/// Unit-preservation and multiplication squares for γ: C(+1) ⇒ C+1 and
/// ξ: C(+1) ⇒ C↓.
std::vector<LawReport> check_monad_map(MonadMapId which, const SampleConfig& cfg);

}  // namespace csl
