#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csl/value.hpp"

namespace csl {

/// The three equational theories over the signature {⊕, +_p, ⋆}.
enum class TheoryId { CSStar, CSBot, CSBotBH };

std::string theory_name(TheoryId th);
std::optional<TheoryId> theory_from_name(const std::string& name);

/// Term over the pointed convex semilattice signature. Plus(p, l, r) places
/// weight p on l and 1−p on r. Note that the concrete syntax
/// `(pplus q l r)` places q on r — see parse_term/to_string, which are
/// mutually inverse.
class Term {
 public:
  enum class Kind { Gen, Star, Plus, Oplus };

  static Term gen(std::string name);
  static Term star();
  static Term plus(Rational p, Term l, Term r);  // requires 0 < p < 1
  static Term oplus(Term l, Term r);

  Kind kind() const;
  const std::string& gen_name() const;
  const Rational& prob() const;
  Term left() const;
  Term right() const;

  /// Sorted generator names occurring in the term.
  std::vector<std::string> generators() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Term& a, const Term& b) { return compare(a, b); }
  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }

 private:
  Term() = default;
  struct Node;
  static std::strong_ordering compare(const Term& a, const Term& b);
  std::shared_ptr<const Node> node_;
};

/// Parses the s-expression grammar
///   term := <ident> | star | (oplus term term) | (pplus <rational> term term)
/// where `(pplus q l r)` is the mixture with weight q on r. Probabilities must
/// lie strictly between 0 and 1.
Term parse_term(const std::string& text);

/// Renames every generator; the image must not be "star".
Term rename_gens(const Term& t, const std::function<std::string(const std::string&)>& f);

/// Canonical value of a term in the free model of a theory:
/// a convex set of subdistributions for CSStar, its ⊥-closure for CSBot, and
/// an element of C(X)+1 for CSBotBH.
struct CanonicalValue {
  TheoryId theory = TheoryId::CSStar;
  std::optional<ConvexSet> set;   // CSStar, CSBot
  std::optional<MaybeSet> maybe;  // CSBotBH

  std::string to_string() const;
  friend bool operator==(const CanonicalValue&, const CanonicalValue&) = default;
};

/// Interpretation in the free pointed convex semilattice over the carrier
/// (inferred from the term when not supplied). The carrier lists generators
/// only; the termination point is adjoined internally.
ConvexSet interpret_star(const Term& t, const Carrier& gens);
CanonicalValue interpret(const Term& t, TheoryId th,
                         const std::optional<Carrier>& gens = std::nullopt);

/// Equality modulo a theory, decided by normalization into the free model
/// over the union of both terms' generators.
bool theory_equal(const Term& a, const Term& b, TheoryId th);

/// Representative term of a canonical convex set over a name carrier:
/// left-nested ⊕ over the unique base of left-nested +_p support encodings.
/// interpret_star(kappa(S)) == S.
Term kappa(const ConvexSet& s);

/// Left-nested fold helpers realizing the multi-ary operations.
Term oplus_fold(const std::vector<Term>& ts);
Term pplus_fold(const std::vector<std::pair<Rational, Term>>& weighted);  // weights > 0, sum 1

/// Term whose CSStar value is the singleton {d}; d must range over names/⋆.
Term term_of_dist(const Dist& d);

}  // namespace csl
