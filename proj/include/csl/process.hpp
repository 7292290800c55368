#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csl/metrics.hpp"
#include "csl/term.hpp"

namespace csl {

/// Finite process over a single action: nil, a.P, nondeterministic choice and
/// probabilistic choice. PChoice(p, l, r) continues as l with probability p.
/// (The concrete syntax `l +q r` gives q to r, mirroring the term syntax.)
class Process {
 public:
  enum class Kind { Nil, Prefix, NDChoice, PChoice };

  static Process nil();
  static Process prefix(Process body);
  static Process nd_choice(Process l, Process r);
  static Process p_choice(Rational p, Process l, Process r);  // 0 < p < 1

  Kind kind() const;
  Process body() const;  // Prefix
  Process left() const;
  Process right() const;
  const Rational& prob() const;

  /// Canonical, reparseable rendering; doubles as the generator name of this
  /// process inside continuations.
  std::string to_string() const;

  /// Stratification depth: 1 + the maximal depth of the continuation targets.
  int depth() const;

  friend std::strong_ordering operator<=>(const Process& a, const Process& b) {
    return compare(a, b);
  }
  friend bool operator==(const Process& a, const Process& b) { return compare(a, b) == 0; }

 private:
  Process() = default;
  struct Node;
  static std::strong_ordering compare(const Process& a, const Process& b);
  std::shared_ptr<const Node> node_;
};

/// Grammar: proc := nil | a.proc | a^<n>.proc | proc (+) proc
///               | proc +<rational> proc | ( proc )
/// prefix binds tightest, then +q, then (+); binary operators associate left.
Process parse_process(const std::string& text);

/// The transition function: nil ↣ ⋆, a.P ↣ P, ⊕ and +_p map structurally.
Term tau(const Process& p);

/// The processes appearing as generators of tau(p).
std::vector<Process> continuation_targets(const Process& p);

/// Least set containing p and closed under continuation targets; sorted.
std::vector<Process> reachable(const Process& p);

/// Partition of a finite process set; blocks are sorted and listed by their
/// smallest member, which acts as the block's canonical identifier.
struct Partition {
  std::vector<std::vector<Process>> blocks;
  std::size_t block_of(const Process& p) const;  // throws input_error if absent
  const Process& representative(const Process& p) const;
};

struct EquivalenceResult {
  bool equivalent = false;
  Partition partition;
};

/// Largest behavioural equivalence over a target-closed state set, computed by
/// partition refinement from the one-block partition.
Partition behavioral_partition(const std::vector<Process>& states, TheoryId th);

/// Derivability relation of the proof system over a target-closed state set,
/// computed bottom-up along the continuation stratification.
Partition proof_partition(const std::vector<Process>& states, TheoryId th);

/// Largest behavioural equivalence on reachable(p) ∪ reachable(q); p and q are
/// equivalent iff they share a block.
EquivalenceResult behavioral_equivalent(const Process& p, const Process& q, TheoryId th);

struct ProofObligation {
  Process left, right;
  CanonicalValue value;  // the shared canonical value of both continuations
};

struct ProofResult {
  bool proved = false;
  Partition partition;
  std::vector<ProofObligation> subgoals;  // one per derived non-trivial pair
  // on failure, the distinguishing canonical values of the two roots
  std::optional<CanonicalValue> left_value, right_value;
};

/// Derivability in the one-rule proof system, computed bottom-up along the
/// continuation stratification. Successful proofs carry a certificate that
/// replays by re-interpreting the block-renamed continuations.
ProofResult prove(const Process& p, const Process& q, TheoryId th);

/// Re-derives every subgoal of a certificate and confirms the equalities.
bool replay_certificate(const ProofResult& cert, TheoryId th);

struct MetricTable {
  std::vector<Process> states;
  std::vector<std::vector<Rational>> table;
};

struct BisimResult {
  Rational distance;
  MetricTable table;
  int iterations = 0;
};

/// Bisimilarity metric: least fixed point of d ↦ HK(d + 1)∘(τ×τ) over the
/// joint reachable set, iterated from the zero table. Defined for cs-star and
/// cs-bot only.
BisimResult bisim_distance(const Process& p, const Process& q, TheoryId th);

}  // namespace csl
