#include "csl/process.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "csl/errors.hpp"

namespace csl {

struct Process::Node {
  Kind kind = Kind::Nil;
  Rational prob;
  std::shared_ptr<const Node> left, right;  // Prefix uses left as the body
};

Process Process::nil() {
  Process p;
  p.node_ = std::make_shared<Node>();
  return p;
}

Process Process::prefix(Process body) {
  Process p;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prefix;
  n->left = body.node_;
  p.node_ = std::move(n);
  return p;
}

Process Process::nd_choice(Process l, Process r) {
  Process p;
  auto n = std::make_shared<Node>();
  n->kind = Kind::NDChoice;
  n->left = l.node_;
  n->right = r.node_;
  p.node_ = std::move(n);
  return p;
}

Process Process::p_choice(Rational pr, Process l, Process r) {
  if (!is_probability(pr)) throw input_error("probability must lie strictly between 0 and 1");
  Process p;
  auto n = std::make_shared<Node>();
  n->kind = Kind::PChoice;
  n->prob = std::move(pr);
  n->left = l.node_;
  n->right = r.node_;
  p.node_ = std::move(n);
  return p;
}

Process::Kind Process::kind() const { return node_->kind; }

Process Process::body() const {
  if (node_->kind != Kind::Prefix) throw internal_error("Process::body on non-prefix");
  Process p;
  p.node_ = node_->left;
  return p;
}

Process Process::left() const {
  if (node_->kind != Kind::NDChoice && node_->kind != Kind::PChoice)
    throw internal_error("Process::left on leaf");
  Process p;
  p.node_ = node_->left;
  return p;
}

Process Process::right() const {
  if (node_->kind != Kind::NDChoice && node_->kind != Kind::PChoice)
    throw internal_error("Process::right on leaf");
  Process p;
  p.node_ = node_->right;
  return p;
}

const Rational& Process::prob() const {
  if (node_->kind != Kind::PChoice) throw internal_error("Process::prob on non-choice");
  return node_->prob;
}

std::string Process::to_string() const {
  switch (node_->kind) {
    case Kind::Nil:
      return "nil";
    case Kind::Prefix: {
      int run = 1;
      Process inner = body();
      while (inner.kind() == Kind::Prefix) {
        ++run;
        inner = inner.body();
      }
      const std::string head = run == 1 ? "a." : "a^" + std::to_string(run) + ".";
      return head + inner.to_string();
    }
    case Kind::NDChoice:
      return "(" + left().to_string() + " (+) " + right().to_string() + ")";
    case Kind::PChoice:
      // the syntax weight belongs to the right branch
      return "(" + left().to_string() + " +" + rat_str(1 - node_->prob) + " " +
             right().to_string() + ")";
  }
  return {};
}

int Process::depth() const {
  switch (node_->kind) {
    case Kind::Nil:
      return 1;
    case Kind::Prefix:
      return 1 + body().depth();
    default:
      return std::max(left().depth(), right().depth());
  }
}

std::strong_ordering Process::compare(const Process& a, const Process& b) {
  const auto rank = [](Kind k) {
    switch (k) {
      case Kind::Nil:
        return 0;
      case Kind::Prefix:
        return 1;
      case Kind::NDChoice:
        return 2;
      case Kind::PChoice:
        return 3;
    }
    return 4;
  };
  if (auto c = rank(a.node_->kind) <=> rank(b.node_->kind); c != 0) return c;
  switch (a.node_->kind) {
    case Kind::Nil:
      return std::strong_ordering::equal;
    case Kind::Prefix:
      return compare(a.body(), b.body());
    case Kind::PChoice:
      if (auto c = cmp(a.node_->prob, b.node_->prob); c != 0) return c;
      [[fallthrough]];
    case Kind::NDChoice: {
      if (auto c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
    }
  }
  return std::strong_ordering::equal;
}

// --- parser ------------------------------------------------------------

namespace {

struct ProcParser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos); }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_nd_op() {
    skip_ws();
    return pos + 2 < text.size() && text.compare(pos, 3, "(+)") == 0;
  }

  Process parse_proc() {
    Process acc = parse_pchoice();
    while (at_nd_op()) {
      pos += 3;
      acc = Process::nd_choice(acc, parse_pchoice());
    }
    return acc;
  }

  Process parse_pchoice() {
    Process acc = parse_prefix();
    for (;;) {
      skip_ws();
      if (pos >= text.size() || text[pos] != '+') break;
      ++pos;
      const std::size_t at = pos;
      std::string tok;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
        tok += text[pos++];
      if (tok.empty()) fail("expected a probability after '+'");
      Rational q;
      try {
        q = parse_rational(tok);
      } catch (const input_error& e) {
        pos = at;
        fail(e.what());
      }
      if (!is_probability(q)) {
        pos = at;
        fail("probability not in the open interval (0,1)");
      }
      acc = Process::p_choice(1 - q, acc, parse_prefix());
    }
    return acc;
  }

  Process parse_prefix() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      Process inner = parse_proc();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return inner;
    }
    if (text.compare(pos, 3, "nil") == 0) {
      pos += 3;
      return Process::nil();
    }
    if (text[pos] == 'a') {
      ++pos;
      long reps = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        const std::size_t at = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == at) fail("expected an exponent");
        reps = std::stol(text.substr(at, pos - at));
      }
      if (pos >= text.size() || text[pos] != '.') fail("expected '.' after the action");
      ++pos;
      Process p = parse_prefix();
      for (long i = 0; i < reps; ++i) p = Process::prefix(p);
      return p;
    }
    fail("expected 'nil', an action prefix, or '('");
  }
};

}  // namespace

Process parse_process(const std::string& text) {
  ProcParser p{text};
  Process out = p.parse_proc();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after process");
  return out;
}

// --- semantics ---------------------------------------------------------

Term tau(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Nil:
      return Term::star();
    case Process::Kind::Prefix:
      return Term::gen(p.body().to_string());
    case Process::Kind::NDChoice:
      return Term::oplus(tau(p.left()), tau(p.right()));
    case Process::Kind::PChoice:
      return Term::plus(p.prob(), tau(p.left()), tau(p.right()));
  }
  throw internal_error("unreachable process kind");
}

std::vector<Process> continuation_targets(const Process& p) {
  std::vector<Process> out;
  switch (p.kind()) {
    case Process::Kind::Nil:
      break;
    case Process::Kind::Prefix:
      out.push_back(p.body());
      break;
    default: {
      out = continuation_targets(p.left());
      const std::vector<Process> more = continuation_targets(p.right());
      out.insert(out.end(), more.begin(), more.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Process> reachable(const Process& p) {
  std::set<Process> seen;
  std::vector<Process> work{p};
  while (!work.empty()) {
    const Process cur = work.back();
    work.pop_back();
    if (!seen.insert(cur).second) continue;
    for (const Process& next : continuation_targets(cur)) work.push_back(next);
  }
  return {seen.begin(), seen.end()};
}

// --- partitions ----------------------------------------------------------

std::size_t Partition::block_of(const Process& p) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), p)) return i;
  throw input_error("process not covered by the partition: " + p.to_string());
}

const Process& Partition::representative(const Process& p) const {
  return blocks[block_of(p)].front();
}

namespace {

Partition normalized(std::vector<std::vector<Process>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition{std::move(blocks)};
}

// Canonical value of the block-renamed continuation of `p`.
CanonicalValue signature(const Process& p, const std::map<std::string, std::string>& rename,
                         TheoryId th, const Carrier& carrier) {
  const Term renamed = rename_gens(tau(p), [&](const std::string& g) {
    const auto it = rename.find(g);
    if (it == rename.end()) throw internal_error("continuation target missing from partition");
    return it->second;
  });
  return interpret(renamed, th, carrier);
}

// Base-level comparison of canonical values (independent of ambient carrier).
std::strong_ordering cmp_value(const CanonicalValue& a, const CanonicalValue& b) {
  auto rank = [](const CanonicalValue& v) { return v.set ? (v.maybe ? 3 : 1) : (v.maybe ? 2 : 0); };
  if (auto c = rank(a) <=> rank(b); c != 0) return c;
  auto cmp_bases = [](const std::vector<Dist>& x, const std::vector<Dist>& y) {
    const std::size_t k = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < k; ++i)
      if (auto c = x[i] <=> y[i]; c != 0) return c;
    return x.size() <=> y.size();
  };
  if (a.set) return cmp_bases(a.set->base(), b.set->base());
  if (a.maybe) {
    if (a.maybe->is_star() && b.maybe->is_star()) return std::strong_ordering::equal;
    if (a.maybe->is_star()) return std::strong_ordering::less;
    if (b.maybe->is_star()) return std::strong_ordering::greater;
    return cmp_bases(a.maybe->set_value().base(), b.maybe->set_value().base());
  }
  return std::strong_ordering::equal;
}

struct ValueLess {
  bool operator()(const CanonicalValue& a, const CanonicalValue& b) const {
    return cmp_value(a, b) < 0;
  }
};

}  // namespace

namespace {

std::vector<Process> joint_reachable(const Process& p, const Process& q) {
  std::vector<Process> states = reachable(p);
  const std::vector<Process> more = reachable(q);
  states.insert(states.end(), more.begin(), more.end());
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return states;
}

}  // namespace

Partition behavioral_partition(const std::vector<Process>& states, TheoryId th) {
  Partition pi = normalized({states});
  for (;;) {
    // block names fixed for this round
    std::map<std::string, std::string> rename;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < pi.blocks.size(); ++i) {
      names.push_back("b" + std::to_string(i));
      for (const Process& s : pi.blocks[i]) rename[s.to_string()] = names.back();
    }
    const Carrier carrier = Carrier::names(names, false);

    std::map<CanonicalValue, std::vector<Process>, ValueLess> groups;
    for (const Process& s : states)
      groups[signature(s, rename, th, carrier)].push_back(s);
    std::vector<std::vector<Process>> blocks;
    blocks.reserve(groups.size());
    for (auto& [value, members] : groups) blocks.push_back(members);
    Partition next = normalized(std::move(blocks));
    if (next.blocks == pi.blocks) break;
    pi = std::move(next);
  }
  return pi;
}

EquivalenceResult behavioral_equivalent(const Process& p, const Process& q, TheoryId th) {
  Partition pi = behavioral_partition(joint_reachable(p, q), th);
  const bool equivalent = pi.block_of(p) == pi.block_of(q);
  return EquivalenceResult{equivalent, std::move(pi)};
}

// --- proof system --------------------------------------------------------

Partition proof_partition(const std::vector<Process>& in_states, TheoryId th) {
  std::vector<Process> states = in_states;
  std::stable_sort(states.begin(), states.end(),
                   [](const Process& a, const Process& b) { return a.depth() < b.depth(); });

  // classes grow bottom-up; generators of a continuation always sit in
  // strictly lower strata, so their classes are final when needed
  std::vector<std::vector<Process>> classes;
  std::vector<CanonicalValue> class_value;
  std::map<std::string, std::string> to_rep;

  const auto sig = [&](const Process& s) {
    const Term renamed = rename_gens(tau(s), [&](const std::string& g) {
      const auto it = to_rep.find(g);
      if (it == to_rep.end()) throw internal_error("stratification order broken");
      return it->second;
    });
    return interpret(renamed, th);
  };

  for (const Process& s : states) {
    const CanonicalValue v = sig(s);
    bool placed = false;
    for (std::size_t i = 0; i < classes.size() && !placed; ++i) {
      if (cmp_value(class_value[i], v) == 0) {
        // the first-processed member stays the internal representative; later
        // signatures must keep renaming generators consistently
        classes[i].push_back(s);
        to_rep[s.to_string()] = classes[i].front().to_string();
        placed = true;
      }
    }
    if (!placed) {
      classes.push_back({s});
      class_value.push_back(v);
      to_rep[s.to_string()] = s.to_string();
    }
  }

  return normalized(classes);
}

ProofResult prove(const Process& p, const Process& q, TheoryId th) {
  ProofResult out;
  out.partition = proof_partition(joint_reachable(p, q), th);
  out.proved = out.partition.block_of(p) == out.partition.block_of(q);

  // presentation values use the final partition's smallest-member naming
  const auto final_sig = [&](const Process& s) {
    const Term renamed = rename_gens(tau(s), [&](const std::string& g) {
      for (const auto& block : out.partition.blocks)
        for (const Process& m : block)
          if (m.to_string() == g) return block.front().to_string();
      throw internal_error("partition does not cover a continuation target");
    });
    return interpret(renamed, th);
  };

  if (out.proved) {
    for (const auto& block : out.partition.blocks) {
      if (block.size() < 2) continue;
      const CanonicalValue v = final_sig(block.front());
      for (std::size_t j = 1; j < block.size(); ++j)
        out.subgoals.push_back(ProofObligation{block.front(), block[j], v});
    }
    std::sort(out.subgoals.begin(), out.subgoals.end(), [](const auto& a, const auto& b) {
      return a.left < b.left || (a.left == b.left && a.right < b.right);
    });
    if (!replay_certificate(out, th)) throw internal_error("proof certificate failed to replay");
  } else {
    out.left_value = final_sig(p);
    out.right_value = final_sig(q);
  }
  return out;
}

bool replay_certificate(const ProofResult& cert, TheoryId th) {
  if (!cert.proved) return false;
  for (const ProofObligation& goal : cert.subgoals) {
    const auto rename = [&](const std::string& g) {
      // parse-free lookup: every generator of a continuation is reachable,
      // hence covered by the partition
      for (const auto& block : cert.partition.blocks)
        for (const Process& m : block)
          if (m.to_string() == g) return block.front().to_string();
      throw input_error("certificate does not cover generator '" + g + "'");
    };
    const CanonicalValue lhs = interpret(rename_gens(tau(goal.left), rename), th);
    const CanonicalValue rhs = interpret(rename_gens(tau(goal.right), rename), th);
    if (cmp_value(lhs, rhs) != 0) return false;
    if (cmp_value(lhs, goal.value) != 0) return false;
  }
  return true;
}

// --- bisimilarity metric --------------------------------------------------

BisimResult bisim_distance(const Process& p, const Process& q, TheoryId th) {
  if (th == TheoryId::CSBotBH)
    throw input_error("bisimilarity metrics exist only for cs-star and cs-bot");

  std::vector<Process> states = reachable(p);
  {
    const std::vector<Process> more = reachable(q);
    states.insert(states.end(), more.begin(), more.end());
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
  }
  const std::size_t n = states.size();

  std::vector<std::string> names;
  names.reserve(n);
  for (const Process& s : states) names.push_back(s.to_string());
  const Carrier carrier = Carrier::names(names, false);

  std::vector<ConvexSet> values;
  values.reserve(n);
  int max_depth = 0;
  for (const Process& s : states) {
    values.push_back(*interpret(tau(s), th, carrier).set);
    max_depth = std::max(max_depth, s.depth());
  }

  std::vector<Elem> metric_carrier;
  metric_carrier.reserve(n);
  for (const auto& nm : names) metric_carrier.push_back(Elem::gen(nm));
  std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n, Rational(0)));

  BisimResult out;
  for (int round = 0; round <= max_depth + 1; ++round) {
    const FinMetric d = FinMetric::pseudometric(metric_carrier, table);
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        next[i][j] = next[j][i] = hk_distance(values[i], values[j], d);
        if (next[i][j] < table[i][j])
          throw internal_error("bisimilarity iterates must be pointwise non-decreasing");
      }
    ++out.iterations;
    if (next == table) break;
    table = std::move(next);
    if (round == max_depth + 1)
      throw internal_error("bisimilarity metric failed to stabilize in depth rounds");
  }

  const FinMetric final_d = FinMetric::pseudometric(metric_carrier, table);
  const std::size_t ip = static_cast<std::size_t>(
      std::lower_bound(states.begin(), states.end(), p) - states.begin());
  const std::size_t iq = static_cast<std::size_t>(
      std::lower_bound(states.begin(), states.end(), q) - states.begin());
  out.distance = table[ip][iq];
  out.table = MetricTable{std::move(states), std::move(table)};
  (void)final_d;  // construction re-validates the pseudometric axioms
  return out;
}

}  // namespace csl
