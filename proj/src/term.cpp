#include "csl/term.hpp"

#include <algorithm>
#include <cctype>

#include "csl/errors.hpp"

namespace csl {

std::string theory_name(TheoryId th) {
  switch (th) {
    case TheoryId::CSStar:
      return "cs-star";
    case TheoryId::CSBot:
      return "cs-bot";
    case TheoryId::CSBotBH:
      return "cs-bot-bh";
  }
  return {};
}

std::optional<TheoryId> theory_from_name(const std::string& name) {
  if (name == "cs-star") return TheoryId::CSStar;
  if (name == "cs-bot") return TheoryId::CSBot;
  if (name == "cs-bot-bh") return TheoryId::CSBotBH;
  return std::nullopt;
}

struct Term::Node {
  Kind kind = Kind::Star;
  std::string name;
  Rational prob;
  std::shared_ptr<const Node> left, right;
};

Term Term::gen(std::string name) {
  Term t;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gen;
  n->name = std::move(name);
  t.node_ = std::move(n);
  return t;
}

Term Term::star() {
  Term t;
  t.node_ = std::make_shared<Node>();
  return t;
}

Term Term::plus(Rational p, Term l, Term r) {
  if (!is_probability(p)) throw input_error("probability must lie strictly between 0 and 1");
  Term t;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Plus;
  n->prob = std::move(p);
  n->left = l.node_;
  n->right = r.node_;
  t.node_ = std::move(n);
  return t;
}

Term Term::oplus(Term l, Term r) {
  Term t;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Oplus;
  n->left = l.node_;
  n->right = r.node_;
  t.node_ = std::move(n);
  return t;
}

Term::Kind Term::kind() const { return node_->kind; }

const std::string& Term::gen_name() const {
  if (node_->kind != Kind::Gen) throw internal_error("Term::gen_name on non-generator");
  return node_->name;
}

const Rational& Term::prob() const {
  if (node_->kind != Kind::Plus) throw internal_error("Term::prob on non-mixture");
  return node_->prob;
}

Term Term::left() const {
  if (!node_->left) throw internal_error("Term::left on leaf");
  Term t;
  t.node_ = node_->left;
  return t;
}

Term Term::right() const {
  if (!node_->right) throw internal_error("Term::right on leaf");
  Term t;
  t.node_ = node_->right;
  return t;
}

std::vector<std::string> Term::generators() const {
  std::vector<std::string> out;
  const std::function<void(const Node*)> walk = [&](const Node* n) {
    switch (n->kind) {
      case Kind::Gen:
        out.push_back(n->name);
        break;
      case Kind::Star:
        break;
      default:
        walk(n->left.get());
        walk(n->right.get());
    }
  };
  walk(node_.get());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Term::to_string() const {
  switch (node_->kind) {
    case Kind::Gen:
      return node_->name;
    case Kind::Star:
      return "star";
    case Kind::Oplus:
      return "(oplus " + left().to_string() + " " + right().to_string() + ")";
    case Kind::Plus:
      // the syntax weight is the right operand's weight
      return "(pplus " + rat_str(1 - node_->prob) + " " + left().to_string() + " " +
             right().to_string() + ")";
  }
  return {};
}

std::strong_ordering Term::compare(const Term& a, const Term& b) {
  const auto rank = [](Kind k) {
    switch (k) {
      case Kind::Star:
        return 0;
      case Kind::Gen:
        return 1;
      case Kind::Plus:
        return 2;
      case Kind::Oplus:
        return 3;
    }
    return 4;
  };
  if (auto c = rank(a.node_->kind) <=> rank(b.node_->kind); c != 0) return c;
  switch (a.node_->kind) {
    case Kind::Star:
      return std::strong_ordering::equal;
    case Kind::Gen:
      return a.node_->name <=> b.node_->name;
    case Kind::Plus:
      if (auto c = cmp(a.node_->prob, b.node_->prob); c != 0) return c;
      [[fallthrough]];
    case Kind::Oplus: {
      if (auto c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
    }
  }
  return std::strong_ordering::equal;
}

// --- parser ------------------------------------------------------------

namespace {

struct TermParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

  std::string atom() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) fail("expected a token");
    return text.substr(start, pos - start);
  }

  static bool is_ident(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char ch : s)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return s != "star";
  }

  Term parse() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      ++pos;
      const std::string head = atom();
      Term out = Term::star();
      if (head == "oplus") {
        Term l = parse();
        Term r = parse();
        out = Term::oplus(std::move(l), std::move(r));
      } else if (head == "pplus") {
        const std::size_t at = pos;
        Rational q;
        try {
          q = parse_rational(atom());
        } catch (const input_error& e) {
          pos = at;
          fail(e.what());
        }
        if (!is_probability(q)) {
          pos = at;
          fail("probability not in the open interval (0,1)");
        }
        Term l = parse();
        Term r = parse();
        out = Term::plus(1 - q, std::move(l), std::move(r));
      } else {
        fail("expected 'oplus' or 'pplus'");
      }
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return out;
    }
    const std::string tok = atom();
    if (tok == "star") return Term::star();
    if (!is_ident(tok)) fail("not an identifier: '" + tok + "'");
    return Term::gen(tok);
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  TermParser p{text};
  Term t = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after term");
  return t;
}

Term rename_gens(const Term& t, const std::function<std::string(const std::string&)>& f) {
  switch (t.kind()) {
    case Term::Kind::Star:
      return t;
    case Term::Kind::Gen: {
      std::string image = f(t.gen_name());
      if (image == "star") throw input_error("generator renamed onto the termination point");
      return Term::gen(std::move(image));
    }
    case Term::Kind::Oplus:
      return Term::oplus(rename_gens(t.left(), f), rename_gens(t.right(), f));
    case Term::Kind::Plus:
      return Term::plus(t.prob(), rename_gens(t.left(), f), rename_gens(t.right(), f));
  }
  throw internal_error("unreachable term kind");
}

// --- interpretation ------------------------------------------------------

ConvexSet interpret_star(const Term& t, const Carrier& gens) {
  const Carrier c = gens.with_star();
  switch (t.kind()) {
    case Term::Kind::Star:
      return ConvexSet::cc(c, {Dist::dirac(Elem::star())});
    case Term::Kind::Gen: {
      const Elem e = Elem::gen(t.gen_name());
      if (!c.contains(e)) throw input_error("generator '" + t.gen_name() + "' not in the carrier");
      return ConvexSet::cc(c, {Dist::dirac(e)});
    }
    case Term::Kind::Oplus:
      return convex_union(interpret_star(t.left(), gens), interpret_star(t.right(), gens));
    case Term::Kind::Plus:
      return pplus_op(interpret_star(t.left(), gens), interpret_star(t.right(), gens), t.prob());
  }
  throw internal_error("unreachable term kind");
}

CanonicalValue interpret(const Term& t, TheoryId th, const std::optional<Carrier>& gens) {
  const Carrier carrier = gens ? *gens : Carrier::names(t.generators(), false);
  const ConvexSet star_value = interpret_star(t, carrier);
  CanonicalValue v;
  v.theory = th;
  switch (th) {
    case TheoryId::CSStar:
      v.set = star_value;
      break;
    case TheoryId::CSBot:
      v.set = xi(star_value);
      break;
    case TheoryId::CSBotBH:
      v.maybe = gamma(star_value);
      break;
  }
  return v;
}

std::string CanonicalValue::to_string() const {
  if (set) return set->to_string();
  if (maybe) return maybe->to_string();
  return "?";
}

bool theory_equal(const Term& a, const Term& b, TheoryId th) {
  std::vector<std::string> names = a.generators();
  const std::vector<std::string> more = b.generators();
  names.insert(names.end(), more.begin(), more.end());
  const Carrier carrier = Carrier::names(names, false);
  return interpret(a, th, carrier) == interpret(b, th, carrier);
}

// --- kappa and fold helpers ---------------------------------------------

Term oplus_fold(const std::vector<Term>& ts) {
  if (ts.empty()) throw input_error("empty nondeterministic fold");
  Term acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = Term::oplus(acc, ts[i]);
  return acc;
}

Term pplus_fold(const std::vector<std::pair<Rational, Term>>& weighted) {
  if (weighted.empty()) throw input_error("empty convex fold");
  Rational total = 0;
  for (const auto& [p, t] : weighted) {
    if (p <= 0) throw input_error("convex fold weights must be positive");
    total += p;
  }
  if (total != 1) throw input_error("convex fold weights must sum to 1");
  Term acc = weighted.front().second;
  Rational cum = weighted.front().first;
  for (std::size_t i = 1; i < weighted.size(); ++i) {
    const auto& [p, t] = weighted[i];
    acc = Term::plus(cum / (cum + p), acc, t);
    cum += p;
  }
  return acc;
}

Term term_of_dist(const Dist& d) {
  std::vector<std::pair<Rational, Term>> parts;
  for (const auto& [e, w] : d.entries()) {
    if (e.is_set()) throw input_error("kappa needs a carrier of names");
    parts.emplace_back(w, e.is_star() ? Term::star() : Term::gen(e.name()));
  }
  return pplus_fold(parts);
}

Term kappa(const ConvexSet& s) {
  std::vector<Term> parts;
  parts.reserve(s.base().size());
  for (const Dist& d : s.base()) parts.push_back(term_of_dist(d));
  return oplus_fold(parts);
}

}  // namespace csl
