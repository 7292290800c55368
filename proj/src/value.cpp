#include "csl/value.hpp"

#include <algorithm>
#include <cstdint>

#include "csl/errors.hpp"
#include "csl/linprog.hpp"

namespace csl {

// --- Elem --------------------------------------------------------------

Elem Elem::star() { return Elem(); }

Elem Elem::gen(std::string name) {
  Elem e;
  e.kind_ = Kind::Gen;
  e.name_ = std::move(name);
  return e;
}

Elem Elem::set(ConvexSet value) {
  Elem e;
  e.kind_ = Kind::Set;
  e.set_ = std::make_shared<const ConvexSet>(std::move(value));
  return e;
}

const std::string& Elem::name() const {
  if (kind_ != Kind::Gen) throw internal_error("Elem::name on non-generator");
  return name_;
}

const ConvexSet& Elem::set_value() const {
  if (kind_ != Kind::Set) throw internal_error("Elem::set_value on non-set");
  return *set_;
}

std::strong_ordering Elem::compare(const Elem& a, const Elem& b) {
  const auto rank = [](Kind k) { return k == Kind::Star ? 0 : k == Kind::Gen ? 1 : 2; };
  if (auto c = rank(a.kind_) <=> rank(b.kind_); c != 0) return c;
  switch (a.kind_) {
    case Kind::Star:
      return std::strong_ordering::equal;
    case Kind::Gen:
      return a.name_ <=> b.name_;
    case Kind::Set:
      return *a.set_ <=> *b.set_;
  }
  return std::strong_ordering::equal;
}

std::string Elem::to_string() const {
  switch (kind_) {
    case Kind::Star:
      return "star";
    case Kind::Gen:
      return name_;
    case Kind::Set:
      return set_->to_string();
  }
  return {};
}

// --- Carrier -------------------------------------------------------------

Carrier Carrier::of(std::vector<Elem> gens, bool with_star) {
  for (const Elem& e : gens)
    if (e.is_star()) throw input_error("the termination point is never a generator");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  Carrier c;
  c.gens_ = std::move(gens);
  c.has_star_ = with_star;
  return c;
}

Carrier Carrier::names(const std::vector<std::string>& gens, bool with_star) {
  std::vector<Elem> es;
  es.reserve(gens.size());
  for (const auto& g : gens) es.push_back(Elem::gen(g));
  return of(std::move(es), with_star);
}

bool Carrier::contains(const Elem& e) const {
  if (e.is_star()) return has_star_;
  return std::binary_search(gens_.begin(), gens_.end(), e);
}

Carrier Carrier::with_star() const {
  Carrier c = *this;
  c.has_star_ = true;
  return c;
}

Carrier Carrier::without_star() const {
  Carrier c = *this;
  c.has_star_ = false;
  return c;
}

Carrier Carrier::united(const Carrier& a, const Carrier& b) {
  std::vector<Elem> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return of(std::move(gens), a.has_star_ || b.has_star_);
}

// --- Dist ------------------------------------------------------------------

Dist Dist::dirac(Elem e) {
  Dist d;
  d.entries_.emplace_back(std::move(e), Rational(1));
  return d;
}

Dist Dist::make(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  for (auto& e : entries) {
    if (e.second < 0) throw input_error("negative probability weight");
    if (e.second == 0) continue;
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(std::move(e));
  }
  if (merged.empty()) throw input_error("distribution needs non-empty support");
  Rational total = 0;
  for (const auto& e : merged) total += e.second;
  if (total != 1) throw input_error("distribution weights must sum to exactly 1");
  Dist d;
  d.entries_ = std::move(merged);
  return d;
}

Dist Dist::mix(const std::vector<std::pair<Dist, Rational>>& parts) {
  std::vector<Entry> entries;
  for (const auto& [d, w] : parts) {
    if (w < 0) throw input_error("negative mixture weight");
    if (w == 0) continue;
    for (const auto& e : d.entries_) entries.emplace_back(e.first, w * e.second);
  }
  return make(std::move(entries));
}

Rational Dist::weight(const Elem& e) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                             [](const Entry& a, const Elem& b) { return a.first < b; });
  if (it != entries_.end() && it->first == e) return it->second;
  return Rational(0);
}

Rational Dist::star_weight() const {
  if (!entries_.empty() && entries_.front().first.is_star()) return entries_.front().second;
  return Rational(0);
}

Dist Dist::pushforward(const std::function<Elem(const Elem&)>& f) const {
  std::vector<Entry> entries;
  entries.reserve(entries_.size());
  for (const auto& [e, w] : entries_) entries.emplace_back(e.is_star() ? e : f(e), w);
  return make(std::move(entries));
}

std::string Dist::to_string() const {
  std::string out;
  for (const auto& [e, w] : entries_) {
    if (!out.empty()) out += " + ";
    out += rat_str(w) + " " + e.to_string();
  }
  return out;
}

std::strong_ordering operator<=>(const Dist& a, const Dist& b) {
  const std::size_t k = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (auto c = a.entries_[i].first <=> b.entries_[i].first; c != 0) return c;
    if (auto c = cmp(a.entries_[i].second, b.entries_[i].second); c != 0) return c;
  }
  return a.entries_.size() <=> b.entries_.size();
}

// --- base reduction ----------------------------------------------------

std::vector<Elem> support_union(const std::vector<Dist>& dists) {
  std::vector<Elem> axis;
  for (const Dist& d : dists)
    for (const auto& [e, w] : d.entries()) axis.push_back(e);
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  return axis;
}

std::vector<Rational> coords(const Dist& d, const std::vector<Elem>& axis) {
  std::vector<Rational> v(axis.size(), Rational(0));
  for (std::size_t i = 0; i < axis.size(); ++i) v[i] = d.weight(axis[i]);
  return v;
}

std::vector<Dist> unique_base(std::vector<Dist> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 1) return points;

  const std::vector<Elem> axis = support_union(points);
  if (axis.size() <= 2) {
    // all mass sits on at most two elements, so the points lie on a segment
    auto key = [&](const Dist& d) { return d.weight(axis[0]); };
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (key(points[i]) < key(points[lo])) lo = i;
      if (key(points[i]) > key(points[hi])) hi = i;
    }
    std::vector<Dist> base{points[lo]};
    if (hi != lo) base.push_back(points[hi]);
    std::sort(base.begin(), base.end());
    return base;
  }

  std::vector<std::vector<Rational>> vecs;
  vecs.reserve(points.size());
  for (const Dist& d : points) vecs.push_back(coords(d, axis));
  std::size_t i = 0;
  while (points.size() > 1 && i < points.size()) {
    std::vector<std::vector<Rational>> others;
    others.reserve(vecs.size() - 1);
    for (std::size_t j = 0; j < vecs.size(); ++j)
      if (j != i) others.push_back(vecs[j]);
    if (hull_membership(vecs[i], others).inside) {
      points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
      vecs.erase(vecs.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return points;
}

// --- ConvexSet -------------------------------------------------------------

namespace {
void check_support(const Carrier& carrier, const std::vector<Dist>& dists) {
  for (const Dist& d : dists)
    for (const auto& [e, w] : d.entries())
      if (!carrier.contains(e)) throw input_error("distribution support leaves the carrier");
}
}  // namespace

ConvexSet ConvexSet::cc(Carrier carrier, std::vector<Dist> dists) {
  if (dists.empty()) throw input_error("a convex set must be generated by at least one distribution");
  check_support(carrier, dists);
  ConvexSet s;
  s.carrier_ = std::move(carrier);
  s.base_ = unique_base(std::move(dists));
  return s;
}

ConvexSet ConvexSet::from_base_unchecked(Carrier carrier, std::vector<Dist> base) {
  if (base.empty()) throw input_error("a convex set must be generated by at least one distribution");
  check_support(carrier, base);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  ConvexSet s;
  s.carrier_ = std::move(carrier);
  s.base_ = std::move(base);
  return s;
}

ConvexSet ConvexSet::with_carrier(Carrier c) const {
  check_support(c, base_);
  ConvexSet s;
  s.carrier_ = std::move(c);
  s.base_ = base_;
  return s;
}

bool ConvexSet::is_canonical_base() const {
  if (base_.size() <= 1) return true;
  const std::vector<Elem> axis = support_union(base_);
  std::vector<std::vector<Rational>> vecs;
  for (const Dist& d : base_) vecs.push_back(coords(d, axis));
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    std::vector<std::vector<Rational>> others;
    for (std::size_t j = 0; j < vecs.size(); ++j)
      if (j != i) others.push_back(vecs[j]);
    if (hull_membership(vecs[i], others).inside) return false;
  }
  return true;
}

std::string ConvexSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (i) out += "; ";
    out += base_[i].to_string();
  }
  return out + "}";
}

std::strong_ordering operator<=>(const ConvexSet& a, const ConvexSet& b) {
  if (auto c = a.carrier_ <=> b.carrier_; c != 0) return c;
  const std::size_t k = std::min(a.base_.size(), b.base_.size());
  for (std::size_t i = 0; i < k; ++i)
    if (auto c = a.base_[i] <=> b.base_[i]; c != 0) return c;
  return a.base_.size() <=> b.base_.size();
}

// --- MaybeSet -----------------------------------------------------------

const ConvexSet& MaybeSet::set_value() const {
  if (!set_) throw internal_error("MaybeSet::set_value on star");
  return *set_;
}

std::string MaybeSet::to_string() const { return set_ ? set_->to_string() : "star"; }

std::strong_ordering operator<=>(const MaybeSet& a, const MaybeSet& b) {
  if (a.is_star() && b.is_star()) return std::strong_ordering::equal;
  if (a.is_star()) return std::strong_ordering::less;
  if (b.is_star()) return std::strong_ordering::greater;
  return a.set_value() <=> b.set_value();
}

// --- operations -----------------------------------------------------------

ConvexSet convex_union(const ConvexSet& a, const ConvexSet& b) {
  if (a.carrier() != b.carrier()) throw input_error("convex union carrier mismatch");
  std::vector<Dist> gens = a.base();
  gens.insert(gens.end(), b.base().begin(), b.base().end());
  return ConvexSet::cc(a.carrier(), std::move(gens));
}

std::vector<Dist> wms_combinations(const Dist& phi) {
  std::vector<const ConvexSet*> sets;
  std::vector<Rational> weights;
  for (const auto& [e, w] : phi.entries()) {
    if (!e.is_set()) throw input_error("weighted Minkowski sum needs a distribution over sets");
    sets.push_back(&e.set_value());
    weights.push_back(w);
  }
  const Carrier& carrier = sets.front()->carrier();
  for (const auto* s : sets)
    if (s->carrier() != carrier) throw input_error("weighted Minkowski sum carrier mismatch");

  std::vector<Dist> combos;
  std::vector<std::size_t> pick(sets.size(), 0);
  for (;;) {
    std::vector<std::pair<Dist, Rational>> parts;
    parts.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i)
      parts.emplace_back(sets[i]->base()[pick[i]], weights[i]);
    combos.push_back(Dist::mix(parts));
    std::size_t i = 0;
    while (i < sets.size()) {
      if (++pick[i] < sets[i]->base().size()) break;
      pick[i] = 0;
      ++i;
    }
    if (i == sets.size()) break;
  }
  return combos;
}

ConvexSet wms(const Dist& phi) {
  std::vector<Dist> combos = wms_combinations(phi);
  const Carrier carrier = phi.entries().front().first.set_value().carrier();
  return ConvexSet::cc(carrier, std::move(combos));
}

ConvexSet pplus_op(const ConvexSet& a, const ConvexSet& b, const Rational& p) {
  if (!is_probability(p)) throw input_error("probability must lie strictly between 0 and 1");
  if (a.carrier() != b.carrier()) throw input_error("convex combination carrier mismatch");
  return wms(Dist::make({{Elem::set(a), p}, {Elem::set(b), 1 - p}}));
}

MaybeSet gamma(const ConvexSet& s) {
  if (!s.carrier().has_star()) throw input_error("gamma needs a carrier with the termination point");
  std::vector<Dist> full;
  for (const Dist& d : s.base())
    if (d.star_weight() == 0) full.push_back(d);
  if (full.empty()) return MaybeSet::star();
  // a face of the unique base is itself a unique base
  return MaybeSet::set(ConvexSet::from_base_unchecked(s.carrier().without_star(), std::move(full)));
}

MaybeSet gamma_top(const ConvexSet& s) {
  if (!s.carrier().has_star()) throw input_error("gamma_top needs a carrier with the termination point");
  for (const Dist& d : s.base())
    if (d.star_weight() != 0) return MaybeSet::star();
  return MaybeSet::set(ConvexSet::from_base_unchecked(s.carrier().without_star(), s.base()));
}

ConvexSet xi(const ConvexSet& s) {
  if (!s.carrier().has_star()) throw input_error("xi needs a carrier with the termination point");
  std::vector<Dist> gens;
  for (const Dist& d : s.base()) {
    std::vector<Dist::Entry> on_x;
    for (const auto& [e, w] : d.entries())
      if (!e.is_star()) on_x.emplace_back(e, w);
    if (on_x.size() > 30) throw input_error("xi support too large");
    const std::uint64_t subsets = std::uint64_t{1} << on_x.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      std::vector<Dist::Entry> entries;
      Rational kept = 0;
      for (std::size_t i = 0; i < on_x.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) {
          entries.push_back(on_x[i]);
          kept += on_x[i].second;
        }
      }
      if (kept < 1) entries.emplace_back(Elem::star(), 1 - kept);
      gens.push_back(Dist::make(std::move(entries)));
    }
  }
  return ConvexSet::cc(s.carrier(), std::move(gens));
}

bool is_bot_closed(const ConvexSet& s) { return xi(s) == s; }

bool contains(const ConvexSet& s, const Dist& phi) {
  for (const auto& [e, w] : phi.entries())
    if (!s.carrier().contains(e)) throw input_error("membership query leaves the carrier");
  std::vector<Dist> all = s.base();
  all.push_back(phi);
  const std::vector<Elem> axis = support_union(all);
  std::vector<std::vector<Rational>> gens;
  for (const Dist& d : s.base()) gens.push_back(coords(d, axis));
  return hull_membership(coords(phi, axis), gens).inside;
}

bool subset_of(const ConvexSet& a, const ConvexSet& b) {
  if (a.carrier() != b.carrier()) throw input_error("subset carrier mismatch");
  for (const Dist& d : a.base())
    if (!contains(b, d)) return false;
  return true;
}

ConvexSet pushforward_set(const ConvexSet& s, const Carrier& target,
                          const std::function<Elem(const Elem&)>& f) {
  std::vector<Dist> pushed;
  pushed.reserve(s.base().size());
  for (const Dist& d : s.base()) pushed.push_back(d.pushforward(f));
  return ConvexSet::cc(target, std::move(pushed));
}

}  // namespace csl
