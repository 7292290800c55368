#include "csl/monads.hpp"

#include <algorithm>
#include <map>

#include "csl/errors.hpp"
#include "csl/gen.hpp"

namespace csl {

std::string monad_name(MonadId m) {
  switch (m) {
    case MonadId::Cp1:
      return "cp1";
    case MonadId::Cplus1:
      return "cplus1";
    case MonadId::Cdown:
      return "cdown";
  }
  return {};
}

namespace {

// Common carrier of the nested sets appearing as generators.
Carrier inner_carrier(const ConvexSet& s) {
  const Carrier* found = nullptr;
  for (const Elem& g : s.carrier().gens()) {
    if (!g.is_set()) throw input_error("nested multiplication needs set-valued generators");
    if (!found)
      found = &g.set_value().carrier();
    else if (g.set_value().carrier() != *found)
      throw input_error("nested multiplication carrier mismatch");
  }
  if (!found) throw input_error("nested multiplication needs at least one set generator");
  return *found;
}

// Φ⋆: folds outer-⋆ mass onto the Dirac set {δ⋆} of the inner carrier.
Dist fold_star(const Dist& phi, const Carrier& ic) {
  std::vector<Dist::Entry> entries;
  for (const auto& [e, w] : phi.entries()) {
    if (e.is_star())
      entries.emplace_back(Elem::set(ConvexSet::cc(ic, {Dist::dirac(Elem::star())})), w);
    else
      entries.emplace_back(e, w);
  }
  return Dist::make(std::move(entries));
}

ConvexSet mult_cp1_impl(const ConvexSet& s, bool reduce) {
  if (!s.carrier().has_star())
    throw input_error("C(+1) multiplication needs a carrier with the termination point");
  const Carrier ic = inner_carrier(s);
  if (!ic.has_star())
    throw input_error("C(+1) multiplication needs inner sets over a carrier with ⋆");
  std::vector<Dist> pool;
  for (const Dist& phi : s.base()) {
    std::vector<Dist> combos = wms_combinations(fold_star(phi, ic));
    pool.insert(pool.end(), combos.begin(), combos.end());
  }
  return reduce ? ConvexSet::cc(ic, std::move(pool))
                : ConvexSet::from_base_unchecked(ic, std::move(pool));
}

}  // namespace

ConvexSet unit_cp1(const Carrier& gens, const Elem& x) {
  if (x.is_star()) throw input_error("the termination point has no unit");
  const Carrier c = gens.with_star();
  if (!c.contains(x)) throw input_error("unit element not in the carrier");
  return ConvexSet::cc(c, {Dist::dirac(x)});
}

MaybeSet unit_cplus1(const Carrier& gens, const Elem& x) {
  if (x.is_star()) throw input_error("the termination point has no unit");
  const Carrier c = gens.without_star();
  if (!c.contains(x)) throw input_error("unit element not in the carrier");
  return MaybeSet::set(ConvexSet::cc(c, {Dist::dirac(x)}));
}

ConvexSet unit_cdown(const Carrier& gens, const Elem& x) { return xi(unit_cp1(gens, x)); }

ConvexSet mult_c(const ConvexSet& s) {
  if (s.carrier().has_star())
    throw input_error("plain C multiplication is for carriers without the termination point");
  std::vector<Dist> pool;
  for (const Dist& phi : s.base()) {
    std::vector<Dist> combos = wms_combinations(phi);
    pool.insert(pool.end(), combos.begin(), combos.end());
  }
  const Carrier ic = inner_carrier(s);
  return ConvexSet::cc(ic, std::move(pool));
}

ConvexSet mult_cp1(const ConvexSet& s) { return mult_cp1_impl(s, true); }

MaybeSet mult_cplus1(const MaybeSet& v) {
  if (v.is_star()) return MaybeSet::star();
  const ConvexSet& s = v.set_value();
  const MaybeSet face = gamma(s);
  if (face.is_star()) return MaybeSet::star();
  return MaybeSet::set(mult_c(face.set_value()));
}

ConvexSet mult_cdown(const ConvexSet& s) {
  if (!is_bot_closed(s)) throw input_error("C↓ multiplication needs a ⊥-closed outer set");
  for (const Elem& g : s.carrier().gens())
    if (!g.is_set() || !is_bot_closed(g.set_value()))
      throw input_error("C↓ multiplication needs ⊥-closed inner sets");
  ConvexSet out = mult_cp1(s);
  if (!is_bot_closed(out)) throw internal_error("C↓ multiplication broke ⊥-closedness");
  return out;
}

ConvexSet iota(const MaybeSet& v, const Carrier& gens) {
  const Carrier c = gens.with_star();
  if (v.is_star()) return ConvexSet::cc(c, {Dist::dirac(Elem::star())});
  return v.set_value().with_carrier(c);
}

namespace {
ElemFn forbid_star(const ElemFn& f) {
  return [f](const Elem& e) {
    Elem img = f(e);
    if (img.is_star()) throw input_error("functor action must not hit the termination point");
    return img;
  };
}
}  // namespace

ConvexSet fmap_cp1(const ConvexSet& s, const Carrier& target_gens, const ElemFn& f) {
  return pushforward_set(s, target_gens.with_star(), forbid_star(f));
}

MaybeSet fmap_cplus1(const MaybeSet& v, const Carrier& target_gens, const ElemFn& f) {
  if (v.is_star()) return MaybeSet::star();
  return MaybeSet::set(pushforward_set(v.set_value(), target_gens.without_star(), forbid_star(f)));
}

ConvexSet fmap_cdown(const ConvexSet& s, const Carrier& target_gens, const ElemFn& f) {
  ConvexSet out = pushforward_set(s, target_gens.with_star(), forbid_star(f));
  if (!is_bot_closed(out)) throw internal_error("C↓ functor action broke ⊥-closedness");
  return out;
}

// --- law checking ------------------------------------------------------

namespace {

struct Harness {
  LawReport unit_left = LawReport("unit-left");
  LawReport unit_right = LawReport("unit-right");
  LawReport assoc = LawReport("associativity");

  void record(LawReport& r, bool ok, const std::string& what) {
    ++r.samples;
    if (!ok) r.failures.push_back(what);
  }
};

std::string brief(const std::string& s) { return s.size() > 160 ? s.substr(0, 160) + "…" : s; }

// ----- C(+1) ----------------------------------------------------------------

void laws_cp1(const SampleConfig& cfg, Mutation mut, Harness& h) {
  Rng rng(cfg.seed);
  const auto mult = [&](const ConvexSet& s) {
    return mult_cp1_impl(s, mut != Mutation::SkipReduction);
  };
  for (int i = 0; i < cfg.samples; ++i) {
    const Carrier ground = random_ground(rng, cfg.carrier_size);
    const ConvexSet v = random_cp1(rng, ground, cfg.base_size, cfg.denom_bound);

    // μ ∘ η_{M X} = id
    const Carrier outer_c = Carrier::of({Elem::set(v)}, true);
    const ConvexSet eta_v = ConvexSet::cc(outer_c, {Dist::dirac(Elem::set(v))});
    const ConvexSet left = mult(eta_v);
    h.record(h.unit_left, left == v && left.is_canonical_base(), brief(v.to_string()));

    // μ ∘ M(η) = id
    std::vector<Elem> images;
    for (const Elem& x : ground.gens()) images.push_back(Elem::set(unit_cp1(ground, x)));
    const Carrier target = Carrier::of(images, false);
    const ConvexSet mapped = fmap_cp1(
        v, target, [&](const Elem& x) { return Elem::set(unit_cp1(ground, x)); });
    const ConvexSet right = mult(mapped);
    h.record(h.unit_right, right == v && right.is_canonical_base(), brief(v.to_string()));

    // μ ∘ M(μ) = μ ∘ μ_{M X}
    const ConvexSet w = random_cp1_cube(rng, ground, cfg.base_size, cfg.denom_bound);
    std::vector<Elem> mimages;
    for (const Elem& g : w.carrier().gens()) mimages.push_back(Elem::set(mult(g.set_value())));
    const Carrier mtarget = Carrier::of(mimages, false);
    const ConvexSet lhs = mult(
        pushforward_set(w, mtarget.with_star(),
                        [&](const Elem& g) { return Elem::set(mult(g.set_value())); }));
    const ConvexSet inner_mult = mult(w);
    const ConvexSet rhs = mult(inner_mult);
    const bool ok = lhs == rhs && lhs.is_canonical_base() && inner_mult.is_canonical_base();
    h.record(h.assoc, ok, brief(w.to_string()));
  }
}

// ----- C+1 --------------------------------------------------------------

void laws_cplus1(const SampleConfig& cfg, Harness& h) {
  Rng rng(cfg.seed);
  const auto canonical = [](const MaybeSet& m) {
    return m.is_star() || m.set_value().is_canonical_base();
  };
  for (int i = 0; i < cfg.samples; ++i) {
    const Carrier ground = random_ground(rng, cfg.carrier_size);
    const MaybeSet v = random_cplus1(rng, ground, cfg.base_size, cfg.denom_bound);

    // μ ∘ η_{T X} = id
    std::vector<Elem> gens;
    if (!v.is_star()) gens.push_back(Elem::set(v.set_value()));
    const Carrier outer_c = Carrier::of(std::move(gens), true);
    const Elem enc = v.is_star() ? Elem::star() : Elem::set(v.set_value());
    const MaybeSet eta_v = MaybeSet::set(ConvexSet::cc(outer_c, {Dist::dirac(enc)}));
    const MaybeSet left = mult_cplus1(eta_v);
    h.record(h.unit_left, left == v && canonical(left), brief(v.to_string()));

    // μ ∘ T(η) = id
    MaybeSet mapped = MaybeSet::star();
    if (!v.is_star()) {
      std::vector<Elem> images;
      for (const Elem& x : ground.gens())
        images.push_back(Elem::set(ConvexSet::cc(ground, {Dist::dirac(x)})));
      const Carrier target = Carrier::of(images, true);
      mapped = MaybeSet::set(pushforward_set(v.set_value(), target, [&](const Elem& x) {
        return Elem::set(ConvexSet::cc(ground, {Dist::dirac(x)}));
      }));
    }
    const MaybeSet right = mult_cplus1(mapped);
    h.record(h.unit_right, right == v && canonical(right), brief(v.to_string()));

    // μ ∘ T(μ) = μ ∘ μ_{T X}
    const MaybeSet w = random_cplus1_cube(rng, ground, cfg.base_size, cfg.denom_bound);
    MaybeSet lhs = MaybeSet::star();
    if (!w.is_star()) {
      std::vector<Elem> images;
      for (const Elem& g : w.set_value().carrier().gens()) {
        const MaybeSet m = mult_cplus1(MaybeSet::set(g.set_value()));
        if (!m.is_star()) images.push_back(Elem::set(m.set_value()));
      }
      const Carrier target = Carrier::of(images, true);
      lhs = mult_cplus1(MaybeSet::set(
          pushforward_set(w.set_value(), target, [&](const Elem& g) {
            const MaybeSet m = mult_cplus1(MaybeSet::set(g.set_value()));
            return m.is_star() ? Elem::star() : Elem::set(m.set_value());
          })));
    }
    const MaybeSet inner_mult = mult_cplus1(w);
    const MaybeSet rhs = mult_cplus1(inner_mult);
    h.record(h.assoc, lhs == rhs && canonical(lhs), brief(w.to_string()));
  }
}

// ----- C↓ ---------------------------------------------------------------

void laws_cdown(const SampleConfig& cfg, Harness& h) {
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.samples; ++i) {
    const Carrier ground = random_ground(rng, cfg.carrier_size);
    const ConvexSet v = random_cdown(rng, ground, cfg.base_size, cfg.denom_bound);

    // μ ∘ η↓_{M X} = id
    const Carrier outer_c = Carrier::of({Elem::set(v)}, true);
    const ConvexSet eta_v = xi(ConvexSet::cc(outer_c, {Dist::dirac(Elem::set(v))}));
    const ConvexSet left = mult_cdown(eta_v);
    h.record(h.unit_left, left == v && left.is_canonical_base(), brief(v.to_string()));

    // μ ∘ M(η↓) = id
    std::vector<Elem> images;
    for (const Elem& x : ground.gens()) images.push_back(Elem::set(unit_cdown(ground, x)));
    const Carrier target = Carrier::of(images, true);
    const ConvexSet mapped = pushforward_set(
        v, target, [&](const Elem& x) { return Elem::set(unit_cdown(ground, x)); });
    const ConvexSet right = mult_cdown(mapped);
    h.record(h.unit_right, right == v && right.is_canonical_base(), brief(v.to_string()));

    // μ ∘ M(μ) = μ ∘ μ_{M X}
    const ConvexSet w = random_cdown_cube(rng, ground, cfg.base_size, cfg.denom_bound);
    std::vector<Elem> mimages;
    for (const Elem& g : w.carrier().gens())
      mimages.push_back(Elem::set(mult_cdown(g.set_value())));
    const Carrier mtarget = Carrier::of(mimages, true);
    const ConvexSet lhs = mult_cdown(
        pushforward_set(w, mtarget, [&](const Elem& g) { return Elem::set(mult_cdown(g.set_value())); }));
    const ConvexSet rhs = mult_cdown(mult_cdown(w));
    h.record(h.assoc, lhs == rhs && lhs.is_canonical_base(), brief(w.to_string()));
  }
}

}  // namespace

std::vector<LawReport> check_monad_laws(MonadId m, const SampleConfig& cfg, Mutation mut) {
  Harness h;
  switch (m) {
    case MonadId::Cp1:
      laws_cp1(cfg, mut, h);
      break;
    case MonadId::Cplus1:
      laws_cplus1(cfg, h);
      break;
    case MonadId::Cdown:
      laws_cdown(cfg, h);
      break;
  }
  return {h.unit_left, h.unit_right, h.assoc};
}

// --- distributive-law diagrams ----------------------------------------------

namespace {

using GammaFn = std::function<MaybeSet(const ConvexSet&)>;

const char* kInnerStar = "#star";

std::vector<LawReport> check_distributive_generic(const GammaFn& g, const SampleConfig& cfg) {
  LawReport over_unit("unit-of-termination");
  LawReport under_unit("unit-of-sets");
  LawReport mult_sets("multiplication-of-sets");
  LawReport mult_term("multiplication-of-termination");
  LawReport natural("naturality");
  Rng rng(cfg.seed);

  for (int i = 0; i < cfg.samples; ++i) {
    const Carrier ground = random_ground(rng, cfg.carrier_size);

    {  // λ ∘ M(η̂) = η̂ M on a plain set embedded as all-full
      const ConvexSet s = random_convex_set(rng, ground, cfg.base_size, cfg.denom_bound);
      const MaybeSet out = g(s.with_carrier(ground.with_star()));
      const bool ok = !out.is_star() && out.set_value() == s;
      ++over_unit.samples;
      if (!ok) over_unit.failures.push_back(brief(s.to_string()));
    }

    {  // λ ∘ η M̂ = M̂ η on a point of X+1
      const bool star_case = rng.below(4) == 0;
      const Elem w = star_case ? Elem::star() : ground.gens()[rng.below(static_cast<long>(ground.gens().size()))];
      const MaybeSet out = g(ConvexSet::cc(ground.with_star(), {Dist::dirac(w)}));
      bool ok;
      if (star_case)
        ok = out.is_star();
      else
        ok = !out.is_star() &&
             out.set_value() == ConvexSet::cc(ground, {Dist::dirac(w)});
      ++under_unit.samples;
      if (!ok) under_unit.failures.push_back(w.to_string());
    }

    {  // λ ∘ μ M̂ = M̂ μ ∘ λ M ∘ M λ on C(C(X+1))
      std::vector<Elem> inner;
      const int k = static_cast<int>(rng.range(1, 2));
      for (int j = 0; j < k; ++j)
        inner.push_back(Elem::set(random_cp1(rng, ground, cfg.base_size, cfg.denom_bound)));
      const Carrier oc = Carrier::of(std::move(inner), false);
      const ConvexSet s = random_convex_set(rng, oc, cfg.base_size, cfg.denom_bound);

      const MaybeSet lhs = g(mult_c(s));

      std::vector<Elem> images;
      for (const Elem& t : oc.gens()) {
        const MaybeSet m = g(t.set_value());
        if (!m.is_star()) images.push_back(Elem::set(m.set_value()));
      }
      const Carrier target = Carrier::of(images, true);
      const ConvexSet pushed = pushforward_set(s, target, [&](const Elem& t) {
        const MaybeSet m = g(t.set_value());
        return m.is_star() ? Elem::star() : Elem::set(m.set_value());
      });
      const MaybeSet outer = g(pushed);
      const MaybeSet rhs = outer.is_star() ? MaybeSet::star() : MaybeSet::set(mult_c(outer.set_value()));
      ++mult_sets.samples;
      if (!(lhs == rhs)) mult_sets.failures.push_back(brief(s.to_string()));
    }

    {  // λ ∘ M(μ̂) = μ̂ M ∘ λ M̂ ∘ M̂... on C((X+1)+1), inner ⋆ spelled as a marker
      std::vector<Elem> gens2 = ground.gens();
      gens2.push_back(Elem::gen(kInnerStar));
      const Carrier two = Carrier::of(std::move(gens2), true);
      const ConvexSet s = random_convex_set(rng, two, cfg.base_size, cfg.denom_bound);

      const auto squash = [&](const Elem& e) {
        return e.is_gen() && e.name() == kInnerStar ? Elem::star() : e;
      };
      const MaybeSet lhs = g(pushforward_set(s, ground.with_star(), squash));

      const MaybeSet first = g(s);
      MaybeSet rhs = MaybeSet::star();
      if (!first.is_star())
        rhs = g(pushforward_set(first.set_value(), ground.with_star(), squash));
      ++mult_term.samples;
      if (!(lhs == rhs)) mult_term.failures.push_back(brief(s.to_string()));
    }

    {  // (M(f)+1) ∘ λ = λ ∘ M(f+1)
      const Carrier target = random_ground(rng, cfg.carrier_size);
      std::map<std::string, Elem> table;
      for (const Elem& x : ground.gens())
        table.emplace(x.name(), target.gens()[rng.below(static_cast<long>(target.gens().size()))]);
      const auto f = [&table](const Elem& x) { return table.at(x.name()); };
      const ConvexSet s = random_cp1(rng, ground, cfg.base_size, cfg.denom_bound);
      const MaybeSet lg = g(s);
      const MaybeSet lhs =
          lg.is_star() ? MaybeSet::star() : MaybeSet::set(pushforward_set(lg.set_value(), target, f));
      const MaybeSet rhs = g(pushforward_set(s, target.with_star(), f));
      ++natural.samples;
      if (!(lhs == rhs)) natural.failures.push_back(brief(s.to_string()));
    }
  }
  return {over_unit, under_unit, mult_sets, mult_term, natural};
}

}  // namespace

std::vector<LawReport> check_distributive_law(const SampleConfig& cfg) {
  return check_distributive_generic([](const ConvexSet& s) { return gamma(s); }, cfg);
}

std::vector<LawReport> check_gamma_top_diagrams(const SampleConfig& cfg) {
  return check_distributive_generic([](const ConvexSet& s) { return gamma_top(s); }, cfg);
}

// --- monad-map squares --------------------------------------------------

std::vector<LawReport> check_monad_map(MonadMapId which, const SampleConfig& cfg) {
  LawReport unit("unit-preservation");
  LawReport square("multiplication-square");
  Rng rng(cfg.seed);

  for (int i = 0; i < cfg.samples; ++i) {
    const Carrier ground = random_ground(rng, cfg.carrier_size);
    {  // σ ∘ η = η̂
      const Elem x = ground.gens()[rng.below(static_cast<long>(ground.gens().size()))];
      bool ok;
      if (which == MonadMapId::Gamma)
        ok = gamma(unit_cp1(ground, x)) == unit_cplus1(ground, x);
      else
        ok = xi(unit_cp1(ground, x)) == unit_cdown(ground, x);
      ++unit.samples;
      if (!ok) unit.failures.push_back(x.to_string());
    }

    const ConvexSet v = random_cp1_sq(rng, ground, cfg.base_size, cfg.denom_bound);
    bool ok = false;
    if (which == MonadMapId::Gamma) {
      const MaybeSet lhs = gamma(mult_cp1(v));

      std::vector<Elem> images{Elem::gen(kInnerStar)};
      for (const Elem& t : v.carrier().gens()) {
        const MaybeSet m = gamma(t.set_value());
        if (!m.is_star()) images.push_back(Elem::set(m.set_value()));
      }
      const Carrier target = Carrier::of(images, true);
      const ConvexSet pushed = pushforward_set(v, target, [&](const Elem& t) {
        const MaybeSet m = gamma(t.set_value());
        return m.is_star() ? Elem::gen(kInnerStar) : Elem::set(m.set_value());
      });
      const MaybeSet outer = gamma(pushed);
      MaybeSet rhs = MaybeSet::star();
      if (!outer.is_star()) {
        std::vector<Elem> setgens;
        for (const Elem& e : target.gens())
          if (e.is_set()) setgens.push_back(e);
        const Carrier relabelled = Carrier::of(setgens, true);
        const ConvexSet fixed =
            pushforward_set(outer.set_value(), relabelled, [&](const Elem& e) {
              return e.is_gen() && e.name() == kInnerStar ? Elem::star() : e;
            });
        rhs = mult_cplus1(MaybeSet::set(fixed));
      }
      ok = lhs == rhs;
    } else {
      const ConvexSet lhs = xi(mult_cp1(v));

      std::vector<Elem> images;
      for (const Elem& t : v.carrier().gens()) images.push_back(Elem::set(xi(t.set_value())));
      const Carrier target = Carrier::of(images, true);
      const ConvexSet pushed = xi(pushforward_set(
          v, target, [&](const Elem& t) { return Elem::set(xi(t.set_value())); }));
      const ConvexSet rhs = mult_cdown(pushed);
      ok = lhs == rhs;
    }
    ++square.samples;
    if (!ok) square.failures.push_back(brief(v.to_string()));
  }
  return {unit, square};
}

}  // namespace csl
