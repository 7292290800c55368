#include "csl/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "csl/errors.hpp"
#include "csl/linprog.hpp"

namespace csl {

namespace {

void validate_table(const std::vector<Elem>& carrier, const std::vector<std::vector<Rational>>& d,
                    bool strict) {
  const std::size_t n = carrier.size();
  if (d.size() != n) throw input_error("metric table size does not match the carrier");
  for (const auto& row : d)
    if (row.size() != n) throw input_error("metric table is not square");
  auto name = [&](std::size_t i) { return carrier[i].to_string(); };
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0)
      throw input_error("metric axiom violated: d(x,x)=0 fails at (" + name(i) + ")");
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < 0 || d[i][j] > 1)
        throw input_error("metric axiom violated: range [0,1] fails at (" + name(i) + ", " +
                          name(j) + ")");
      if (d[i][j] != d[j][i])
        throw input_error("metric axiom violated: symmetry fails at (" + name(i) + ", " + name(j) +
                          ")");
      if (strict && i != j && d[i][j] == 0)
        throw input_error("metric axiom violated: identity of indiscernibles fails at (" +
                          name(i) + ", " + name(j) + ")");
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][j] > d[i][k] + d[k][j])
          throw input_error("metric axiom violated: triangle inequality fails at (" + name(i) +
                            ", " + name(j) + ", " + name(k) + ")");
    }
  }
}

std::vector<std::size_t> sort_permutation(const std::vector<Elem>& carrier) {
  std::vector<std::size_t> perm(carrier.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return carrier[a] < carrier[b]; });
  return perm;
}

}  // namespace

FinMetric FinMetric::discrete(std::vector<Elem> carrier) {
  std::sort(carrier.begin(), carrier.end());
  carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
  const std::size_t n = carrier.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  FinMetric m;
  m.carrier_ = std::move(carrier);
  m.d_ = std::move(d);
  m.strict_ = true;
  return m;
}

FinMetric FinMetric::metric(std::vector<Elem> carrier, std::vector<std::vector<Rational>> table) {
  validate_table(carrier, table, true);
  const auto perm = sort_permutation(carrier);
  FinMetric m;
  m.carrier_.reserve(carrier.size());
  for (std::size_t i : perm) m.carrier_.push_back(carrier[i]);
  for (std::size_t i = 1; i < m.carrier_.size(); ++i)
    if (m.carrier_[i - 1] == m.carrier_[i]) throw input_error("metric carrier has duplicates");
  m.d_.assign(carrier.size(), std::vector<Rational>(carrier.size(), Rational(0)));
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t j = 0; j < carrier.size(); ++j) m.d_[i][j] = table[perm[i]][perm[j]];
  m.strict_ = true;
  return m;
}

FinMetric FinMetric::pseudometric(std::vector<Elem> carrier,
                                  std::vector<std::vector<Rational>> table) {
  validate_table(carrier, table, false);
  const auto perm = sort_permutation(carrier);
  FinMetric m;
  for (std::size_t i : perm) m.carrier_.push_back(carrier[i]);
  for (std::size_t i = 1; i < m.carrier_.size(); ++i)
    if (m.carrier_[i - 1] == m.carrier_[i]) throw input_error("metric carrier has duplicates");
  m.d_.assign(carrier.size(), std::vector<Rational>(carrier.size(), Rational(0)));
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t j = 0; j < carrier.size(); ++j) m.d_[i][j] = table[perm[i]][perm[j]];
  m.strict_ = false;
  return m;
}

std::size_t FinMetric::index_of(const Elem& e) const {
  const auto it = std::lower_bound(carrier_.begin(), carrier_.end(), e);
  if (it == carrier_.end() || !(*it == e))
    throw input_error("element outside the metric carrier: " + e.to_string());
  return static_cast<std::size_t>(it - carrier_.begin());
}

const Rational& FinMetric::dist(const Elem& a, const Elem& b) const {
  return d_[index_of(a)][index_of(b)];
}

FinMetric FinMetric::with_star() const {
  for (const Elem& e : carrier_)
    if (e.is_star()) throw input_error("metric carrier already has the termination point");
  CoproductMetric cp{*this, discrete({Elem::star()})};
  return cp.flatten();
}

FinMetric CoproductMetric::flatten() const {
  std::vector<Elem> carrier = left.carrier();
  for (const Elem& e : right.carrier()) {
    if (std::binary_search(left.carrier().begin(), left.carrier().end(), e))
      throw input_error("coproduct carriers must be disjoint");
    carrier.push_back(e);
  }
  const std::size_t nl = left.carrier().size(), n = carrier.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < nl && j < nl)
        d[i][j] = left.table()[i][j];
      else if (i >= nl && j >= nl)
        d[i][j] = right.table()[i - nl][j - nl];
    }
  return left.is_strict() && right.is_strict() ? FinMetric::metric(std::move(carrier), std::move(d))
                                               : FinMetric::pseudometric(std::move(carrier), std::move(d));
}

FinMetric parse_metric_table(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  while (std::getline(in, header)) {
    if (header.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::istringstream hs(header);
  std::vector<std::string> names;
  for (std::string tok; hs >> tok;) names.push_back(tok);
  if (names.empty()) throw input_error("metric table needs a header of carrier names");
  const std::size_t n = names.size();
  std::vector<Elem> carrier;
  for (const auto& nm : names) {
    if (nm == "star") throw input_error("the termination point cannot carry a metric entry");
    carrier.push_back(Elem::gen(nm));
  }
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      std::string tok;
      if (!(in >> tok))
        throw input_error("metric table ends early in row for '" + names[i] + "'");
      const Rational v = parse_rational(tok);
      d[i][j] = v;
      d[j][i] = v;
    }
  }
  std::string extra;
  if (in >> extra) throw input_error("trailing entries after the metric table");
  return FinMetric::metric(std::move(carrier), std::move(d));
}

// --- Kantorovich --------------------------------------------------------

Rational kantorovich(const Dist& phi, const Dist& psi, const FinMetric& d) {
  const auto& pe = phi.entries();
  const auto& qe = psi.entries();
  const std::size_t m = pe.size(), n = qe.size();
  LinearProgram lp;
  lp.num_vars = m * n;
  lp.objective.resize(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      lp.objective[i * n + j] = d.dist(pe[i].first, qe[j].first);
  for (std::size_t i = 0; i < m; ++i) {
    LinearProgram::Row row;
    row.coeffs.assign(m * n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) row.coeffs[i * n + j] = 1;
    row.rel = Rel::Eq;
    row.rhs = pe[i].second;
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    LinearProgram::Row row;
    row.coeffs.assign(m * n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) row.coeffs[i * n + j] = 1;
    row.rel = Rel::Eq;
    row.rhs = qe[j].second;
    lp.rows.push_back(std::move(row));
  }
  const LPResult res = solve_lp(lp);
  if (res.status != LPStatus::Optimal)
    throw internal_error("coupling polytope unexpectedly empty or unbounded");
  return res.value;
}

// --- Hausdorff-Kantorovich ----------------------------------------------

namespace {

// min over psi in cc(base of b) of K(phi, psi), as one LP over the coupling
// and the convex coefficients placing psi in b.
Rational inf_kantorovich_to_set(const Dist& phi, const ConvexSet& b, const FinMetric& d) {
  const auto& pe = phi.entries();
  const std::vector<Elem> ys = support_union(b.base());
  const std::size_t m = pe.size(), n = ys.size(), k = b.base().size();
  LinearProgram lp;
  lp.num_vars = m * n + k;
  lp.objective.assign(lp.num_vars, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) lp.objective[i * n + j] = d.dist(pe[i].first, ys[j]);
  for (std::size_t i = 0; i < m; ++i) {
    LinearProgram::Row row;
    row.coeffs.assign(lp.num_vars, Rational(0));
    for (std::size_t j = 0; j < n; ++j) row.coeffs[i * n + j] = 1;
    row.rel = Rel::Eq;
    row.rhs = pe[i].second;
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    LinearProgram::Row row;
    row.coeffs.assign(lp.num_vars, Rational(0));
    for (std::size_t i = 0; i < m; ++i) row.coeffs[i * n + j] = 1;
    for (std::size_t l = 0; l < k; ++l) row.coeffs[m * n + l] = -b.base()[l].weight(ys[j]);
    row.rel = Rel::Eq;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  LinearProgram::Row ones;
  ones.coeffs.assign(lp.num_vars, Rational(0));
  for (std::size_t l = 0; l < k; ++l) ones.coeffs[m * n + l] = 1;
  ones.rel = Rel::Eq;
  ones.rhs = 1;
  lp.rows.push_back(std::move(ones));

  const LPResult res = solve_lp(lp);
  if (res.status != LPStatus::Optimal)
    throw internal_error("directed Hausdorff LP unexpectedly not optimal");
  return res.value;
}

Rational directed_hausdorff(const ConvexSet& a, const ConvexSet& b, const FinMetric& d) {
  // the sup over the convex set a is attained on its unique base
  Rational best = 0;
  for (const Dist& phi : a.base()) best = std::max(best, inf_kantorovich_to_set(phi, b, d));
  return best;
}

}  // namespace

Rational directed_hk(const ConvexSet& a, const ConvexSet& b, const FinMetric& d) {
  if (a.carrier() != b.carrier()) throw input_error("Hausdorff distance carrier mismatch");
  if (d.carrier() != a.carrier().gens())
    throw input_error("metric carrier does not match the sets' generators");
  const FinMetric ground = a.carrier().has_star() ? d.with_star() : d;
  return directed_hausdorff(a, b, ground);
}

Rational hk_distance(const ConvexSet& a, const ConvexSet& b, const FinMetric& d) {
  return std::max(directed_hk(a, b, d), directed_hk(b, a, d));
}

Rational hk_maybe(const MaybeSet& a, const MaybeSet& b, const FinMetric& d) {
  if (a.is_star() && b.is_star()) return 0;
  if (a.is_star() != b.is_star()) return 1;
  return hk_distance(a.set_value(), b.set_value(), d);
}

Rational term_distance(const Term& a, const Term& b, const FinMetric& space, TheoryId th) {
  if (th == TheoryId::CSBotBH)
    throw input_error("term distances exist only for cs-star and cs-bot");
  Carrier gens = Carrier::of(space.carrier(), false);
  for (const Term* t : {&a, &b})
    for (const std::string& g : t->generators())
      if (!gens.contains(Elem::gen(g))) throw input_error("unknown generator '" + g + "'");
  const CanonicalValue va = interpret(a, th, gens);
  const CanonicalValue vb = interpret(b, th, gens);
  return hk_distance(*va.set, *vb.set, space);
}

// --- non-expansiveness ----------------------------------------------------

FinMetric random_metric(Rng& rng, const Carrier& ground, long denom_bound) {
  const std::size_t n = ground.gens().size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const long den = rng.range(1, denom_bound);
      const long num = rng.range(1, den);
      d[i][j] = d[j][i] = Rational(num, den);
    }
  // shortest-path completion restores the triangle inequality exactly
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) d[i][j] = std::min(d[i][j], Rational(d[i][k] + d[k][j]));
  return FinMetric::metric(ground.gens(), std::move(d));
}

std::vector<LawReport> check_nonexpansive(MapUnderTest f, const SampleConfig& cfg) {
  Rng rng(cfg.seed);

  if (f == MapUnderTest::XiHat) {
    LawReport ne("nonexpansive");
    LawReport iso("unit-isometry");
    for (int i = 0; i < cfg.samples; ++i) {
      const Carrier ground = random_ground(rng, std::min(cfg.carrier_size, 3));
      const FinMetric d = rng.coin() ? FinMetric::discrete(ground.gens())
                                     : random_metric(rng, ground, cfg.denom_bound);
      const ConvexSet s1 = random_cp1(rng, ground, cfg.base_size, cfg.denom_bound);
      const ConvexSet s2 = random_cp1(rng, ground, cfg.base_size, cfg.denom_bound);
      const Rational in = hk_distance(s1, s2, d);
      const Rational out = hk_distance(xi(s1), xi(s2), d);
      ++ne.samples;
      if (out > in)
        ne.failures.push_back("in " + rat_str(in) + " out " + rat_str(out) + " on " +
                              s1.to_string() + " / " + s2.to_string());
      // the closure of {δx} embeds the ground space isometrically
      for (const Elem& x : ground.gens())
        for (const Elem& y : ground.gens()) {
          ++iso.samples;
          const Rational lift = hk_distance(unit_cdown(ground, x), unit_cdown(ground, y), d);
          if (lift != d.dist(x, y))
            iso.failures.push_back(x.to_string() + "," + y.to_string());
        }
    }
    return {ne, iso};
  }

  if (f == MapUnderTest::GammaHat) {
    LawReport pinned("counterexample");
    LawReport observed("observed-violations");
    {
      // S1 = {1/2 x + 1/2 ⋆}, S2 = {δx} over discrete X
      const Carrier ground = Carrier::names({"x"}, false);
      const FinMetric d = FinMetric::discrete(ground.gens());
      const Elem x = Elem::gen("x");
      const ConvexSet s1 = ConvexSet::cc(
          ground.with_star(), {Dist::make({{x, rat(1, 2)}, {Elem::star(), rat(1, 2)}})});
      const ConvexSet s2 = ConvexSet::cc(ground.with_star(), {Dist::dirac(x)});
      const Rational in = hk_distance(s1, s2, d);
      const Rational out = hk_maybe(gamma(s1), gamma(s2), d);
      ++pinned.samples;
      if (!(in == rat(1, 2) && out == 1))
        pinned.failures.push_back("in " + rat_str(in) + " out " + rat_str(out));
    }
    for (int i = 0; i < cfg.samples; ++i) {
      const Carrier ground = random_ground(rng, std::min(cfg.carrier_size, 3));
      const FinMetric d = FinMetric::discrete(ground.gens());
      const ConvexSet s1 = random_cp1(rng, ground, cfg.base_size, cfg.denom_bound);
      const ConvexSet s2 = random_cp1(rng, ground, cfg.base_size, cfg.denom_bound);
      const Rational in = hk_distance(s1, s2, d);
      const Rational out = hk_maybe(gamma(s1), gamma(s2), d);
      ++observed.samples;
      if (out > in)
        observed.failures.push_back("in " + rat_str(in) + " out " + rat_str(out));
    }
    return {pinned, observed};
  }

  LawReport pinned("counterexample");
  LawReport observed("observed-violations");
  {
    // S1 = {1/2 {δx} + 1/2 ∗}, S2 = {δ_{{δx}}}
    const Carrier ground = Carrier::names({"x"}, false);
    const FinMetric d = FinMetric::discrete(ground.gens());
    const ConvexSet dx = ConvexSet::cc(ground, {Dist::dirac(Elem::gen("x"))});
    const Carrier mid = Carrier::of({Elem::set(dx)}, true);
    const MaybeSet v1 = MaybeSet::set(ConvexSet::cc(
        mid, {Dist::make({{Elem::set(dx), rat(1, 2)}, {Elem::star(), rat(1, 2)}})}));
    const MaybeSet v2 = MaybeSet::set(ConvexSet::cc(mid, {Dist::dirac(Elem::set(dx))}));
    const FinMetric inner = FinMetric::metric({Elem::set(dx)}, {{Rational(0)}});
    const Rational in = hk_maybe(v1, v2, inner);
    const Rational out = hk_maybe(mult_cplus1(v1), mult_cplus1(v2), d);
    ++pinned.samples;
    if (!(in == rat(1, 2) && out == 1))
      pinned.failures.push_back("in " + rat_str(in) + " out " + rat_str(out));
  }
  for (int i = 0; i < cfg.samples; ++i) {
    const Carrier ground = random_ground(rng, std::min(cfg.carrier_size, 3));
    const FinMetric d = FinMetric::discrete(ground.gens());
    const MaybeSet v1 = random_cplus1_sq(rng, ground, 2, cfg.denom_bound);
    const MaybeSet v2 = random_cplus1_sq(rng, ground, 2, cfg.denom_bound);

    // ground metric on the inner sets: pairwise Hausdorff-Kantorovich
    std::vector<Elem> inner_elems;
    for (const MaybeSet* v : {&v1, &v2})
      if (!v->is_star())
        for (const Elem& g : v->set_value().carrier().gens()) inner_elems.push_back(g);
    std::sort(inner_elems.begin(), inner_elems.end());
    inner_elems.erase(std::unique(inner_elems.begin(), inner_elems.end()), inner_elems.end());
    std::vector<std::vector<Rational>> table(inner_elems.size(),
                                             std::vector<Rational>(inner_elems.size(), Rational(0)));
    for (std::size_t p = 0; p < inner_elems.size(); ++p)
      for (std::size_t q = p + 1; q < inner_elems.size(); ++q) {
        const Rational hk =
            hk_distance(inner_elems[p].set_value(), inner_elems[q].set_value(), d);
        table[p][q] = table[q][p] = hk;
      }
    const FinMetric inner = FinMetric::pseudometric(inner_elems, std::move(table));

    // the two middle sets may disagree on their declared alphabet; put both
    // over the union so the distances are comparable
    MaybeSet w1 = v1, w2 = v2;
    if (!v1.is_star() && !v2.is_star()) {
      const Carrier joint = Carrier::united(v1.set_value().carrier(), v2.set_value().carrier());
      w1 = MaybeSet::set(v1.set_value().with_carrier(joint));
      w2 = MaybeSet::set(v2.set_value().with_carrier(joint));
    }
    const FinMetric inner_full = [&] {
      if (v1.is_star() || v2.is_star()) return inner;
      std::vector<Elem> gens = w1.set_value().carrier().gens();
      std::vector<std::vector<Rational>> t(gens.size(), std::vector<Rational>(gens.size(), Rational(0)));
      for (std::size_t p = 0; p < gens.size(); ++p)
        for (std::size_t q = p + 1; q < gens.size(); ++q)
          t[p][q] = t[q][p] = hk_distance(gens[p].set_value(), gens[q].set_value(), d);
      return FinMetric::pseudometric(gens, std::move(t));
    }();
    const Rational in = hk_maybe(w1, w2, inner_full);
    const Rational out = hk_maybe(mult_cplus1(v1), mult_cplus1(v2), d);
    ++observed.samples;
    if (out > in)
      observed.failures.push_back("in " + rat_str(in) + " out " + rat_str(out));
  }
  return {pinned, observed};
}

}  // namespace csl
