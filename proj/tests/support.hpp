#pragma once

// Shared independent oracles and generators for the test and acceptance
// suites. Nothing here calls into the LP-based code paths under test.

#include <map>
#include <optional>
#include <vector>

#include "csl/gen.hpp"
#include "csl/process.hpp"
#include "csl/value.hpp"
#include "oracles.hpp"

namespace csl::support {

// Raw-set variant of gamma on plain distribution lists (pre-hull), used only
// to exercise commutation with raw unions at the level it holds.
inline std::optional<std::vector<Dist>> gamma_raw(const std::vector<Dist>& dists) {
  std::vector<Dist> full;
  for (const Dist& d : dists)
    if (d.star_weight() == 0) full.push_back(d);
  if (full.empty()) return std::nullopt;
  std::sort(full.begin(), full.end());
  full.erase(std::unique(full.begin(), full.end()), full.end());
  return full;
}

// Domination oracle over carriers with at most two generators: a point of the
// set dominates psi on X iff some pair of base points admits a dominating
// mixture, which reduces to an exact interval intersection.
inline bool pair_domination(const ConvexSet& s, const Dist& psi) {
  const std::vector<Elem>& gens = s.carrier().gens();
  if (gens.size() > 2) throw std::logic_error("pair_domination needs |X| <= 2");
  const auto dominated_by_mix = [&](const Dist& a, const Dist& b) {
    Rational lo = 0, hi = 1;  // t·a + (1-t)·b >= psi componentwise
    for (const Elem& g : gens) {
      const Rational coef = a.weight(g) - b.weight(g);
      const Rational rhs = psi.weight(g) - b.weight(g);
      if (coef == 0) {
        if (rhs > 0) return false;
      } else if (coef > 0) {
        lo = std::max(lo, Rational(rhs / coef));
      } else {
        hi = std::min(hi, Rational(rhs / coef));
      }
    }
    return lo <= hi;
  };
  for (const Dist& a : s.base())
    for (const Dist& b : s.base())
      if (dominated_by_mix(a, b)) return true;
  return false;
}

// All subdistributions over two generators with weights in multiples of 1/6.
inline std::vector<Dist> grid6(const Elem& x, const Elem& y) {
  std::vector<Dist> grid;
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; a + b <= 6; ++b) {
      std::vector<Dist::Entry> e;
      if (a > 0) e.emplace_back(x, Rational(a, 6));
      if (b > 0) e.emplace_back(y, Rational(b, 6));
      if (a + b < 6) e.emplace_back(Elem::star(), Rational(6 - a - b, 6));
      grid.push_back(Dist::make(std::move(e)));
    }
  return grid;
}

// --- bisimilarity-metric oracle for processes without (+) -------------------
// Continuations are then single subdistributions and the lifting is a plain
// Kantorovich distance, evaluated by coupling-vertex enumeration.

inline std::map<std::string, Rational> oracle_cont(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Nil:
      return {{"star", Rational(1)}};
    case Process::Kind::Prefix:
      return {{p.body().to_string(), Rational(1)}};
    case Process::Kind::PChoice: {
      auto l = oracle_cont(p.left()), r = oracle_cont(p.right());
      std::map<std::string, Rational> out;
      for (auto& [k, v] : l) out[k] += p.prob() * v;
      for (auto& [k, v] : r) out[k] += (1 - p.prob()) * v;
      return out;
    }
    default:
      throw std::logic_error("oracle handles only (+)-free processes");
  }
}

inline bool nd_free(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Nil:
      return true;
    case Process::Kind::Prefix:
      return nd_free(p.body());
    case Process::Kind::NDChoice:
      return false;
    case Process::Kind::PChoice:
      return nd_free(p.left()) && nd_free(p.right());
  }
  return false;
}

inline Rational oracle_bisim(const Process& a, const Process& b) {
  std::vector<Process> states = reachable(a);
  for (const Process& s : reachable(b)) states.push_back(s);
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  const std::size_t n = states.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[states[i].to_string()] = i;

  std::vector<std::map<std::string, Rational>> conts;
  for (const Process& s : states) conts.push_back(oracle_cont(s));

  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
  for (int round = 0; round < 64; ++round) {
    std::vector<std::vector<Rational>> next = d;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        std::vector<std::string> si, sj;
        std::vector<Rational> supply, demand;
        for (const auto& [k, v] : conts[i]) {
          si.push_back(k);
          supply.push_back(v);
        }
        for (const auto& [k, v] : conts[j]) {
          sj.push_back(k);
          demand.push_back(v);
        }
        std::vector<std::vector<Rational>> costs(si.size(), std::vector<Rational>(sj.size()));
        for (std::size_t x = 0; x < si.size(); ++x)
          for (std::size_t y = 0; y < sj.size(); ++y) {
            if (si[x] == sj[y])
              costs[x][y] = 0;
            else if (si[x] == "star" || sj[y] == "star")
              costs[x][y] = 1;
            else
              costs[x][y] = d[index.at(si[x])][index.at(sj[y])];
          }
        next[i][j] = oracle::transport_min_cost(costs, supply, demand);
      }
    if (next == d) break;
    d = std::move(next);
  }
  return d[index.at(a.to_string())][index.at(b.to_string())];
}

inline Process random_proc(Rng& rng, int height) {
  if (height <= 1) return Process::nil();
  switch (rng.below(4)) {
    case 0:
      return Process::nil();
    case 1:
      return Process::prefix(random_proc(rng, height - 1));
    case 2:
      return Process::nd_choice(random_proc(rng, height - 1), random_proc(rng, height - 1));
    default: {
      const Rational p = rng.coin() ? rat(1, 2) : rat(1, 3);
      return Process::p_choice(p, random_proc(rng, height - 1), random_proc(rng, height - 1));
    }
  }
}

// Every process of height at most h over probabilities {1/2, 1/3}.
inline std::vector<Process> exhaustive_family(int h) {
  std::vector<Process> cur{Process::nil()};
  for (int level = 2; level <= h; ++level) {
    std::vector<Process> next = cur;
    for (const Process& p : cur) next.push_back(Process::prefix(p));
    for (const Process& l : cur)
      for (const Process& r : cur) {
        next.push_back(Process::nd_choice(l, r));
        next.push_back(Process::p_choice(rat(1, 2), l, r));
        next.push_back(Process::p_choice(rat(1, 3), l, r));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
  }
  return cur;
}

}  // namespace csl::support
