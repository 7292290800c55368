#pragma once

// Brute-force reference computations used by the test suites. Everything here
// is deliberately independent of the simplex/hull code paths it checks.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "csl/rational.hpp"

namespace csl::oracle {

// Enumerates all lambda vectors with k nonnegative parts summing to denom
// (the lambda grid of denominator `denom`) and reports whether some convex
// combination reproduces `point` exactly.
inline bool grid_inside_rec(const std::vector<std::vector<Rational>>& gens,
                            const std::vector<Rational>& point, std::vector<long>& parts,
                            std::size_t idx, long remaining, long denom) {
  if (idx + 1 == parts.size()) {
    parts[idx] = remaining;
    for (std::size_t d = 0; d < point.size(); ++d) {
      Rational acc = 0;
      for (std::size_t i = 0; i < gens.size(); ++i)
        acc += Rational(parts[i], denom) * gens[i][d];
      if (acc != point[d]) return false;
    }
    return true;
  }
  for (long take = 0; take <= remaining; ++take) {
    parts[idx] = take;
    if (grid_inside_rec(gens, point, parts, idx + 1, remaining - take, denom)) return true;
  }
  return false;
}

inline bool grid_inside(const std::vector<std::vector<Rational>>& gens,
                        const std::vector<Rational>& point, long denom) {
  std::vector<long> parts(gens.size(), 0);
  return grid_inside_rec(gens, point, parts, 0, denom, denom);
}

// Exact minimum-cost transportation value by enumerating every vertex of the
// coupling polytope: vertices are supported on cycle-free cell subsets, so all
// subsets of at most m+n-1 cells are tried and the unique flow on each forest
// is reconstructed by leaf peeling.
inline Rational transport_min_cost(const std::vector<std::vector<Rational>>& costs,
                                   const std::vector<Rational>& supply,
                                   const std::vector<Rational>& demand) {
  const std::size_t m = supply.size(), n = demand.size();
  if (m * n > 20) throw std::logic_error("transport oracle: instance too large");
  std::vector<std::pair<int, int>> all_cells;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      all_cells.emplace_back(static_cast<int>(i), static_cast<int>(j));
  const std::size_t total = all_cells.size();
  bool found = false;
  Rational best;

  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > m + n - 1) continue;
    std::vector<std::pair<int, int>> cells;
    for (std::size_t c = 0; c < total; ++c)
      if (mask & (1u << c)) cells.push_back(all_cells[c]);

    std::vector<Rational> s = supply, d = demand;
    std::vector<int> degree(m + n, 0);
    for (auto [i, j] : cells) {
      ++degree[i];
      ++degree[m + j];
    }
    std::vector<Rational> flow(cells.size(), Rational(0));
    std::vector<bool> done(cells.size(), false);
    std::size_t remaining = cells.size();
    bool ok = true, progress = true;
    while (remaining > 0 && progress && ok) {
      progress = false;
      for (std::size_t c = 0; c < cells.size() && ok; ++c) {
        if (done[c]) continue;
        auto [i, j] = cells[c];
        if (degree[i] == 1)
          flow[c] = s[i];
        else if (degree[m + j] == 1)
          flow[c] = d[j];
        else
          continue;
        if (flow[c] < 0) {
          ok = false;
          break;
        }
        s[i] -= flow[c];
        d[j] -= flow[c];
        --degree[i];
        --degree[m + j];
        done[c] = true;
        --remaining;
        progress = true;
      }
    }
    if (!ok || remaining > 0) continue;  // cyclic support or negative flow
    for (const Rational& v : s)
      if (v != 0) ok = false;
    for (const Rational& v : d)
      if (v != 0) ok = false;
    if (!ok) continue;
    Rational cost = 0;
    for (std::size_t c = 0; c < cells.size(); ++c)
      cost += flow[c] * costs[cells[c].first][cells[c].second];
    if (!found || cost < best) {
      best = cost;
      found = true;
    }
  }
  if (!found) throw std::logic_error("transport oracle: no vertex found");
  return best;
}

}  // namespace csl::oracle
