#include "csl/linprog.hpp"

#include <algorithm>
#include <cstddef>

#include "csl/errors.hpp"

namespace csl {

void LinearProgram::validate() const {
  if (num_vars == 0) throw input_error("linear program needs at least one variable");
  if (!objective.empty() && objective.size() != num_vars)
    throw input_error("objective length does not match variable count");
  if (!lower_bounds.empty() && lower_bounds.size() != num_vars)
    throw input_error("lower-bound list does not match variable count");
  for (const Row& r : rows)
    if (r.coeffs.size() != num_vars)
      throw input_error("constraint row length does not match variable count");
}

namespace {

// Solves M·y = b exactly by Gaussian elimination. M is square.
std::vector<Rational> gauss_solve(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
  const std::size_t k = m.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) throw internal_error("singular basis while extracting LP certificate");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = m[col][col];
    for (std::size_t j = col; j < k; ++j) m[col][j] /= inv;
    b[col] /= inv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j < k; ++j) m[i][j] -= f * m[col][j];
      b[i] -= f * b[col];
    }
  }
  return b;
}

// Standardized program: rows rewritten over shifted variables x' = x − lb with
// rhs ≥ 0, one slack column per inequality, one artificial column per row.
struct Simplex {
  const LinearProgram& lp;
  std::size_t n = 0;       // structural columns
  std::size_t ns = 0;      // slack columns
  std::size_t na = 0;      // artificial columns
  std::size_t ncols = 0;

  std::vector<std::vector<Rational>> sa;  // standardized rows (immutable copy)
  std::vector<Rational> sb;               // standardized rhs ≥ 0
  std::vector<int> sign;                  // ±1 per original row

  std::vector<std::vector<Rational>> a;   // working tableau
  std::vector<Rational> rhs;
  std::vector<int> basis;                 // column basic in each tableau row
  std::vector<int> row_orig;              // tableau row -> original row index
  std::vector<Rational> dj;               // reduced costs for the active phase
  std::vector<Rational> cost;             // active phase cost per column

  explicit Simplex(const LinearProgram& p) : lp(p) {
    n = lp.num_vars;
    for (const auto& r : lp.rows)
      if (r.rel != Rel::Eq) ++ns;
    na = lp.rows.size();
    ncols = n + ns + na;

    std::size_t slack_at = n;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const auto& row = lp.rows[i];
      Rational b = row.rhs;
      for (std::size_t j = 0; j < n; ++j)
        if (!lp.lower_bounds.empty()) b -= row.coeffs[j] * lp.lower_bounds[j];
      Rel rel = row.rel;
      int sgn = 1;
      if (b < 0) {
        sgn = -1;
        b = -b;
        rel = rel == Rel::Le ? Rel::Ge : (rel == Rel::Ge ? Rel::Le : Rel::Eq);
      }
      std::vector<Rational> full(ncols, Rational(0));
      for (std::size_t j = 0; j < n; ++j) full[j] = sgn * row.coeffs[j];
      if (rel == Rel::Le)
        full[slack_at++] = 1;
      else if (rel == Rel::Ge)
        full[slack_at++] = -1;
      full[n + ns + i] = 1;  // artificial
      sa.push_back(std::move(full));
      sb.push_back(b);
      sign.push_back(sgn);
    }
    a = sa;
    rhs = sb;
    basis.resize(lp.rows.size());
    row_orig.resize(lp.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      basis[i] = static_cast<int>(n + ns + i);
      row_orig[i] = static_cast<int>(i);
    }
  }

  bool is_artificial(int col) const { return col >= static_cast<int>(n + ns); }

  void set_phase_cost(bool phase1) {
    cost.assign(ncols, Rational(0));
    if (phase1) {
      for (std::size_t j = n + ns; j < ncols; ++j) cost[j] = 1;
    } else if (!lp.objective.empty()) {
      for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
    }
    dj = cost;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Rational cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < ncols; ++j)
        if (a[i][j] != 0) dj[j] -= cb * a[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = a[r][c];
    for (std::size_t j = 0; j < ncols; ++j) a[r][j] /= p;
    rhs[r] /= p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < ncols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      rhs[i] -= f * rhs[r];
    }
    if (dj[c] != 0) {
      const Rational f = dj[c];
      for (std::size_t j = 0; j < ncols; ++j)
        if (a[r][j] != 0) dj[j] -= f * a[r][j];
    }
    basis[r] = static_cast<int>(c);
  }

  // Bland's rule. `may_enter(j)` restricts the entering columns; returns the
  // entering column on unboundedness, -1 on optimality of the phase.
  template <typename Pred>
  int run(const Pred& may_enter) {
    for (;;) {
      int c = -1;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (may_enter(j) && dj[j] < 0) {
          c = static_cast<int>(j);
          break;
        }
      }
      if (c < 0) return -1;
      int r = -1;
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][c] <= 0) continue;
        const Rational t = rhs[i] / a[i][c];
        if (r < 0 || t < best || (t == best && basis[i] < basis[r])) {
          r = static_cast<int>(i);
          best = t;
        }
      }
      if (r < 0) return c;
      pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }

  Rational phase_value() const {
    Rational v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) v += cost[basis[i]] * rhs[i];
    return v;
  }

  // Removes basic artificials after phase 1; drops redundant rows.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < a.size();) {
      if (!is_artificial(basis[i])) {
        ++i;
        continue;
      }
      std::size_t c = 0;
      while (c < n + ns && a[i][c] == 0) ++c;
      if (c < n + ns) {
        pivot(i, c);  // rhs is 0 here, feasibility unchanged
        ++i;
      } else {
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
        rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(i));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        row_orig.erase(row_orig.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  // Multipliers over the original rows solving Bᵀy = c_B for the active basis,
  // with zero on rows dropped as redundant.
  std::vector<Rational> multipliers() const {
    const std::size_t k = a.size();
    std::vector<std::vector<Rational>> bt(k, std::vector<Rational>(k));
    std::vector<Rational> cb(k);
    for (std::size_t col = 0; col < k; ++col) {
      for (std::size_t i = 0; i < k; ++i) bt[col][i] = sa[row_orig[i]][basis[col]];
      cb[col] = cost[basis[col]];
    }
    const std::vector<Rational> y = k > 0 ? gauss_solve(bt, cb) : std::vector<Rational>{};
    std::vector<Rational> full(lp.rows.size(), Rational(0));
    for (std::size_t i = 0; i < k; ++i) full[row_orig[i]] = y[i];
    return full;
  }
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational v = 0;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
  return v;
}

// Exact re-check of every certificate against the original program; the LP
// layer refuses to return anything it cannot prove.
void verify_optimal(const LinearProgram& lp, const LPResult& res) {
  const std::vector<Rational> zeros(lp.num_vars, Rational(0));
  const auto& lb = lp.lower_bounds.empty() ? zeros : lp.lower_bounds;
  const auto& c = lp.objective.empty() ? zeros : lp.objective;
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    if (res.point[j] < lb[j]) throw internal_error("LP point violates a lower bound");
  for (const auto& row : lp.rows) {
    const Rational lhs = dot(row.coeffs, res.point);
    const bool ok = row.rel == Rel::Le ? lhs <= row.rhs : row.rel == Rel::Ge ? lhs >= row.rhs : lhs == row.rhs;
    if (!ok) throw internal_error("LP point violates a constraint");
  }
  if (dot(c, res.point) != res.value) throw internal_error("LP value does not match point");
  // dual feasibility and strong duality
  Rational ybr = 0;
  std::vector<Rational> yta(lp.num_vars, Rational(0));
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Rational& y = res.dual[i];
    if (lp.rows[i].rel == Rel::Le && y > 0) throw internal_error("dual sign violated on <= row");
    if (lp.rows[i].rel == Rel::Ge && y < 0) throw internal_error("dual sign violated on >= row");
    ybr += y * lp.rows[i].rhs;
    for (std::size_t j = 0; j < lp.num_vars; ++j) yta[j] += y * lp.rows[i].coeffs[j];
  }
  Rational rlb = 0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const Rational reduced = c[j] - yta[j];
    if (reduced < 0) throw internal_error("negative reduced cost in optimal certificate");
    rlb += reduced * lb[j];
  }
  if (ybr + rlb != res.value) throw internal_error("strong duality failed in optimal certificate");
}

void verify_infeasible(const LinearProgram& lp, const std::vector<Rational>& y) {
  const std::vector<Rational> zeros(lp.num_vars, Rational(0));
  const auto& lb = lp.lower_bounds.empty() ? zeros : lp.lower_bounds;
  Rational yb = 0;
  std::vector<Rational> yta(lp.num_vars, Rational(0));
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    if (lp.rows[i].rel == Rel::Le && y[i] > 0) throw internal_error("farkas sign violated on <= row");
    if (lp.rows[i].rel == Rel::Ge && y[i] < 0) throw internal_error("farkas sign violated on >= row");
    yb += y[i] * lp.rows[i].rhs;
    for (std::size_t j = 0; j < lp.num_vars; ++j) yta[j] += y[i] * lp.rows[i].coeffs[j];
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    if (yta[j] > 0) throw internal_error("farkas certificate not nonpositive on a column");
  if (yb - dot(yta, lb) <= 0) throw internal_error("farkas certificate fails strict inequality");
}

void verify_unbounded(const LinearProgram& lp, const LPResult& res) {
  const std::vector<Rational> zeros(lp.num_vars, Rational(0));
  const auto& c = lp.objective.empty() ? zeros : lp.objective;
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    if (res.ray[j] < 0) throw internal_error("unbounded ray has a negative component");
  for (const auto& row : lp.rows) {
    const Rational d = dot(row.coeffs, res.ray);
    const bool ok = row.rel == Rel::Le ? d <= 0 : row.rel == Rel::Ge ? d >= 0 : d == 0;
    if (!ok) throw internal_error("unbounded ray leaves the feasible cone");
  }
  if (dot(c, res.ray) >= 0) throw internal_error("unbounded ray does not improve the objective");
}

}  // namespace

LPResult solve_lp(const LinearProgram& lp) {
  lp.validate();
  Simplex s(lp);

  s.set_phase_cost(true);
  s.run([&](std::size_t j) { return !s.is_artificial(static_cast<int>(j)); });
  if (s.phase_value() > 0) {
    LPResult res;
    res.status = LPStatus::Infeasible;
    std::vector<Rational> y = s.multipliers();
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= s.sign[i];
    res.farkas = std::move(y);
    verify_infeasible(lp, res.farkas);
    return res;
  }
  s.drive_out_artificials();

  s.set_phase_cost(false);
  const int unbounded_col = s.run([&](std::size_t j) { return !s.is_artificial(static_cast<int>(j)); });

  const std::vector<Rational> zeros(lp.num_vars, Rational(0));
  const auto& lb = lp.lower_bounds.empty() ? zeros : lp.lower_bounds;
  const auto& c = lp.objective.empty() ? zeros : lp.objective;

  std::vector<Rational> point(lp.num_vars, Rational(0));
  for (std::size_t i = 0; i < s.a.size(); ++i)
    if (s.basis[i] < static_cast<int>(lp.num_vars)) point[s.basis[i]] = s.rhs[i];
  for (std::size_t j = 0; j < lp.num_vars; ++j) point[j] += lb[j];

  if (unbounded_col >= 0) {
    LPResult res;
    res.status = LPStatus::Unbounded;
    res.point = std::move(point);
    std::vector<Rational> ray(s.ncols, Rational(0));
    ray[static_cast<std::size_t>(unbounded_col)] = 1;
    for (std::size_t i = 0; i < s.a.size(); ++i)
      ray[s.basis[i]] = -s.a[i][static_cast<std::size_t>(unbounded_col)];
    res.ray.assign(ray.begin(), ray.begin() + static_cast<std::ptrdiff_t>(lp.num_vars));
    // structural components are expressed over the sign-flipped rows already
    verify_unbounded(lp, res);
    return res;
  }

  LPResult res;
  res.status = LPStatus::Optimal;
  res.point = std::move(point);
  res.value = dot(c, res.point);
  std::vector<Rational> y = s.multipliers();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= s.sign[i];
  res.dual = std::move(y);
  verify_optimal(lp, res);
  return res;
}

HullMembership hull_membership(const std::vector<Rational>& point,
                               const std::vector<std::vector<Rational>>& generators) {
  if (generators.empty()) throw input_error("hull membership needs at least one generator");
  const std::size_t dim = point.size();
  for (const auto& g : generators)
    if (g.size() != dim) throw input_error("hull membership dimension mismatch");

  LinearProgram lp;
  lp.num_vars = generators.size();
  for (std::size_t d = 0; d < dim; ++d) {
    LinearProgram::Row row;
    row.rel = Rel::Eq;
    row.rhs = point[d];
    row.coeffs.reserve(generators.size());
    for (const auto& g : generators) row.coeffs.push_back(g[d]);
    lp.rows.push_back(std::move(row));
  }
  LinearProgram::Row ones;
  ones.rel = Rel::Eq;
  ones.rhs = 1;
  ones.coeffs.assign(generators.size(), Rational(1));
  lp.rows.push_back(std::move(ones));

  const LPResult sol = solve_lp(lp);
  HullMembership out;
  if (sol.status == LPStatus::Optimal) {
    out.inside = true;
    out.lambda = sol.point;
    Rational total = 0;
    std::vector<Rational> combo(dim, Rational(0));
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (out.lambda[i] < 0) throw internal_error("hull certificate has negative coefficient");
      total += out.lambda[i];
      for (std::size_t d = 0; d < dim; ++d) combo[d] += out.lambda[i] * generators[i][d];
    }
    if (total != 1 || combo != point) throw internal_error("hull certificate does not reproduce the point");
    return out;
  }
  if (sol.status != LPStatus::Infeasible) throw internal_error("hull membership LP cannot be unbounded");
  out.inside = false;
  out.normal.assign(sol.farkas.begin(), sol.farkas.begin() + static_cast<std::ptrdiff_t>(dim));
  out.offset = -sol.farkas[dim];
  for (const auto& g : generators) {
    Rational v = 0;
    for (std::size_t d = 0; d < dim; ++d) v += out.normal[d] * g[d];
    if (v > out.offset) throw internal_error("separating hyperplane fails on a generator");
  }
  Rational v = 0;
  for (std::size_t d = 0; d < dim; ++d) v += out.normal[d] * point[d];
  if (v <= out.offset) throw internal_error("separating hyperplane fails on the point");
  return out;
}

}  // namespace csl
