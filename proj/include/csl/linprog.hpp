#pragma once

#include <cstddef>
#include <vector>

#include "csl/rational.hpp"

namespace csl {

enum class Rel { Le, Eq, Ge };

/// Linear program over rationals: minimize objective·x subject to the rows,
/// with per-variable lower bounds (0 unless stated) and no upper bounds.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;  // size num_vars; empty means all-zero
  struct Row {
    std::vector<Rational> coeffs;  // size num_vars
    Rel rel = Rel::Le;
    Rational rhs;
  };
  std::vector<Row> rows;
  std::vector<Rational> lower_bounds;  // empty means all-zero

  void validate() const;  // throws input_error on malformed programs
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

/// Exact solve result. Certificates are produced and re-checked internally
/// before this is returned; a failed re-check raises internal_error.
///
/// Optimal:    `point` satisfies every row exactly and `value` = objective·point;
///             `dual` has one multiplier per row with sign Le ≤ 0 / Ge ≥ 0 / Eq free,
///             reduced costs r = c − dualᵀA are ≥ 0 and value = dual·rhs + r·lb.
/// Infeasible: `farkas` has one multiplier per row proving the contradiction
///             (farkasᵀA ≤ 0 on every column, farkas·rhs − farkasᵀA·lb > 0).
/// Unbounded:  `point` is feasible and `ray` is an improving recession direction.
struct LPResult {
  LPStatus status = LPStatus::Optimal;
  Rational value;
  std::vector<Rational> point;
  std::vector<Rational> dual;
  std::vector<Rational> farkas;
  std::vector<Rational> ray;
};

/// Exact two-phase simplex with Bland's pivot rule. Deterministic for a fixed
/// input; never touches floating point.
LPResult solve_lp(const LinearProgram& lp);

/// Convex-hull membership with certificate. Inside: lambda ≥ 0, Σlambda = 1 and
/// Σ lambda_i·generators[i] = point exactly. Outside: normal·g ≤ offset for every
/// generator g while normal·point > offset.
struct HullMembership {
  bool inside = false;
  std::vector<Rational> lambda;
  std::vector<Rational> normal;
  Rational offset;
};

HullMembership hull_membership(const std::vector<Rational>& point,
                               const std::vector<std::vector<Rational>>& generators);

}  // namespace csl
