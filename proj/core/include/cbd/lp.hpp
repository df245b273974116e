#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cbd/rational.hpp"

namespace cbd {

enum class RowKind { bunch, multimaximal, identity, agreement };

/// Sparse equality row: sum(coefficient * x_var) = rhs.
struct LpRow {
  std::vector<std::pair<std::size_t, Rational>> entries;
  Rational rhs;
  RowKind kind = RowKind::bunch;
  std::string label;
};

/// Feasibility problem {x >= 0 : every row holds}.
struct LpProblem {
  std::size_t variables = 0;
  std::vector<LpRow> rows;

  std::size_t count(RowKind kind) const;
};

struct LpSolution {
  bool feasible = false;
  std::vector<Rational> values;  // basic solution when feasible
  /// Phase-1 optimum (sum of artificial variables) of the presolved problem.
  /// Positive exactly when infeasible. A diagnostic, not a contextuality
  /// measure.
  Rational residual;
  std::size_t pivots = 0;
  std::size_t active_variables = 0;  // columns left after presolve
};

/// Exact phase-1 simplex over rationals with Bland's rule, preceded by a
/// presolve that fixes every column of a zero-rhs nonnegative row at zero.
/// Throws Error{OutOfRange} for rows naming undeclared variables.
LpSolution lp_feasible(const LpProblem& problem);

}  // namespace cbd
