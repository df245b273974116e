#include "cbd/lp.hpp"

#include <algorithm>

#include "cbd/error.hpp"

namespace cbd {

std::size_t LpProblem::count(RowKind kind) const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const LpRow& r) { return r.kind == kind; }));
}

namespace {

/// Dense phase-1 tableau over the surviving columns. Artificial columns are
/// not stored: an artificial that leaves the basis never re-enters.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs)
      : a_(std::move(rows)), b_(std::move(rhs)), basis_(a_.size(), kArtificial) {
    const std::size_t n = a_.empty() ? 0 : a_.front().size();
    cost_.assign(n, Rational(0));
    objective_ = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (b_[i] < 0) {
        b_[i] = -b_[i];
        for (auto& v : a_[i]) v = -v;
      }
      for (std::size_t j = 0; j < n; ++j) cost_[j] -= a_[i][j];
      objective_ -= b_[i];
    }
  }

  /// Runs to optimality; returns the number of pivots.
  std::size_t solve() {
    std::size_t pivots = 0;
    const std::size_t n = cost_.size();
    while (true) {
      // Bland: lowest-index column with negative reduced cost.
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == n) return pivots;

      std::size_t leave = a_.size();
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (sgn(a_[i][enter]) <= 0) continue;
        Rational ratio = b_[i] / a_[i][enter];
        if (leave == a_.size() || ratio < best || (ratio == best && key(i) < key(leave))) {
          leave = i;
          best = std::move(ratio);
        }
      }
      // Phase 1 is bounded below by zero, so a ratio row always exists.
      if (leave == a_.size()) throw Error(ErrorCode::OutOfRange, "phase-1 simplex found an unbounded ray");
      pivot(leave, enter);
      ++pivots;
    }
  }

  Rational residual() const { return -objective_; }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(cost_.size(), Rational(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] != kArtificial) x[basis_[i]] = b_[i];
    return x;
  }

 private:
  static constexpr std::size_t kArtificial = static_cast<std::size_t>(-1);

  // Artificials rank after every structural column, by row.
  std::pair<std::size_t, std::size_t> key(std::size_t row) const {
    return basis_[row] == kArtificial ? std::make_pair(std::size_t{1}, row) : std::make_pair(std::size_t{0}, basis_[row]);
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t n = cost_.size();
    const Rational inv = 1 / a_[r][c];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(a_[r][j]) != 0) {
        a_[r][j] *= inv;
        nonzero.push_back(j);
      }
    b_[r] *= inv;

    auto eliminate = [&](std::vector<Rational>& row, Rational& rhs) {
      if (sgn(row[c]) == 0) return;
      const Rational factor = row[c];
      for (auto j : nonzero) row[j] -= factor * a_[r][j];
      rhs -= factor * b_[r];
    };
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (i != r) eliminate(a_[i], b_[i]);
    eliminate(cost_, objective_);
    basis_[r] = c;
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
  Rational objective_;
};

}  // namespace

LpSolution lp_feasible(const LpProblem& problem) {
  const std::size_t n = problem.variables;
  for (const auto& row : problem.rows)
    for (const auto& [var, coef] : row.entries)
      if (var >= n) throw Error(ErrorCode::OutOfRange, "row '" + row.label + "' names an undeclared variable");

  // Presolve: sum of nonnegative terms equal to zero forces each term to zero.
  std::vector<bool> fixed(n, false);
  std::vector<bool> dropped(problem.rows.size(), false);
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const auto& row = problem.rows[r];
    if (row.rhs != 0) continue;
    bool nonnegative = std::all_of(row.entries.begin(), row.entries.end(), [](const auto& e) { return e.second >= 0; });
    if (!nonnegative) continue;
    for (const auto& [var, coef] : row.entries)
      if (coef != 0) fixed[var] = true;
    dropped[r] = true;
  }

  std::vector<std::size_t> column_of(n, 0), active;
  for (std::size_t j = 0; j < n; ++j)
    if (!fixed[j]) {
      column_of[j] = active.size();
      active.push_back(j);
    }

  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    if (dropped[r]) continue;
    std::vector<Rational> dense(active.size(), Rational(0));
    for (const auto& [var, coef] : problem.rows[r].entries)
      if (!fixed[var]) dense[column_of[var]] += coef;
    rows.push_back(std::move(dense));
    rhs.push_back(problem.rows[r].rhs);
  }

  Tableau tableau(std::move(rows), std::move(rhs));
  LpSolution out;
  out.active_variables = active.size();
  out.pivots = tableau.solve();
  out.residual = tableau.residual();
  out.feasible = out.residual == 0;
  if (out.feasible) {
    auto reduced = tableau.solution();
    out.values.assign(n, Rational(0));
    for (std::size_t k = 0; k < active.size(); ++k) out.values[active[k]] = reduced[k];
  }
  return out;
}

}  // namespace cbd
