#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbd/label_set.hpp"
#include "cbd/model.hpp"
#include "cbd/rational.hpp"

namespace cbd {

struct CouplingAtom {
  std::vector<std::size_t> values;  // one label index per variable
  Rational probability;

  friend bool operator==(const CouplingAtom&, const CouplingAtom&) = default;
};

/// Jointly distributed witness over a list of variables. Canonical form keeps
/// only positive atoms, merged and sorted by value tuple.
struct Coupling {
  std::vector<std::string> variables;
  std::vector<CouplingAtom> atoms;

  std::size_t arity() const { return variables.size(); }
  Rational total_mass() const;
  /// Pmf of variable i over `labels` values.
  Pmf marginal(std::size_t i, std::size_t labels) const;
  /// The coupling restricted to the listed variables.
  Coupling project(std::span<const std::size_t> keep) const;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

/// Merges equal value tuples, drops zero atoms, sorts.
Coupling canonical(Coupling coupling);

/// Each variable's marginal equals the given pmf exactly.
bool is_coupling_of(const Coupling& coupling, std::span<const Pmf> marginals);

/// Binary coupling of the indicators [S_i in subsets[i]].
Coupling indicator_coupling(const Coupling& coupling, std::span<const LabelSet> subsets);

template <typename Violation>
struct Check {
  std::optional<Violation> violation;
  bool ok() const { return !violation; }
};

// ---------------------------------------------------------------------------
// Binary families.

/// Staircase coupling: variables sorted by descending Pr[=1] (ties by index);
/// atom k sets the first k variables to 1. Only positive atoms are kept.
/// Errors: OutOfRange.
Coupling multimaximal_binary(std::span<const Rational> ones);

struct PairViolation {
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Every pair has Pr[Y_i=1, Y_j=1] = min(Pr[Y_i=1], Pr[Y_j=1]).
Check<PairViolation> check_multimaximal_binary(const Coupling& coupling);

// ---------------------------------------------------------------------------
// Ordered connections.

/// Cumulative distribution of an ordered variable over its support points.
struct CdfTable {
  std::vector<std::size_t> points;    // label indices, ascending
  std::vector<Rational> cumulative;   // F at each point; last is 1

  static CdfTable from_pmf(const Pmf& pmf);
  /// F(x) for any label index x.
  Rational at(std::size_t label) const;
};

/// Coupling through a shared uniform U: variable k takes F_k^{-1}(U). [0,1] is
/// cut at the merged cumulative breakpoints; each piece becomes one atom.
Coupling quantile_coupling(std::span<const CdfTable> cdfs);

/// Support of a two-variable coupling avoids the forbidden set K built from
/// the signs of F_i - F_j at each merged support point. Violation is the index
/// of an offending atom. Errors: NotACoupling.
Check<std::size_t> forbidden_region_check(const CdfTable& first, const CdfTable& second, const Coupling& joint);

// ---------------------------------------------------------------------------
// Categorical connections.

struct ChainViolation {
  std::size_t i = 0;
  std::size_t i2 = 0;
  std::size_t l = 0;
  std::size_t l2 = 0;
};

/// No variables i, i2 and positive atoms l, l2 with
/// S^i(l) != S^i(l2) != S^i2(l2) != S^i2(l) != S^i(l). Equivalent to the full
/// dichotomization split of the coupling being multimaximally connected.
Check<ChainViolation> check_categorical_splits_multimax(const Coupling& coupling);

/// Coupling in which, for every value other than `exceptional`, the events
/// {S^1 = v} ⊆ {S^2 = v} ⊆ ... are nested. `pmfs` must already be in aligned
/// order. Errors: NotAligned, MismatchedSupport.
Coupling nested_events_coupling(std::span<const Pmf> pmfs, std::size_t exceptional);

}  // namespace cbd
