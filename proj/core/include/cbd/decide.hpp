#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbd/coupling.hpp"
#include "cbd/lp.hpp"
#include "cbd/model.hpp"
#include "cbd/split.hpp"

namespace cbd {

inline constexpr std::size_t kDefaultMaxAtoms = 1'000'000;

/// CBD_MAX_ATOMS when set to a positive integer, else kDefaultMaxAtoms.
std::size_t default_max_atoms();

/// Global atoms: one bunch-support atom chosen per context, mixed radix with
/// context 0 least significant.
struct AtomSpace {
  std::vector<std::size_t> radices;

  std::size_t size() const;
  std::vector<std::size_t> decode(std::size_t index) const;
};

enum class MultimaxEncoding {
  /// One zero-mass row per (q, A, c, c'): atoms on the side that maximality
  /// forbids.
  zero_mass,
  /// One row per (q, A, c, c'): Pr[both in A] = min of the two marginals.
  min_joint,
};

struct LpOptions {
  MultimaxEncoding encoding = MultimaxEncoding::zero_mass;
  std::size_t max_atoms = default_max_atoms();
};

struct FeasibilityLp {
  LpProblem lp;
  AtomSpace atoms;
};

/// Bunch rows plus pairwise multimaximality rows for every split of every
/// connection. Errors: PlanIncomplete, NotDetermining, LpTooLarge.
FeasibilityLp build_feasibility_lp(const System& system, const SplitPlan& plan, const LpOptions& options = {});

/// Bunch rows plus identity rows Pr[S_q^c != S_q^c'] = 0.
/// Errors: InconsistentlyConnected, LpTooLarge.
FeasibilityLp build_traditional_lp(const System& system, const LpOptions& options = {});

/// Bunch rows plus maximal-agreement rows on the raw variables:
/// Pr[S_q^c = S_q^c'] = sum_x min(p_c(x), p_c'(x)). Errors: LpTooLarge.
FeasibilityLp build_unsplit_lp(const System& system, const LpOptions& options = {});

enum class Status { noncontextual, contextual };

std::string_view to_string(Status status);

struct Verdict {
  Status status = Status::contextual;
  /// Coupling of the system, variables in System::variables() order; present
  /// iff noncontextual.
  std::optional<Coupling> witness;
  /// Phase-1 optimum when contextual (zero otherwise). Not a measure of
  /// contextuality.
  Rational residual;
  std::size_t lp_variables = 0;
  std::size_t lp_rows = 0;
  std::size_t lp_active_variables = 0;
  std::size_t pivots = 0;

  bool noncontextual() const { return status == Status::noncontextual; }
};

/// Existence of a coupling whose split representation under `plan` has
/// multimaximal connections.
Verdict decide_contextuality(const System& system, const SplitPlan& plan, const LpOptions& options = {});

/// Identity-coupling definition; consistently connected systems only.
Verdict decide_traditional(const System& system, const LpOptions& options = {});

/// Multimaximal coupling of the undichotomized variables (pairwise maximal
/// agreement probability).
Verdict decide_unsplit(const System& system, const LpOptions& options = {});

/// Reads the LP solution back as a coupling of the system.
Coupling witness_from_solution(const System& system, const AtomSpace& atoms, const std::vector<Rational>& values);

// ---------------------------------------------------------------------------
// Witness checks (independent of the LP encoding).

/// Bunch marginals of the coupling reproduce the system exactly.
std::optional<std::string> verify_coupling(const System& system, const Coupling& coupling);

/// verify_coupling plus Pr[S_A^c = 1, S_A^c' = 1] = min(...) for every split.
std::optional<std::string> verify_witness(const System& system, const SplitPlan& plan, const Coupling& coupling);

/// verify_coupling plus Pr[S_q^c = S_q^c'] = 1 for every connection pair.
std::optional<std::string> verify_traditional_witness(const System& system, const Coupling& coupling);

/// verify_coupling plus maximal agreement of every connection pair.
std::optional<std::string> verify_unsplit_witness(const System& system, const Coupling& coupling);

// ---------------------------------------------------------------------------
// Single categorical or ordered connections.

/// p(i) < q(i) for at most one i. Errors: MismatchedSupport.
bool nominal_dominance(const Pmf& p, const Pmf& q);

struct Alignment {
  std::vector<std::size_t> order;  // variables from least to most mass off the exceptional value
  std::size_t exceptional = 0;
};

/// An order that is nondecreasing at every value but one.
std::optional<Alignment> dominance_aligned(std::span<const Pmf> pmfs);

/// Coupling of the connection in original variable order via
/// nested_events_coupling. Errors: NotAligned.
Coupling aligned_coupling(std::span<const Pmf> pmfs, const Alignment& alignment);

/// Noncontextual iff nominal dominance holds in either direction; the
/// witness comes from aligned_coupling.
Verdict two_variable_categorical(const Pmf& p, const Pmf& q);

/// Always noncontextual; the witness is the quantile coupling.
Verdict decide_single_connection_cuts(std::span<const Pmf> pmfs);

/// Content "q" with labels "1".."k" (or `labels`), one context per pmf named
/// "1".."n".
System single_connection_system(std::span<const Pmf> pmfs, ValueKind kind, std::vector<std::string> labels = {});

}  // namespace cbd
