#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cbd/coupling.hpp"
#include "cbd/model.hpp"

namespace cbd::testing {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);

/// Random pmf over k labels with at most `max_support` positive entries,
/// weights drawn from 1..`grain`.
Pmf random_pmf(Rng& rng, std::size_t k, std::size_t max_support, std::size_t grain = 6);

/// Random coupling of the given pmfs: a mixture of one to three comonotone
/// couplings, each after a random relabeling of every marginal.
Coupling random_coupling(Rng& rng, std::span<const Pmf> marginals);

struct SystemShape {
  std::size_t contents = 2;
  std::size_t contexts = 2;
  std::size_t max_labels = 3;
  std::size_t max_measured = 2;  // contents per context
  ValueKind kind = ValueKind::categorical;
  bool mixed_kinds = false;
};

/// Random format: every context measures 1..max_measured contents, every
/// content is measured at least once.
std::vector<std::vector<std::size_t>> random_format(Rng& rng, const SystemShape& shape);

/// Random contents of the shape's kind(s).
std::vector<Content> random_contents(Rng& rng, const SystemShape& shape);

/// Arbitrary bunches (usually inconsistently connected).
System random_system(Rng& rng, const SystemShape& shape);

/// Every connection has one marginal shared by all its contexts.
System random_consistent_system(Rng& rng, const SystemShape& shape);

/// Built from hidden uniforms U_q (one per content, jointly distributed) with
/// R_q^c a nondecreasing function of U_q. Cut indicators are then nested in
/// U_q, so the system is noncontextual under cut and allowable plans on
/// ordered contents, and under every plan when contents are binary.
System random_monotone_system(Rng& rng, const SystemShape& shape);

/// Every variable deterministic; values vary inside a connection when the
/// space allows.
System deterministic_system(Rng& rng, const std::vector<Content>& contents,
                            const std::vector<std::vector<std::size_t>>& format);

/// Random allowable coarse-graining target and map for one content:
/// interval merging for ordered spaces, any surjection for categorical ones.
ContentMap random_allowable_map(Rng& rng, const System& system, std::size_t q);

/// Random nonempty subset of the format relation.
std::vector<Variable> random_keep(Rng& rng, const System& system);

/// All pmfs over k labels whose entries are multiples of 1/grain.
std::vector<Pmf> grid_pmfs(std::size_t k, std::size_t grain);

}  // namespace cbd::testing
