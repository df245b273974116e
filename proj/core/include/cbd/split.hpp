#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cbd/label_set.hpp"
#include "cbd/model.hpp"

namespace cbd {

/// For every content q (by index), the family of dichotomizing subsets.
/// Each subset A stands for the binary variable [R in A].
struct SplitPlan {
  std::vector<std::vector<LabelSet>> families;

  friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

enum class PlanKind { full, cuts, allowable, one_two };

std::string_view to_string(PlanKind kind);
/// Accepts "full", "cuts", "allowable", "12".
std::optional<PlanKind> parse_plan_kind(std::string_view text);

/// Every dichotomy of every content, canonical half holding the first label.
/// Errors: NotCategorical, SpaceTooLarge (more than 16 labels).
SplitPlan plan_full_categorical(const System& system);

/// Downward sets {y <= x} for x in the connection's support union, except the
/// largest. Errors: NotOrdered.
SplitPlan plan_cuts(const System& system);

/// Allowable dichotomizations of each content's V-space.
/// Errors: GroundNotLinked, SpaceTooLarge.
SplitPlan plan_allowable(const System& system);

/// Keeps only dichotomies with a one- or two-element side.
SplitPlan reduce_12(const System& system, const SplitPlan& plan);

SplitPlan make_plan(const System& system, PlanKind kind);

/// The indicator patterns of `family` separate every pair of `labels`.
bool determination_check(std::span<const LabelSet> family, LabelSet labels);

/// Plan covers every content, holds proper nonempty subsets without
/// complement pairs, and determines each content's values on its support.
/// Errors: PlanIncomplete, NotDetermining, OutOfRange.
void check_plan(const System& system, const SplitPlan& plan);

/// A binary system whose contents are the pairs (q, A).
struct SplitSystem {
  System system;
  std::shared_ptr<const System> source;
  SplitPlan plan;
  std::vector<std::pair<std::size_t, LabelSet>> origin;  // split content -> (q, A)
};

/// Pushes every bunch forward through the plan's indicators. Contexts whose
/// variables all have empty families (constants) carry no split variable and
/// are left out.
SplitSystem split_system(const System& system, const SplitPlan& plan);

/// "q:{a,b}" with labels in declared order.
std::string split_content_id(const Content& content, LabelSet subset);
/// Inverse of split_content_id; also accepts "q:a,b". Throws UnknownContent
/// or UnknownLabel.
std::pair<std::size_t, LabelSet> parse_split_content_id(const System& system, std::string_view text);

}  // namespace cbd
