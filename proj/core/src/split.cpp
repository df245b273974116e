#include "cbd/split.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cbd/error.hpp"
#include "cbd/vspace.hpp"

namespace cbd {

std::string_view to_string(PlanKind kind) {
  switch (kind) {
    case PlanKind::full: return "full";
    case PlanKind::cuts: return "cuts";
    case PlanKind::allowable: return "allowable";
    case PlanKind::one_two: return "12";
  }
  return "?";
}

std::optional<PlanKind> parse_plan_kind(std::string_view text) {
  if (text == "full") return PlanKind::full;
  if (text == "cuts") return PlanKind::cuts;
  if (text == "allowable") return PlanKind::allowable;
  if (text == "12") return PlanKind::one_two;
  return std::nullopt;
}

SplitPlan plan_full_categorical(const System& system) {
  SplitPlan plan;
  for (const auto& content : system.contents()) {
    if (content.space.kind != ValueKind::categorical)
      throw Error(ErrorCode::NotCategorical, "full plan needs categorical contents", "content " + content.id);
    const std::size_t k = content.space.size();
    if (k > kMaxEnumeratedGround)
      throw Error(ErrorCode::SpaceTooLarge, "full plan is enumerated up to 16 labels", "content " + content.id);
    std::vector<LabelSet> family;
    // canonical half holds label 0; the other labels choose freely, minus the full set
    const std::uint64_t rest = std::uint64_t{1} << (k - 1);
    for (std::uint64_t r = 0; r + 1 < rest; ++r) family.emplace_back((r << 1) | 1u);
    plan.families.push_back(std::move(family));
  }
  return plan;
}

SplitPlan plan_cuts(const System& system) {
  SplitPlan plan;
  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    const auto& content = system.content(q);
    if (content.space.kind != ValueKind::ordered)
      throw Error(ErrorCode::NotOrdered, "cut plan needs ordered contents", "content " + content.id);
    auto support = system.support_union(q).indices();
    std::vector<LabelSet> family;
    for (std::size_t i = 0; i + 1 < support.size(); ++i) family.push_back(LabelSet::full(support[i] + 1));
    plan.families.push_back(std::move(family));
  }
  return plan;
}

SplitPlan plan_allowable(const System& system) {
  SplitPlan plan;
  for (const auto& content : system.contents()) {
    std::vector<LabelSet> family;
    try {
      for (const auto& d : allowable_dichotomizations(vspace_of(content.space))) family.push_back(d.part0);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), "content " + content.id);
    }
    plan.families.push_back(std::move(family));
  }
  return plan;
}

SplitPlan reduce_12(const System& system, const SplitPlan& plan) {
  SplitPlan out;
  for (std::size_t q = 0; q < plan.families.size(); ++q) {
    const std::size_t k = system.content(q).space.size();
    std::vector<LabelSet> family;
    for (auto a : plan.families[q])
      if (std::min(a.size(), k - a.size()) <= 2) family.push_back(a);
    out.families.push_back(std::move(family));
  }
  return out;
}

SplitPlan make_plan(const System& system, PlanKind kind) {
  switch (kind) {
    case PlanKind::full: return plan_full_categorical(system);
    case PlanKind::cuts: return plan_cuts(system);
    case PlanKind::allowable: return plan_allowable(system);
    case PlanKind::one_two: return reduce_12(system, plan_full_categorical(system));
  }
  throw Error(ErrorCode::PlanIncomplete, "unknown plan kind");
}

bool determination_check(std::span<const LabelSet> family, LabelSet labels) {
  std::set<std::vector<bool>> patterns;
  for (auto x : labels.indices()) {
    std::vector<bool> pattern;
    for (auto a : family) pattern.push_back(a.contains(x));
    if (!patterns.insert(std::move(pattern)).second) return false;
  }
  return true;
}

void check_plan(const System& system, const SplitPlan& plan) {
  if (plan.families.size() != system.contents().size())
    throw Error(ErrorCode::PlanIncomplete, "plan covers " + std::to_string(plan.families.size()) + " of " +
                                               std::to_string(system.contents().size()) + " contents");
  for (std::size_t q = 0; q < plan.families.size(); ++q) {
    const auto& content = system.content(q);
    const LabelSet all = content.space.all();
    std::set<LabelSet> seen;
    for (auto a : plan.families[q]) {
      if (a.empty() || a == all || !a.subset_of(all))
        throw Error(ErrorCode::OutOfRange, "dichotomizing subset must be proper and nonempty", "content " + content.id);
      if (seen.contains(a) || seen.contains(all - a))
        throw Error(ErrorCode::OutOfRange, "subset repeated or complemented", "content " + content.id);
      seen.insert(a);
    }
    if (!determination_check(plan.families[q], system.support_union(q)))
      throw Error(ErrorCode::NotDetermining, "splits do not separate the observed values", "content " + content.id);
  }
}

std::string split_content_id(const Content& content, LabelSet subset) {
  std::string out = content.id + ":{";
  bool first = true;
  for (auto x : subset.indices()) {
    if (!first) out += ',';
    out += content.space.labels.at(x);
    first = false;
  }
  return out + "}";
}

std::pair<std::size_t, LabelSet> parse_split_content_id(const System& system, std::string_view text) {
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::UnknownContent, "expected q:{labels}");
  std::size_t q = system.content_index(text.substr(0, colon));
  std::string_view list = text.substr(colon + 1);
  if (list.size() >= 2 && list.front() == '{' && list.back() == '}') list = list.substr(1, list.size() - 2);
  LabelSet subset;
  while (!list.empty()) {
    auto comma = list.find(',');
    auto label = list.substr(0, comma);
    auto index = system.content(q).space.find(label);
    if (!index) throw Error(ErrorCode::UnknownLabel, "'" + std::string(label) + "'", "content " + system.content(q).id);
    subset = subset.with(*index);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return {q, subset};
}

SplitSystem split_system(const System& system, const SplitPlan& plan) {
  check_plan(system, plan);

  std::vector<Content> contents;
  std::vector<std::pair<std::size_t, LabelSet>> origin;
  std::vector<std::vector<std::size_t>> split_index(plan.families.size());
  const ValueSpace binary{{"0", "1"}, ValueKind::categorical, std::nullopt};
  for (std::size_t q = 0; q < plan.families.size(); ++q)
    for (auto a : plan.families[q]) {
      split_index[q].push_back(contents.size());
      contents.push_back({split_content_id(system.content(q), a), binary});
      origin.emplace_back(q, a);
    }

  std::vector<Context> contexts;
  for (const auto& ctx : system.contexts()) {
    Context out{ctx.id, {}, {}};
    for (auto q : ctx.measured) out.measured.insert(out.measured.end(), split_index[q].begin(), split_index[q].end());
    if (out.measured.empty()) continue;
    std::map<std::vector<std::size_t>, Rational> merged;
    for (const auto& atom : ctx.atoms) {
      std::vector<std::size_t> values;
      for (std::size_t k = 0; k < ctx.measured.size(); ++k)
        for (auto a : plan.families[ctx.measured[k]]) values.push_back(a.contains(atom.values[k]) ? 1 : 0);
      merged[values] += atom.probability;
    }
    for (auto& [values, p] : merged) out.atoms.push_back({values, p});
    contexts.push_back(std::move(out));
  }

  return SplitSystem{assemble(std::move(contents), std::move(contexts)), std::make_shared<const System>(system), plan,
                     std::move(origin)};
}

}  // namespace cbd
