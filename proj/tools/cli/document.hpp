#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cbd/decide.hpp"
#include "cbd/error.hpp"
#include "cbd/model.hpp"

namespace cbd::cli {

using nlohmann::json;

/// Parses a system document:
///   {"contents": [{"id", "kind", "labels", "vicinities"?}],
///    "contexts": [{"id", "measures", "atoms": [{"values", "p"}]}]}
/// Probabilities are strings ("1/2", "0.25") or integers. Errors: ParseError
/// (where = JSON path) plus every validation error of the model.
SystemSpec parse_system_spec(std::string_view text);
System parse_system(std::string_view text);

json system_to_json(const System& system);

/// 1-based line of the section an error points at ("context X", "content X",
/// or a JSON byte offset in a ParseError message).
std::optional<std::size_t> locate_line(std::string_view text, const Error& error);

/// Witness atoms keyed by "content@context".
json coupling_to_json(const System& system, const Coupling& coupling);
/// Inverse of coupling_to_json, variables in System::variables() order.
/// Errors: ParseError, UnknownLabel, NotACoupling.
Coupling coupling_from_json(const System& system, const json& doc);

struct PlanSummary {
  std::string kind;             // full, cuts, allowable, 12, none, traditional
  std::optional<SplitPlan> plan;
};

json verdict_to_json(const System& system, const PlanSummary& plan, const Verdict& verdict);

}  // namespace cbd::cli
