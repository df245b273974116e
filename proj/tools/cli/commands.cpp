#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cbd/error.hpp"
#include "cbd/split.hpp"
#include "cbd/vspace.hpp"
#include "document.hpp"

namespace cbd::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read file", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Reporter {
  std::ostream& err;
  bool quiet = false;

  template <typename... Parts>
  void log(const Parts&... parts) const {
    if (quiet) return;
    err << "cbd: ";
    (err << ... << parts);
    err << '\n';
  }
};

int fail(std::ostream& out, const Reporter& reporter, const std::string& text, const Error& error) {
  const auto line = locate_line(text, error);
  json doc{{"error", std::string(to_string(error.code()))}, {"message", error.what()}};
  if (!error.where().empty()) doc["where"] = error.where();
  if (line) doc["line"] = *line;
  out << doc.dump(2) << '\n';
  // Errors reach stderr even under --quiet.
  reporter.err << "error: " << error.what();
  if (line) reporter.err << " (line " << *line << ")";
  reporter.err << '\n';
  return kExitError;
}

LabelSet parse_subset(const Content& content, const std::string& text) {
  LabelSet set;
  std::string body = text;
  if (!body.empty() && body.front() == '{' && body.back() == '}') body = body.substr(1, body.size() - 2);
  std::stringstream stream(body);
  for (std::string label; std::getline(stream, label, ',');) {
    label.erase(0, label.find_first_not_of(' '));
    label.erase(label.find_last_not_of(' ') + 1);
    auto index = content.space.find(label);
    if (!index) throw Error(ErrorCode::UnknownLabel, "'" + label + "' is not a label", "content " + content.id);
    set = set.with(*index);
  }
  return set;
}

json labels_json(const Content& content, LabelSet set) {
  json out = json::array();
  for (auto x : set.indices()) out.push_back(content.space.labels[x]);
  return out;
}

int cmd_validate(const std::string& text, std::ostream& out, const Reporter& reporter) {
  const auto system = parse_system(text);
  out << json{{"valid", true}, {"contents", system.contents().size()}, {"contexts", system.contexts().size()}}.dump(2)
      << '\n';
  reporter.log("valid system with ", system.contents().size(), " contents and ", system.contexts().size(),
               " contexts");
  return 0;
}

int cmd_decide(const std::string& text, const std::string& plan_name, bool traditional, std::ostream& out,
               const Reporter& reporter) {
  const auto system = parse_system(text);
  PlanSummary summary;
  Verdict verdict;
  if (traditional) {
    summary.kind = "traditional";
    verdict = decide_traditional(system);
  } else if (plan_name == "none") {
    summary.kind = "none";
    verdict = decide_unsplit(system);
  } else {
    auto kind = parse_plan_kind(plan_name);
    if (!kind) throw Error(ErrorCode::ParseError, "unknown plan '" + plan_name + "'", "--plan");
    summary.kind = plan_name;
    summary.plan = make_plan(system, *kind);
    verdict = decide_contextuality(system, *summary.plan);
  }
  reporter.log("plan ", summary.kind, ": ", verdict.lp_variables, " atoms, ", verdict.lp_rows, " rows, ",
               verdict.lp_active_variables, " after presolve, ", verdict.pivots, " pivots -> ",
               to_string(verdict.status));
  out << verdict_to_json(system, summary, verdict).dump(2) << '\n';
  return verdict.noncontextual() ? kExitNoncontextual : kExitContextual;
}

int cmd_vspace(const std::string& text, const std::string& content_id, bool list, const std::string& check,
               std::ostream& out, const Reporter& reporter) {
  const auto system = parse_system(text);
  const auto& content = system.content(system.content_index(content_id));
  const auto space = vspace_of(content.space);
  if (list) {
    json items = json::array();
    for (const auto& d : allowable_dichotomizations(space))
      items.push_back({{"part0", labels_json(content, d.part0)}, {"part1", labels_json(content, d.part1)}});
    reporter.log(items.size(), " allowable dichotomizations of ", content.id);
    out << json{{"content", content.id}, {"count", items.size()}, {"allowable", std::move(items)}}.dump(2) << '\n';
    return 0;
  }
  const auto subset = parse_subset(content, check);
  const bool linked = is_vlinked(space, subset);
  reporter.log(check, linked ? " is V-linked" : " is not V-linked");
  out << json{{"content", content.id}, {"subset", labels_json(content, subset)}, {"vlinked", linked}}.dump(2) << '\n';
  return 0;
}

int cmd_couple(const std::string& text, const std::string& target, std::ostream& out, const Reporter& reporter) {
  const auto system = parse_system(text);
  std::size_t q = 0;
  std::optional<LabelSet> subset;
  if (target.find(':') != std::string::npos) {
    auto parsed = parse_split_content_id(system, target);
    q = parsed.first;
    subset = parsed.second;
  } else {
    q = system.content_index(target);
  }
  const auto& content = system.content(q);
  if (!subset && content.space.size() > 2)
    throw Error(ErrorCode::NotBinary, "content has " + std::to_string(content.space.size()) + " values; address a split as q:{...}",
                "content " + content.id);

  std::vector<Rational> ones;
  for (auto c : system.contexts_of(q)) {
    const auto pmf = system.marginal(q, c);
    if (subset) {
      Rational p = 0;
      for (auto x : subset->indices()) p += pmf[x];
      ones.push_back(p);
    } else {
      ones.push_back(pmf.size() > 1 ? pmf[1] : Rational(0));
    }
  }
  const auto coupling = multimaximal_binary(ones);

  auto label = [&](std::size_t bit) -> std::string {
    if (subset) return bit ? "1" : "0";
    return content.space.labels[std::min(bit, content.space.size() - 1)];
  };
  json contexts = json::array();
  for (auto c : system.contexts_of(q)) contexts.push_back(system.context(c).id);
  json atoms = json::array();
  for (const auto& atom : coupling.atoms) {
    json values = json::object();
    for (std::size_t i = 0; i < atom.values.size(); ++i) values[contexts[i].get<std::string>()] = label(atom.values[i]);
    atoms.push_back({{"values", std::move(values)}, {"p", to_string(atom.probability)}});
  }
  const auto name = subset ? split_content_id(content, *subset) : content.id;
  reporter.log("multimaximal coupling of ", name, ": ", coupling.atoms.size(), " atoms");
  out << json{{"content", name}, {"contexts", std::move(contexts)}, {"atoms", std::move(atoms)}}.dump(2) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextuality-by-Default decisions for systems of random variables", "cbd"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "suppress logs on stderr");

  std::string file, plan = "full", content, check;
  bool traditional = false, list = false;

  auto* validate = app.add_subcommand("validate", "check a system document");
  validate->add_option("FILE", file)->required();

  auto* decide = app.add_subcommand("decide", "decide contextuality (exit 0 noncontextual, 1 contextual)");
  decide->add_option("FILE", file)->required();
  decide->add_option("--plan", plan, "full | cuts | allowable | 12 | none")->capture_default_str();
  decide->add_flag("--traditional", traditional, "identity couplings; consistently connected systems only");
  decide->add_flag("--quiet,-q", quiet, "suppress logs on stderr");

  auto* vspace = app.add_subcommand("vspace", "inspect a content's V-space");
  vspace->add_option("FILE", file)->required();
  vspace->add_option("CONTENT", content)->required();
  auto* list_opt = vspace->add_flag("--list-allowable", list, "list allowable dichotomizations");
  auto* check_opt = vspace->add_option("--check", check, "report V-linkedness of a comma-separated subset");
  list_opt->excludes(check_opt);
  vspace->add_flag("--quiet,-q", quiet, "suppress logs on stderr");

  auto* couple = app.add_subcommand("couple", "multimaximal coupling of a binary connection");
  couple->add_option("FILE", file)->required();
  couple->add_option("CONTENT", content, "content id, or q:{labels} for a split")->required();
  couple->add_flag("--quiet,-q", quiet, "suppress logs on stderr");

  for (auto* sub : {validate}) sub->add_flag("--quiet,-q", quiet, "suppress logs on stderr");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (vspace->parsed() && !list && check_opt->count() == 0)
      throw CLI::ValidationError("vspace", "one of --list-allowable or --check is required");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  Reporter reporter{err, quiet};
  std::string text;
  try {
    text = read_file(file);
    if (validate->parsed()) return cmd_validate(text, out, reporter);
    if (decide->parsed()) return cmd_decide(text, plan, traditional, out, reporter);
    if (vspace->parsed()) return cmd_vspace(text, content, list, check, out, reporter);
    return cmd_couple(text, content, out, reporter);
  } catch (const Error& e) {
    return fail(out, reporter, text, e);
  }
}

}  // namespace cbd::cli
