#include "document.hpp"

#include <algorithm>
#include <map>

#include "cbd/error.hpp"
#include "cbd/rational.hpp"

namespace cbd::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& message, const std::string& path) {
  throw Error(ErrorCode::ParseError, message, path);
}

const json& field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) parse_fail("expected an object", path);
  auto it = object.find(key);
  if (it == object.end()) parse_fail(std::string("missing \"") + key + "\"", path);
  return *it;
}

std::string text_of(const json& value, const std::string& path) {
  if (!value.is_string()) parse_fail("expected a string", path);
  return value.get<std::string>();
}

std::vector<std::string> strings_of(const json& value, const std::string& path) {
  if (!value.is_array()) parse_fail("expected an array of strings", path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(text_of(value[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Rational probability_of(const json& value, const std::string& path) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long>());
  parse_fail("probability must be a string such as \"1/2\" or an integer", path);
}

ValueKind kind_of(const json& value, const std::string& path) {
  const auto text = text_of(value, path);
  if (text == "categorical") return ValueKind::categorical;
  if (text == "ordered") return ValueKind::ordered;
  parse_fail("kind must be \"categorical\" or \"ordered\"", path);
}

}  // namespace

SystemSpec parse_system_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(e.what(), "byte " + std::to_string(e.byte));
  }

  SystemSpec spec;
  const auto& contents = field(doc, "contents", "$");
  if (!contents.is_array()) parse_fail("expected an array", "contents");
  for (std::size_t i = 0; i < contents.size(); ++i) {
    const auto path = "contents[" + std::to_string(i) + "]";
    const auto& item = contents[i];
    Content content;
    content.id = text_of(field(item, "id", path), path + ".id");
    content.space.labels = strings_of(field(item, "labels", path), path + ".labels");
    content.space.kind = item.contains("kind") ? kind_of(item["kind"], path + ".kind") : ValueKind::categorical;
    if (item.contains("vicinities")) {
      const auto& vs = item["vicinities"];
      if (!vs.is_array()) parse_fail("expected an array of label lists", path + ".vicinities");
      std::vector<LabelSet> vicinities;
      for (std::size_t v = 0; v < vs.size(); ++v) {
        const auto vpath = path + ".vicinities[" + std::to_string(v) + "]";
        LabelSet set;
        for (const auto& label : strings_of(vs[v], vpath)) {
          auto index = content.space.find(label);
          if (!index) throw Error(ErrorCode::UnknownLabel, "'" + label + "' is not a label", "content " + content.id);
          set = set.with(*index);
        }
        vicinities.push_back(set);
      }
      content.space.vicinities = std::move(vicinities);
    }
    spec.contents.push_back(std::move(content));
  }

  const auto& contexts = field(doc, "contexts", "$");
  if (!contexts.is_array()) parse_fail("expected an array", "contexts");
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const auto path = "contexts[" + std::to_string(i) + "]";
    const auto& item = contexts[i];
    ContextSpec ctx;
    ctx.id = text_of(field(item, "id", path), path + ".id");
    ctx.measures = strings_of(field(item, "measures", path), path + ".measures");
    const auto& atoms = field(item, "atoms", path);
    if (!atoms.is_array()) parse_fail("expected an array", path + ".atoms");
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const auto apath = path + ".atoms[" + std::to_string(a) + "]";
      AtomSpec atom;
      atom.values = strings_of(field(atoms[a], "values", apath), apath + ".values");
      try {
        atom.probability = probability_of(field(atoms[a], "p", apath), apath + ".p");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ParseError || !e.where().empty()) throw;
        throw Error(ErrorCode::ParseError, e.what(), "context " + ctx.id);
      }
      ctx.atoms.push_back(std::move(atom));
    }
    spec.contexts.push_back(std::move(ctx));
  }
  return spec;
}

System parse_system(std::string_view text) { return validate_system(parse_system_spec(text)); }

json system_to_json(const System& system) {
  const auto spec = system.to_spec();
  json doc;
  doc["contents"] = json::array();
  for (const auto& content : spec.contents) {
    json item{{"id", content.id}, {"kind", std::string(to_string(content.space.kind))}, {"labels", content.space.labels}};
    if (content.space.vicinities) {
      json vs = json::array();
      for (auto v : *content.space.vicinities) {
        json labels = json::array();
        for (auto x : v.indices()) labels.push_back(content.space.labels[x]);
        vs.push_back(std::move(labels));
      }
      item["vicinities"] = std::move(vs);
    }
    doc["contents"].push_back(std::move(item));
  }
  doc["contexts"] = json::array();
  for (const auto& ctx : spec.contexts) {
    json atoms = json::array();
    for (const auto& atom : ctx.atoms) atoms.push_back({{"values", atom.values}, {"p", to_string(atom.probability)}});
    doc["contexts"].push_back({{"id", ctx.id}, {"measures", ctx.measures}, {"atoms", std::move(atoms)}});
  }
  return doc;
}

std::optional<std::size_t> locate_line(std::string_view text, const Error& error) {
  const std::string& where = error.where();
  std::size_t offset = std::string_view::npos;
  auto line_of = [&](std::size_t pos) {
    return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
  };

  if (where.rfind("byte ", 0) == 0) {
    offset = std::stoul(where.substr(5));
    return line_of(std::min(offset == 0 ? 0 : offset - 1, text.size()));
  }
  for (const auto& [prefix, section] : {std::pair{"context ", "\"contexts\""}, std::pair{"content ", "\"contents\""}}) {
    if (where.rfind(prefix, 0) != 0) continue;
    std::string id = where.substr(std::string(prefix).size());
    if (auto atom = id.find(" atom"); atom != std::string::npos) id.resize(atom);
    const auto start = text.find(section);
    if (start == std::string_view::npos) return std::nullopt;
    const auto quoted = "\"" + id + "\"";
    for (auto pos = text.find(quoted, start); pos != std::string_view::npos; pos = text.find(quoted, pos + 1)) {
      // Only an "id" key counts, not the same string used as a label.
      auto colon = text.rfind(':', pos);
      auto key = text.rfind("\"id\"", pos);
      if (key != std::string_view::npos && colon != std::string_view::npos && colon > key &&
          text.substr(key, pos - key).find_first_of(",{}[]") == std::string_view::npos)
        return line_of(pos);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

json coupling_to_json(const System& system, const Coupling& coupling) {
  const auto vars = system.variables();
  json variables = json::array();
  for (const auto& v : vars)
    variables.push_back({{"content", system.content(v.content).id}, {"context", system.context(v.context).id}});
  json atoms = json::array();
  for (const auto& atom : coupling.atoms) {
    json values = json::object();
    for (std::size_t i = 0; i < vars.size(); ++i)
      values[coupling.variables[i]] = system.content(vars[i].content).space.labels[atom.values[i]];
    atoms.push_back({{"values", std::move(values)}, {"p", to_string(atom.probability)}});
  }
  return {{"variables", std::move(variables)}, {"atoms", std::move(atoms)}};
}

Coupling coupling_from_json(const System& system, const json& doc) {
  const auto vars = system.variables();
  const auto& listed = field(doc, "variables", "witness");
  if (!listed.is_array() || listed.size() != vars.size())
    throw Error(ErrorCode::NotACoupling, "variable list does not match the system", "witness");

  Coupling out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto content = text_of(field(listed[i], "content", "witness.variables"), "witness.variables");
    const auto context = text_of(field(listed[i], "context", "witness.variables"), "witness.variables");
    if (system.content_index(content) != vars[i].content || system.context_index(context) != vars[i].context)
      throw Error(ErrorCode::NotACoupling, "variable " + std::to_string(i) + " is out of order", "witness");
    out.variables.push_back(content + "@" + context);
  }

  const auto& atoms = field(doc, "atoms", "witness");
  if (!atoms.is_array()) parse_fail("expected an array", "witness.atoms");
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    const auto path = "witness.atoms[" + std::to_string(a) + "]";
    const auto& values = field(atoms[a], "values", path);
    CouplingAtom atom{{}, probability_of(field(atoms[a], "p", path), path + ".p")};
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const auto label = text_of(field(values, out.variables[i].c_str(), path), path);
      auto index = system.content(vars[i].content).space.find(label);
      if (!index) throw Error(ErrorCode::UnknownLabel, "'" + label + "'", path);
      atom.values.push_back(*index);
    }
    out.atoms.push_back(std::move(atom));
  }
  return canonical(std::move(out));
}

json verdict_to_json(const System& system, const PlanSummary& plan, const Verdict& verdict) {
  json summary{{"kind", plan.kind}};
  if (plan.plan) {
    json sizes = json::object();
    for (std::size_t q = 0; q < system.contents().size(); ++q)
      sizes[system.content(q).id] = plan.plan->families[q].size();
    summary["splits"] = std::move(sizes);
  }
  json diagnostics{{"lp_variables", verdict.lp_variables},
                   {"lp_rows", verdict.lp_rows},
                   {"lp_active_variables", verdict.lp_active_variables},
                   {"pivots", verdict.pivots}};
  if (!verdict.noncontextual()) diagnostics["residual"] = to_string(verdict.residual);

  json doc{{"tool", "cbd"},
           {"version", CBD_VERSION},
           {"status", std::string(to_string(verdict.status))},
           {"plan", std::move(summary)},
           {"diagnostics", std::move(diagnostics)}};
  if (verdict.witness) doc["witness"] = coupling_to_json(system, *verdict.witness);
  return doc;
}

}  // namespace cbd::cli
