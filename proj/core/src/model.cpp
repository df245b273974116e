#include "cbd/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cbd/error.hpp"

namespace cbd {

std::string_view to_string(ValueKind kind) {
  return kind == ValueKind::ordered ? "ordered" : "categorical";
}

std::optional<std::size_t> ValueSpace::find(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

namespace {

void check_value_space(const Content& content) {
  const auto& space = content.space;
  if (space.labels.empty())
    throw Error(ErrorCode::InvalidValueSpace, "value space has no labels", "content " + content.id);
  if (space.labels.size() > kMaxLabels)
    throw Error(ErrorCode::InvalidValueSpace, "more than 64 labels", "content " + content.id);
  std::set<std::string_view> seen;
  for (const auto& label : space.labels)
    if (!seen.insert(label).second)
      throw Error(ErrorCode::InvalidValueSpace, "duplicate label '" + label + "'", "content " + content.id);
  if (space.vicinities) {
    LabelSet covered;
    for (auto v : *space.vicinities) {
      if (v.empty())
        throw Error(ErrorCode::InvalidValueSpace, "empty vicinity", "content " + content.id);
      if (!v.subset_of(space.all()))
        throw Error(ErrorCode::UnknownLabel, "vicinity names a label outside the space", "content " + content.id);
      covered = covered | v;
    }
    if (covered != space.all())
      throw Error(ErrorCode::InvalidValueSpace, "some label has no vicinity", "content " + content.id);
  }
}

}  // namespace

System assemble(std::vector<Content> contents, std::vector<Context> contexts) {
  {
    std::set<std::string_view> ids;
    for (const auto& content : contents) {
      if (!ids.insert(content.id).second)
        throw Error(ErrorCode::DuplicateId, "duplicate content id", "content " + content.id);
      check_value_space(content);
    }
  }
  if (contexts.empty()) throw Error(ErrorCode::EmptyFormat, "system has no contexts");

  std::set<std::string_view> context_ids;
  for (auto& ctx : contexts) {
    const std::string where = "context " + ctx.id;
    if (!context_ids.insert(ctx.id).second) throw Error(ErrorCode::DuplicateId, "duplicate context id", where);
    if (ctx.measured.empty()) throw Error(ErrorCode::EmptyFormat, "context measures no content", where);

    // Sort measured contents ascending and permute atom coordinates alongside.
    std::vector<std::size_t> order(ctx.measured.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ctx.measured[a] < ctx.measured[b]; });
    std::vector<std::size_t> measured;
    for (auto i : order) measured.push_back(ctx.measured[i]);
    for (std::size_t i = 0; i + 1 < measured.size(); ++i)
      if (measured[i] == measured[i + 1])
        throw Error(ErrorCode::DuplicateId, "content measured twice", where);
    for (auto q : measured)
      if (q >= contents.size()) throw Error(ErrorCode::UnknownContent, "content index out of range", where);

    std::vector<BunchAtom> atoms;
    Rational mass = 0;
    for (auto& atom : ctx.atoms) {
      atom.probability.canonicalize();
      if (atom.values.size() != measured.size())
        throw Error(ErrorCode::MalformedAtom, "atom arity differs from the measured contents", where);
      if (atom.probability < 0) throw Error(ErrorCode::NegativeProbability, to_string(atom.probability), where);
      BunchAtom sorted{{}, atom.probability};
      for (auto i : order) sorted.values.push_back(atom.values[i]);
      for (std::size_t k = 0; k < measured.size(); ++k)
        if (sorted.values[k] >= contents[measured[k]].space.size())
          throw Error(ErrorCode::UnknownLabel, "label index out of range for content " + contents[measured[k]].id,
                      where);
      mass += atom.probability;
      atoms.push_back(std::move(sorted));
    }
    if (mass != 1) throw Error(ErrorCode::NonUnitMass, "bunch mass is " + to_string(mass), where);

    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.values < b.values; });
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
      if (atoms[i].values == atoms[i + 1].values) throw Error(ErrorCode::DuplicateAtom, "repeated value tuple", where);
    std::erase_if(atoms, [](const auto& a) { return a.probability == 0; });

    ctx.measured = std::move(measured);
    ctx.atoms = std::move(atoms);
  }

  System system;
  system.contexts_of_.assign(contents.size(), {});
  for (std::size_t c = 0; c < contexts.size(); ++c)
    for (auto q : contexts[c].measured) system.contexts_of_[q].push_back(c);
  system.contents_ = std::move(contents);
  system.contexts_ = std::move(contexts);
  return system;
}

System validate_system(const SystemSpec& spec) {
  std::map<std::string, std::size_t, std::less<>> content_ids;
  for (std::size_t q = 0; q < spec.contents.size(); ++q) {
    if (!content_ids.emplace(spec.contents[q].id, q).second)
      throw Error(ErrorCode::DuplicateId, "duplicate content id", "content " + spec.contents[q].id);
  }

  std::vector<Context> contexts;
  for (const auto& cs : spec.contexts) {
    const std::string where = "context " + cs.id;
    Context ctx{cs.id, {}, {}};
    for (const auto& id : cs.measures) {
      auto it = content_ids.find(id);
      if (it == content_ids.end()) throw Error(ErrorCode::UnknownContent, "unknown content '" + id + "'", where);
      ctx.measured.push_back(it->second);
    }
    for (std::size_t a = 0; a < cs.atoms.size(); ++a) {
      const auto& as = cs.atoms[a];
      const std::string atom_where = where + ", atom " + std::to_string(a);
      if (as.values.size() != ctx.measured.size())
        throw Error(ErrorCode::MalformedAtom, "atom arity differs from the measured contents", atom_where);
      BunchAtom atom{{}, as.probability};
      for (std::size_t k = 0; k < as.values.size(); ++k) {
        const auto& content = spec.contents[ctx.measured[k]];
        auto label = content.space.find(as.values[k]);
        if (!label)
          throw Error(ErrorCode::UnknownLabel, "'" + as.values[k] + "' is not a label of content " + content.id,
                      atom_where);
        atom.values.push_back(*label);
      }
      ctx.atoms.push_back(std::move(atom));
    }
    contexts.push_back(std::move(ctx));
  }
  return assemble(spec.contents, std::move(contexts));
}

std::size_t System::content_index(std::string_view id) const {
  for (std::size_t q = 0; q < contents_.size(); ++q)
    if (contents_[q].id == id) return q;
  throw Error(ErrorCode::UnknownContent, "no content '" + std::string(id) + "'");
}

std::size_t System::context_index(std::string_view id) const {
  for (std::size_t c = 0; c < contexts_.size(); ++c)
    if (contexts_[c].id == id) return c;
  throw Error(ErrorCode::UnknownContext, "no context '" + std::string(id) + "'");
}

std::optional<std::size_t> System::position(std::size_t q, std::size_t c) const {
  const auto& measured = contexts_.at(c).measured;
  auto it = std::lower_bound(measured.begin(), measured.end(), q);
  if (it == measured.end() || *it != q) return std::nullopt;
  return static_cast<std::size_t>(it - measured.begin());
}

std::vector<Variable> System::variables() const {
  std::vector<Variable> out;
  for (std::size_t c = 0; c < contexts_.size(); ++c)
    for (auto q : contexts_[c].measured) out.push_back({q, c});
  return out;
}

Pmf System::marginal(std::size_t q, std::size_t c) const {
  auto pos = position(q, c);
  if (!pos) throw Error(ErrorCode::NotMeasured, contents_.at(q).id + " is not measured", "context " + contexts_[c].id);
  Pmf pmf(contents_[q].space.size(), Rational(0));
  for (const auto& atom : contexts_[c].atoms) pmf[atom.values[*pos]] += atom.probability;
  return pmf;
}

LabelSet System::support_union(std::size_t q) const {
  LabelSet out;
  for (auto c : contexts_of(q)) {
    auto pos = *position(q, c);
    for (const auto& atom : contexts_[c].atoms) out = out.with(atom.values[pos]);
  }
  return out;
}

SystemSpec System::to_spec() const {
  SystemSpec spec;
  spec.contents = contents_;
  for (const auto& ctx : contexts_) {
    ContextSpec cs{ctx.id, {}, {}};
    for (auto q : ctx.measured) cs.measures.push_back(contents_[q].id);
    for (const auto& atom : ctx.atoms) {
      AtomSpec as{{}, atom.probability};
      for (std::size_t k = 0; k < atom.values.size(); ++k)
        as.values.push_back(contents_[ctx.measured[k]].space.labels[atom.values[k]]);
      cs.atoms.push_back(std::move(as));
    }
    spec.contexts.push_back(std::move(cs));
  }
  return spec;
}

// ---------------------------------------------------------------------------

ConnectionView connection(const System& system, std::size_t q) {
  if (q >= system.contents().size()) throw Error(ErrorCode::UnknownContent, "content index out of range");
  ConnectionView view{q, {}};
  for (auto c : system.contexts_of(q)) view.marginals.emplace_back(c, system.marginal(q, c));
  return view;
}

ConnectionView connection(const System& system, std::string_view content_id) {
  return connection(system, system.content_index(content_id));
}

ConsistencyReport is_consistently_connected(const System& system) {
  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    auto view = connection(system, q);
    for (std::size_t k = 1; k < view.marginals.size(); ++k)
      if (view.marginals[k].second != view.marginals[0].second)
        return {false, ConnectionWitness{q, view.marginals[0].first, view.marginals[k].first}};
  }
  return {};
}

namespace {

/// Joint pmf of `shared` contents in context c, keyed by the value tuple.
std::map<std::vector<std::size_t>, Rational> joint_over(const System& system, std::size_t c,
                                                        const std::vector<std::size_t>& shared) {
  std::vector<std::size_t> positions;
  for (auto q : shared) positions.push_back(*system.position(q, c));
  std::map<std::vector<std::size_t>, Rational> joint;
  for (const auto& atom : system.context(c).atoms) {
    std::vector<std::size_t> key;
    for (auto p : positions) key.push_back(atom.values[p]);
    joint[key] += atom.probability;
  }
  return joint;
}

}  // namespace

StrongConsistencyReport is_strongly_consistent(const System& system) {
  const auto& contexts = system.contexts();
  for (std::size_t a = 0; a < contexts.size(); ++a) {
    for (std::size_t b = a + 1; b < contexts.size(); ++b) {
      std::vector<std::size_t> shared;
      std::set_intersection(contexts[a].measured.begin(), contexts[a].measured.end(), contexts[b].measured.begin(),
                            contexts[b].measured.end(), std::back_inserter(shared));
      if (shared.empty()) continue;
      if (joint_over(system, a, shared) != joint_over(system, b, shared)) return {false, std::make_pair(a, b)};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

/// Rebuilds a context with atoms passed through `transform`, merging atoms
/// that collide.
template <typename Transform>
Context remap_atoms(const Context& ctx, std::vector<std::size_t> measured, Transform transform) {
  std::map<std::vector<std::size_t>, Rational> merged;
  for (const auto& atom : ctx.atoms) merged[transform(atom.values)] += atom.probability;
  Context out{ctx.id, std::move(measured), {}};
  for (auto& [values, p] : merged) out.atoms.push_back({values, p});
  return out;
}

}  // namespace

System coarse_grain(const System& system, const CoarseGrainingMap& maps) {
  auto contents = system.contents();
  std::vector<const ContentMap*> by_content(contents.size(), nullptr);
  for (const auto& m : maps) {
    if (m.content >= contents.size()) throw Error(ErrorCode::UnknownContent, "coarse-graining names unknown content");
    const auto& source = contents[m.content];
    const std::string where = "content " + source.id;
    if (m.image.size() != source.space.size())
      throw Error(ErrorCode::UnknownLabel, "map is not total on the source labels", where);
    LabelSet hit;
    for (auto t : m.image) {
      if (t >= m.target.size()) throw Error(ErrorCode::UnknownLabel, "image label outside target space", where);
      hit = hit.with(t);
    }
    if (hit != m.target.all()) throw Error(ErrorCode::NotSurjective, "map misses a target label", where);
    by_content[m.content] = &m;
    contents[m.content].space = m.target;
  }

  std::vector<Context> contexts;
  for (const auto& ctx : system.contexts()) {
    contexts.push_back(remap_atoms(ctx, ctx.measured, [&](const std::vector<std::size_t>& values) {
      auto out = values;
      for (std::size_t k = 0; k < values.size(); ++k)
        if (const auto* m = by_content[ctx.measured[k]]) out[k] = m->image[values[k]];
      return out;
    }));
  }
  return assemble(std::move(contents), std::move(contexts));
}

System drop_variable(const System& system, std::size_t q, std::size_t c) {
  auto pos = system.position(q, c);
  if (!pos)
    throw Error(ErrorCode::NotMeasured, system.content(q).id + " is not measured", "context " + system.context(c).id);
  return subsystem(system, [&] {
    auto vars = system.variables();
    std::erase(vars, Variable{q, c});
    return vars;
  }());
}

System add_deterministic(const System& system, std::size_t q, std::size_t c, std::size_t value) {
  if (q >= system.contents().size()) throw Error(ErrorCode::UnknownContent, "content index out of range");
  const auto& ctx = system.context(c);
  if (system.position(q, c))
    throw Error(ErrorCode::AlreadyMeasured, system.content(q).id + " already measured", "context " + ctx.id);
  if (value >= system.content(q).space.size())
    throw Error(ErrorCode::UnknownLabel, "value outside the content's space", "content " + system.content(q).id);

  auto contexts = system.contexts();
  auto& target = contexts[c];
  target.measured.push_back(q);
  for (auto& atom : target.atoms) atom.values.push_back(value);
  return assemble(system.contents(), std::move(contexts));
}

System subsystem(const System& system, const std::vector<Variable>& keep) {
  if (keep.empty()) throw Error(ErrorCode::EmptyFormat, "subsystem keeps no variables");
  std::set<Variable> kept(keep.begin(), keep.end());
  for (const auto& v : kept)
    if (v.context >= system.contexts().size() || !system.position(v.content, v.context))
      throw Error(ErrorCode::NotMeasured, "kept variable is not in the format relation");

  std::vector<Context> contexts;
  for (std::size_t c = 0; c < system.contexts().size(); ++c) {
    const auto& ctx = system.context(c);
    std::vector<std::size_t> positions, measured;
    for (std::size_t k = 0; k < ctx.measured.size(); ++k)
      if (kept.contains(Variable{ctx.measured[k], c})) {
        positions.push_back(k);
        measured.push_back(ctx.measured[k]);
      }
    if (measured.empty()) continue;
    contexts.push_back(remap_atoms(ctx, std::move(measured), [&](const std::vector<std::size_t>& values) {
      std::vector<std::size_t> out;
      for (auto p : positions) out.push_back(values[p]);
      return out;
    }));
  }
  return assemble(system.contents(), std::move(contexts));
}

}  // namespace cbd
