#include "cbd/decide.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>

#include "cbd/error.hpp"

namespace cbd {

std::size_t default_max_atoms() {
  const char* env = std::getenv("CBD_MAX_ATOMS");
  if (env == nullptr) return kDefaultMaxAtoms;
  std::string_view text(env);
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || value == 0) return kDefaultMaxAtoms;
  return value;
}

std::size_t AtomSpace::size() const {
  std::size_t n = 1;
  for (auto r : radices) n *= r;
  return n;
}

std::vector<std::size_t> AtomSpace::decode(std::size_t index) const {
  std::vector<std::size_t> digits(radices.size());
  for (std::size_t c = 0; c < radices.size(); ++c) {
    digits[c] = index % radices[c];
    index /= radices[c];
  }
  return digits;
}

std::string_view to_string(Status status) {
  return status == Status::noncontextual ? "noncontextual" : "contextual";
}

namespace {

std::string variable_name(const System& system, Variable v) {
  return system.content(v.content).id + "@" + system.context(v.context).id;
}

std::string subset_text(const Content& content, LabelSet subset) {
  std::string out = "{";
  for (auto i : subset.indices()) {
    if (out.size() > 1) out += ",";
    out += content.space.labels[i];
  }
  return out + "}";
}

/// Per-context lookup of a variable's value under each global atom.
class AtomIndex {
 public:
  AtomIndex(const System& system, std::size_t max_atoms) : system_(system) {
    const auto& contexts = system.contexts();
    strides_.resize(contexts.size());
    std::size_t total = 1;
    for (std::size_t c = 0; c < contexts.size(); ++c) {
      const std::size_t radix = contexts[c].atoms.size();
      space_.radices.push_back(radix);
      strides_[c] = total;
      if (radix != 0 && total > max_atoms / radix)
        throw Error(ErrorCode::LpTooLarge,
                    "more than " + std::to_string(max_atoms) +
                        " global atoms; raise CBD_MAX_ATOMS or decide a reduce_12 plan or a subsystem");
      total *= radix;
    }
    if (total > max_atoms)
      throw Error(ErrorCode::LpTooLarge, "more than " + std::to_string(max_atoms) + " global atoms");
    size_ = total;
  }

  const AtomSpace& space() const { return space_; }
  std::size_t size() const { return size_; }

  std::size_t bunch_atom(std::size_t a, std::size_t c) const { return (a / strides_[c]) % space_.radices[c]; }

  /// Label of R_q^c under global atom a; q must be measured in c.
  std::size_t value(std::size_t a, std::size_t q, std::size_t c) const {
    const auto pos = *system_.position(q, c);
    return system_.context(c).atoms[bunch_atom(a, c)].values[pos];
  }

 private:
  const System& system_;
  AtomSpace space_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

FeasibilityLp with_bunch_rows(const System& system, const AtomIndex& index) {
  FeasibilityLp out;
  out.atoms = index.space();
  out.lp.variables = index.size();
  std::vector<std::size_t> first_row;
  for (std::size_t c = 0; c < system.contexts().size(); ++c) {
    first_row.push_back(out.lp.rows.size());
    const auto& ctx = system.context(c);
    for (std::size_t v = 0; v < ctx.atoms.size(); ++v)
      out.lp.rows.push_back({{}, ctx.atoms[v].probability, RowKind::bunch,
                             "bunch " + ctx.id + " #" + std::to_string(v)});
  }
  for (std::size_t a = 0; a < index.size(); ++a)
    for (std::size_t c = 0; c < system.contexts().size(); ++c)
      out.lp.rows[first_row[c] + index.bunch_atom(a, c)].entries.emplace_back(a, Rational(1));
  return out;
}

/// Row of every global atom satisfying `pick`, all coefficients 1.
template <typename Pick>
LpRow collect(const AtomIndex& index, Rational rhs, RowKind kind, std::string label, Pick pick) {
  LpRow row{{}, std::move(rhs), kind, std::move(label)};
  for (std::size_t a = 0; a < index.size(); ++a)
    if (pick(a)) row.entries.emplace_back(a, Rational(1));
  return row;
}

Rational mass_in(const Pmf& pmf, LabelSet subset) {
  Rational total = 0;
  for (auto i : subset.indices())
    if (i < pmf.size()) total += pmf[i];
  return total;
}

Verdict solve(const System& system, const FeasibilityLp& problem) {
  const auto solution = lp_feasible(problem.lp);
  Verdict verdict;
  verdict.lp_variables = problem.lp.variables;
  verdict.lp_rows = problem.lp.rows.size();
  verdict.lp_active_variables = solution.active_variables;
  verdict.pivots = solution.pivots;
  if (solution.feasible) {
    verdict.status = Status::noncontextual;
    verdict.witness = witness_from_solution(system, problem.atoms, solution.values);
  } else {
    verdict.status = Status::contextual;
    verdict.residual = solution.residual;
  }
  return verdict;
}

std::vector<std::size_t> variable_slots(const System& system, std::size_t q) {
  const auto vars = system.variables();
  std::vector<std::size_t> slots;
  for (auto c : system.contexts_of(q)) {
    auto it = std::find(vars.begin(), vars.end(), Variable{q, c});
    slots.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  return slots;
}

}  // namespace

FeasibilityLp build_feasibility_lp(const System& system, const SplitPlan& plan, const LpOptions& options) {
  check_plan(system, plan);
  AtomIndex index(system, options.max_atoms);
  auto out = with_bunch_rows(system, index);

  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    const auto& cs = system.contexts_of(q);
    std::vector<Pmf> pmfs;
    for (auto c : cs) pmfs.push_back(system.marginal(q, c));
    for (auto subset : plan.families[q]) {
      const auto name = system.content(q).id + ":" + subset_text(system.content(q), subset);
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
          const auto c = cs[i], c2 = cs[j];
          const Rational p = mass_in(pmfs[i], subset), p2 = mass_in(pmfs[j], subset);
          auto label = "mm " + name + " " + system.context(c).id + "," + system.context(c2).id;
          if (options.encoding == MultimaxEncoding::min_joint) {
            out.lp.rows.push_back(collect(index, std::min(p, p2), RowKind::multimaximal, std::move(label), [&](auto a) {
              return subset.contains(index.value(a, q, c)) && subset.contains(index.value(a, q, c2));
            }));
            continue;
          }
          // The less likely event must sit inside the more likely one.
          const bool forbid_out_in = p >= p2, forbid_in_out = p2 >= p;
          out.lp.rows.push_back(collect(index, Rational(0), RowKind::multimaximal, std::move(label), [&](auto a) {
            const bool in = subset.contains(index.value(a, q, c));
            const bool in2 = subset.contains(index.value(a, q, c2));
            return (forbid_out_in && !in && in2) || (forbid_in_out && in && !in2);
          }));
        }
    }
  }
  return out;
}

FeasibilityLp build_traditional_lp(const System& system, const LpOptions& options) {
  const auto report = is_consistently_connected(system);
  if (!report.consistent) {
    const auto& w = *report.witness;
    throw Error(ErrorCode::InconsistentlyConnected,
                "distributions differ between contexts " + system.context(w.context_a).id + " and " +
                    system.context(w.context_b).id + ", so no identity coupling exists",
                "content " + system.content(w.content).id);
  }
  AtomIndex index(system, options.max_atoms);
  auto out = with_bunch_rows(system, index);
  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    const auto& cs = system.contexts_of(q);
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        const auto c = cs[i], c2 = cs[j];
        out.lp.rows.push_back(collect(index, Rational(0), RowKind::identity,
                                      "identity " + system.content(q).id + " " + system.context(c).id + "," +
                                          system.context(c2).id,
                                      [&](auto a) { return index.value(a, q, c) != index.value(a, q, c2); }));
      }
  }
  return out;
}

FeasibilityLp build_unsplit_lp(const System& system, const LpOptions& options) {
  AtomIndex index(system, options.max_atoms);
  auto out = with_bunch_rows(system, index);
  // Pr[S = S'] = sum_x min(p(x), p'(x)) holds iff for every x the smaller event
  // {S = x} or {S' = x} lies inside the other.
  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    const auto& cs = system.contexts_of(q);
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        const auto c = cs[i], c2 = cs[j];
        const auto p = system.marginal(q, c), p2 = system.marginal(q, c2);
        for (std::size_t x = 0; x < p.size(); ++x) {
          if (p[x] == 0 && p2[x] == 0) continue;
          const bool first_smaller = p[x] <= p2[x];
          out.lp.rows.push_back(collect(index, Rational(0), RowKind::agreement,
                                        "agree " + system.content(q).id + "=" + system.content(q).space.labels[x] +
                                            " " + system.context(c).id + "," + system.context(c2).id,
                                        [&](auto a) {
                                          const bool in = index.value(a, q, c) == x;
                                          const bool in2 = index.value(a, q, c2) == x;
                                          return first_smaller ? (in && !in2) : (!in && in2);
                                        }));
        }
      }
  }
  return out;
}

Verdict decide_contextuality(const System& system, const SplitPlan& plan, const LpOptions& options) {
  return solve(system, build_feasibility_lp(system, plan, options));
}

Verdict decide_traditional(const System& system, const LpOptions& options) {
  return solve(system, build_traditional_lp(system, options));
}

Verdict decide_unsplit(const System& system, const LpOptions& options) {
  return solve(system, build_unsplit_lp(system, options));
}

Coupling witness_from_solution(const System& system, const AtomSpace& atoms, const std::vector<Rational>& values) {
  const auto vars = system.variables();
  Coupling out;
  for (const auto& v : vars) out.variables.push_back(variable_name(system, v));
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (values[a] == 0) continue;
    const auto digits = atoms.decode(a);
    CouplingAtom atom{{}, values[a]};
    for (const auto& v : vars) {
      const auto pos = *system.position(v.content, v.context);
      atom.values.push_back(system.context(v.context).atoms[digits[v.context]].values[pos]);
    }
    out.atoms.push_back(std::move(atom));
  }
  return canonical(std::move(out));
}

// ---------------------------------------------------------------------------

std::optional<std::string> verify_coupling(const System& system, const Coupling& coupling) {
  const auto vars = system.variables();
  if (coupling.arity() != vars.size()) return "coupling has " + std::to_string(coupling.arity()) + " variables, system has " + std::to_string(vars.size());
  Rational total = 0;
  for (const auto& atom : coupling.atoms) {
    if (atom.values.size() != vars.size()) return std::string("atom arity differs from the variable list");
    if (atom.probability < 0) return "negative atom probability " + to_string(atom.probability);
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (atom.values[i] >= system.content(vars[i].content).space.size())
        return "value outside the space of " + variable_name(system, vars[i]);
    total += atom.probability;
  }
  if (total != 1) return "total mass " + to_string(total);

  for (std::size_t c = 0; c < system.contexts().size(); ++c) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].context == c) keep.push_back(i);
    const auto projected = coupling.project(keep);
    const auto& bunch = system.context(c).atoms;
    bool same = projected.atoms.size() == bunch.size();
    for (std::size_t k = 0; same && k < bunch.size(); ++k)
      same = projected.atoms[k].values == bunch[k].values && projected.atoms[k].probability == bunch[k].probability;
    if (!same) return "bunch of context " + system.context(c).id + " is not reproduced";
  }
  return std::nullopt;
}

std::optional<std::string> verify_witness(const System& system, const SplitPlan& plan, const Coupling& coupling) {
  if (auto problem = verify_coupling(system, coupling)) return problem;
  check_plan(system, plan);
  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    const auto slots = variable_slots(system, q);
    const auto joint = coupling.project(slots);
    for (auto subset : plan.families[q]) {
      std::vector<LabelSet> subsets(slots.size(), subset);
      const auto check = check_multimaximal_binary(indicator_coupling(joint, subsets));
      if (!check.ok())
        return "split " + system.content(q).id + ":" + subset_text(system.content(q), subset) +
               " is not maximal between " + joint.variables[check.violation->i] + " and " +
               joint.variables[check.violation->j];
    }
  }
  return std::nullopt;
}

std::optional<std::string> verify_traditional_witness(const System& system, const Coupling& coupling) {
  if (auto problem = verify_coupling(system, coupling)) return problem;
  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    const auto slots = variable_slots(system, q);
    for (const auto& atom : coupling.atoms)
      for (auto s : slots)
        if (atom.values[s] != atom.values[slots.front()])
          return "connection " + system.content(q).id + " is not an identity coupling";
  }
  return std::nullopt;
}

std::optional<std::string> verify_unsplit_witness(const System& system, const Coupling& coupling) {
  if (auto problem = verify_coupling(system, coupling)) return problem;
  for (std::size_t q = 0; q < system.contents().size(); ++q) {
    const auto slots = variable_slots(system, q);
    const auto& cs = system.contexts_of(q);
    for (std::size_t i = 0; i < slots.size(); ++i)
      for (std::size_t j = i + 1; j < slots.size(); ++j) {
        const auto p = system.marginal(q, cs[i]), p2 = system.marginal(q, cs[j]);
        Rational bound = 0, agree = 0;
        for (std::size_t x = 0; x < p.size(); ++x) bound += std::min(p[x], p2[x]);
        for (const auto& atom : coupling.atoms)
          if (atom.values[slots[i]] == atom.values[slots[j]]) agree += atom.probability;
        if (agree != bound)
          return "agreement " + to_string(agree) + " of " + coupling.variables[slots[i]] + " and " +
                 coupling.variables[slots[j]] + " is below the maximum " + to_string(bound);
      }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

bool nominal_dominance(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::MismatchedSupport, "pmfs over different value sets");
  std::size_t below = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < q[i]) ++below;
  return below <= 1;
}

std::optional<Alignment> dominance_aligned(std::span<const Pmf> pmfs) {
  if (pmfs.empty()) return std::nullopt;
  const std::size_t k = pmfs.front().size();
  for (const auto& pmf : pmfs)
    if (pmf.size() != k) return std::nullopt;
  std::vector<std::size_t> order(pmfs.size());
  for (std::size_t star = 0; star < std::max<std::size_t>(k, 1); ++star) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
      for (std::size_t i = 0; i < k; ++i) {
        if (i == star || pmfs[a][i] == pmfs[b][i]) continue;
        return pmfs[a][i] < pmfs[b][i];
      }
      return false;
    };
    // A coordinatewise chain, if any, is a lexicographic order.
    std::stable_sort(order.begin(), order.end(), less);
    bool chain = true;
    for (std::size_t j = 1; chain && j < order.size(); ++j)
      for (std::size_t i = 0; chain && i < k; ++i)
        if (i != star && pmfs[order[j - 1]][i] > pmfs[order[j]][i]) chain = false;
    if (chain) return Alignment{order, star};
  }
  return std::nullopt;
}

Coupling aligned_coupling(std::span<const Pmf> pmfs, const Alignment& alignment) {
  std::vector<Pmf> sorted;
  for (auto j : alignment.order) sorted.push_back(pmfs[j]);
  const auto nested = nested_events_coupling(sorted, alignment.exceptional);
  Coupling out;
  for (std::size_t j = 0; j < pmfs.size(); ++j) out.variables.push_back(std::to_string(j));
  for (const auto& atom : nested.atoms) {
    CouplingAtom back{std::vector<std::size_t>(pmfs.size()), atom.probability};
    for (std::size_t j = 0; j < alignment.order.size(); ++j) back.values[alignment.order[j]] = atom.values[j];
    out.atoms.push_back(std::move(back));
  }
  return canonical(std::move(out));
}

namespace {

Coupling renamed(Coupling coupling, const System& system) {
  const auto vars = system.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) coupling.variables[i] = variable_name(system, vars[i]);
  return coupling;
}

}  // namespace

Verdict two_variable_categorical(const Pmf& p, const Pmf& q) {
  const bool dominated = nominal_dominance(p, q) || nominal_dominance(q, p);
  Verdict verdict;
  verdict.status = dominated ? Status::noncontextual : Status::contextual;
  if (dominated) {
    const std::vector<Pmf> pmfs{p, q};
    const auto alignment = dominance_aligned(pmfs);
    if (!alignment) throw Error(ErrorCode::NotAligned, "dominant pair without an alignment");
    verdict.witness = renamed(aligned_coupling(pmfs, *alignment), single_connection_system(pmfs, ValueKind::categorical));
  }
  return verdict;
}

Verdict decide_single_connection_cuts(std::span<const Pmf> pmfs) {
  std::vector<CdfTable> cdfs;
  for (const auto& pmf : pmfs) cdfs.push_back(CdfTable::from_pmf(pmf));
  Verdict verdict;
  verdict.status = Status::noncontextual;
  verdict.witness = renamed(quantile_coupling(cdfs), single_connection_system(pmfs, ValueKind::ordered));
  return verdict;
}

System single_connection_system(std::span<const Pmf> pmfs, ValueKind kind, std::vector<std::string> labels) {
  if (pmfs.empty()) throw Error(ErrorCode::EmptyFormat, "connection without variables");
  const std::size_t k = pmfs.front().size();
  if (labels.empty())
    for (std::size_t x = 0; x < k; ++x) labels.push_back(std::to_string(x + 1));
  if (labels.size() != k) throw Error(ErrorCode::MismatchedSupport, "label count differs from pmf length");

  std::vector<Content> contents{{"q", {std::move(labels), kind, std::nullopt}}};
  std::vector<Context> contexts;
  for (std::size_t j = 0; j < pmfs.size(); ++j) {
    if (pmfs[j].size() != k) throw Error(ErrorCode::MismatchedSupport, "pmfs over different value sets");
    Context ctx{std::to_string(j + 1), {0}, {}};
    for (std::size_t x = 0; x < k; ++x)
      if (pmfs[j][x] != 0) ctx.atoms.push_back({{x}, pmfs[j][x]});
    contexts.push_back(std::move(ctx));
  }
  return assemble(std::move(contents), std::move(contexts));
}

}  // namespace cbd
