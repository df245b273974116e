#include "cbd/coupling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cbd/error.hpp"

namespace cbd {

Rational Coupling::total_mass() const {
  Rational total = 0;
  for (const auto& atom : atoms) total += atom.probability;
  return total;
}

Pmf Coupling::marginal(std::size_t i, std::size_t labels) const {
  Pmf pmf(labels, Rational(0));
  for (const auto& atom : atoms) {
    if (atom.values.at(i) >= labels) throw Error(ErrorCode::NotACoupling, "atom value outside the value space");
    pmf[atom.values[i]] += atom.probability;
  }
  return pmf;
}

Coupling Coupling::project(std::span<const std::size_t> keep) const {
  Coupling out;
  for (auto i : keep) out.variables.push_back(variables.at(i));
  for (const auto& atom : atoms) {
    CouplingAtom projected{{}, atom.probability};
    for (auto i : keep) projected.values.push_back(atom.values[i]);
    out.atoms.push_back(std::move(projected));
  }
  return canonical(std::move(out));
}

Coupling canonical(Coupling coupling) {
  std::map<std::vector<std::size_t>, Rational> merged;
  for (auto& atom : coupling.atoms) merged[atom.values] += atom.probability;
  coupling.atoms.clear();
  for (auto& [values, p] : merged)
    if (p != 0) coupling.atoms.push_back({values, p});
  return coupling;
}

bool is_coupling_of(const Coupling& coupling, std::span<const Pmf> marginals) {
  if (marginals.size() != coupling.arity()) return false;
  for (const auto& atom : coupling.atoms) {
    if (atom.probability < 0 || atom.values.size() != coupling.arity()) return false;
    for (std::size_t i = 0; i < atom.values.size(); ++i)
      if (atom.values[i] >= marginals[i].size()) return false;
  }
  for (std::size_t i = 0; i < marginals.size(); ++i)
    if (coupling.marginal(i, marginals[i].size()) != marginals[i]) return false;
  return true;
}

Coupling indicator_coupling(const Coupling& coupling, std::span<const LabelSet> subsets) {
  Coupling out;
  out.variables = coupling.variables;
  for (const auto& atom : coupling.atoms) {
    CouplingAtom binary{{}, atom.probability};
    for (std::size_t i = 0; i < atom.values.size(); ++i) binary.values.push_back(subsets[i].contains(atom.values[i]));
    out.atoms.push_back(std::move(binary));
  }
  return canonical(std::move(out));
}

// ---------------------------------------------------------------------------

Coupling multimaximal_binary(std::span<const Rational> ones) {
  const std::size_t n = ones.size();
  for (const auto& p : ones)
    if (!is_probability(p)) throw Error(ErrorCode::OutOfRange, "probability " + to_string(p) + " outside [0,1]");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return ones[a] > ones[b]; });

  Coupling out;
  for (std::size_t i = 0; i < n; ++i) out.variables.push_back(std::to_string(i));
  // Atom k: the k largest-probability variables are 1.
  std::vector<std::size_t> values(n, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    Rational upper = k == 0 ? Rational(1) : ones[order[k - 1]];
    Rational lower = k == n ? Rational(0) : ones[order[k]];
    if (k > 0) values[order[k - 1]] = 1;
    if (upper - lower != 0) out.atoms.push_back({values, upper - lower});
  }
  return canonical(std::move(out));
}

Check<PairViolation> check_multimaximal_binary(const Coupling& coupling) {
  const std::size_t n = coupling.arity();
  std::vector<Rational> ones(n, Rational(0));
  for (const auto& atom : coupling.atoms)
    for (std::size_t i = 0; i < n; ++i) {
      if (atom.values[i] > 1) throw Error(ErrorCode::NotBinary, "variable " + coupling.variables[i] + " is not binary");
      if (atom.values[i] == 1) ones[i] += atom.probability;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational both = 0;
      for (const auto& atom : coupling.atoms)
        if (atom.values[i] == 1 && atom.values[j] == 1) both += atom.probability;
      if (both != std::min(ones[i], ones[j])) return {PairViolation{i, j}};
    }
  return {};
}

// ---------------------------------------------------------------------------

CdfTable CdfTable::from_pmf(const Pmf& pmf) {
  CdfTable table;
  Rational running = 0;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    if (pmf[x] == 0) continue;
    running += pmf[x];
    table.points.push_back(x);
    table.cumulative.push_back(running);
  }
  return table;
}

Rational CdfTable::at(std::size_t label) const {
  auto it = std::upper_bound(points.begin(), points.end(), label);
  if (it == points.begin()) return 0;
  return cumulative[static_cast<std::size_t>(it - points.begin()) - 1];
}

Coupling quantile_coupling(std::span<const CdfTable> cdfs) {
  std::set<Rational> breaks;
  for (const auto& cdf : cdfs) breaks.insert(cdf.cumulative.begin(), cdf.cumulative.end());

  Coupling out;
  for (std::size_t k = 0; k < cdfs.size(); ++k) out.variables.push_back(std::to_string(k));
  Rational lower = 0;
  for (const auto& upper : breaks) {
    if (upper <= lower) continue;
    CouplingAtom atom{{}, upper - lower};
    // On (lower, upper] the quantile is the first point whose F reaches upper.
    for (const auto& cdf : cdfs) {
      auto it = std::lower_bound(cdf.cumulative.begin(), cdf.cumulative.end(), upper);
      atom.values.push_back(cdf.points[static_cast<std::size_t>(it - cdf.cumulative.begin())]);
    }
    out.atoms.push_back(std::move(atom));
    lower = upper;
  }
  return canonical(std::move(out));
}

Check<std::size_t> forbidden_region_check(const CdfTable& first, const CdfTable& second, const Coupling& joint) {
  if (joint.arity() != 2) throw Error(ErrorCode::NotACoupling, "expected a two-variable coupling");
  std::size_t labels = 1;
  for (auto p : first.points) labels = std::max(labels, p + 1);
  for (auto p : second.points) labels = std::max(labels, p + 1);
  for (const auto& atom : joint.atoms) labels = std::max({labels, atom.values[0] + 1, atom.values[1] + 1});
  const Pmf left = joint.marginal(0, labels), right = joint.marginal(1, labels);
  for (std::size_t x = 0; x < labels; ++x) {
    if (left[x] != first.at(x) - (x == 0 ? Rational(0) : first.at(x - 1)) ||
        right[x] != second.at(x) - (x == 0 ? Rational(0) : second.at(x - 1)))
      throw Error(ErrorCode::NotACoupling, "joint marginals differ from the cdfs");
  }

  std::set<std::size_t> cuts(first.points.begin(), first.points.end());
  cuts.insert(second.points.begin(), second.points.end());

  for (std::size_t a = 0; a < joint.atoms.size(); ++a) {
    const auto u = joint.atoms[a].values[0];
    const auto v = joint.atoms[a].values[1];
    for (auto x : cuts) {
      const auto fi = first.at(x), fj = second.at(x);
      const bool low_high = u <= x && x < v;  // (-inf, x] x (x, inf)
      const bool high_low = v <= x && x < u;  // (x, inf) x (-inf, x]
      bool inside = fi == fj ? (low_high || high_low) : fi < fj ? low_high : high_low;
      if (inside) return {a};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

Check<ChainViolation> check_categorical_splits_multimax(const Coupling& coupling) {
  const auto& atoms = coupling.atoms;
  for (std::size_t i = 0; i < coupling.arity(); ++i)
    for (std::size_t i2 = i + 1; i2 < coupling.arity(); ++i2)
      for (std::size_t l = 0; l < atoms.size(); ++l) {
        if (atoms[l].probability <= 0) continue;
        for (std::size_t l2 = l + 1; l2 < atoms.size(); ++l2) {
          if (atoms[l2].probability <= 0) continue;
          const auto x = atoms[l].values[i], y = atoms[l2].values[i];
          const auto w = atoms[l2].values[i2], z = atoms[l].values[i2];
          if (x != y && y != w && w != z && z != x) return {ChainViolation{i, i2, l, l2}};
        }
      }
  return {};
}

Coupling nested_events_coupling(std::span<const Pmf> pmfs, std::size_t exceptional) {
  if (pmfs.empty()) throw Error(ErrorCode::MismatchedSupport, "empty connection");
  const std::size_t k = pmfs.front().size();
  for (const auto& pmf : pmfs)
    if (pmf.size() != k) throw Error(ErrorCode::MismatchedSupport, "pmfs over different value sets");
  if (exceptional >= k) throw Error(ErrorCode::OutOfRange, "exceptional value outside the value set");
  for (std::size_t j = 1; j < pmfs.size(); ++j)
    for (std::size_t v = 0; v < k; ++v)
      if (v != exceptional && pmfs[j - 1][v] > pmfs[j][v])
        throw Error(ErrorCode::NotAligned, "value " + std::to_string(v) + " decreases between variables " +
                                               std::to_string(j - 1) + " and " + std::to_string(j));

  // Value v != exceptional owns the block [offset_v, offset_v + max_j p_j(v)),
  // and variable j uses its prefix of length p_j(v); the rest of [0,1] is the
  // exceptional value.
  std::vector<Rational> offset(k, Rational(0));
  Rational cursor = 0;
  for (std::size_t v = 0; v < k; ++v) {
    if (v == exceptional) continue;
    offset[v] = cursor;
    cursor += pmfs.back()[v];
  }

  std::set<Rational> breaks{Rational(0), Rational(1)};
  for (std::size_t v = 0; v < k; ++v) {
    if (v == exceptional) continue;
    for (const auto& pmf : pmfs) {
      breaks.insert(offset[v]);
      breaks.insert(offset[v] + pmf[v]);
    }
  }

  Coupling out;
  for (std::size_t j = 0; j < pmfs.size(); ++j) out.variables.push_back(std::to_string(j));
  std::vector<Rational> points(breaks.begin(), breaks.end());
  for (std::size_t b = 0; b + 1 < points.size(); ++b) {
    const Rational& lo = points[b];
    const Rational& hi = points[b + 1];
    if (hi > 1) break;
    CouplingAtom atom{{}, hi - lo};
    for (const auto& pmf : pmfs) {
      std::size_t value = exceptional;
      for (std::size_t v = 0; v < k; ++v)
        if (v != exceptional && lo >= offset[v] && hi <= offset[v] + pmf[v]) value = v;
      atom.values.push_back(value);
    }
    out.atoms.push_back(std::move(atom));
  }
  return canonical(std::move(out));
}

}  // namespace cbd
