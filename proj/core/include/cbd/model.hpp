#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbd/label_set.hpp"
#include "cbd/rational.hpp"

namespace cbd {

enum class ValueKind { categorical, ordered };

std::string_view to_string(ValueKind kind);

/// Possible values E_q of a content. Ordered spaces list labels in ascending
/// order. `vicinities` overrides the vicinities derived from `kind`.
struct ValueSpace {
  std::vector<std::string> labels;
  ValueKind kind = ValueKind::categorical;
  std::optional<std::vector<LabelSet>> vicinities;

  std::size_t size() const { return labels.size(); }
  std::optional<std::size_t> find(std::string_view label) const;
  LabelSet all() const { return LabelSet::full(labels.size()); }

  friend bool operator==(const ValueSpace&, const ValueSpace&) = default;
};

struct Content {
  std::string id;
  ValueSpace space;

  friend bool operator==(const Content&, const Content&) = default;
};

// ---------------------------------------------------------------------------
// Unvalidated input, label based.

struct AtomSpec {
  std::vector<std::string> values;  // aligned with ContextSpec::measures
  Rational probability;
};

struct ContextSpec {
  std::string id;
  std::vector<std::string> measures;  // content ids
  std::vector<AtomSpec> atoms;
};

struct SystemSpec {
  std::vector<Content> contents;
  std::vector<ContextSpec> contexts;
};

// ---------------------------------------------------------------------------
// Validated, index based.

/// Probability mass function indexed by label index.
using Pmf = std::vector<Rational>;

struct BunchAtom {
  std::vector<std::size_t> values;  // label indices, aligned with Context::measured
  Rational probability;

  friend bool operator==(const BunchAtom&, const BunchAtom&) = default;
};

struct Context {
  std::string id;
  std::vector<std::size_t> measured;  // content indices, ascending
  std::vector<BunchAtom> atoms;       // positive mass only, sorted by values

  friend bool operator==(const Context&, const Context&) = default;
};

/// A pair (q, c) with q measured in c.
struct Variable {
  std::size_t content = 0;
  std::size_t context = 0;

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// A system of random variables with every invariant checked. Instances are
/// only produced by validate_system and the structural edits below, and are
/// immutable afterwards.
class System {
 public:
  const std::vector<Content>& contents() const { return contents_; }
  const std::vector<Context>& contexts() const { return contexts_; }

  const Content& content(std::size_t q) const { return contents_.at(q); }
  const Context& context(std::size_t c) const { return contexts_.at(c); }

  /// Throws Error{UnknownContent}.
  std::size_t content_index(std::string_view id) const;
  /// Throws Error{UnknownContext}.
  std::size_t context_index(std::string_view id) const;

  /// Contexts measuring content q, ascending.
  const std::vector<std::size_t>& contexts_of(std::size_t q) const { return contexts_of_.at(q); }
  /// Position of q inside context c's measured list, if q is measured in c.
  std::optional<std::size_t> position(std::size_t q, std::size_t c) const;
  bool measures(std::size_t q, std::size_t c) const { return position(q, c).has_value(); }

  /// All (q, c) pairs of the format relation, context-major.
  std::vector<Variable> variables() const;

  /// Marginal pmf of R_q^c.
  Pmf marginal(std::size_t q, std::size_t c) const;
  /// Labels of q with positive probability in at least one context.
  LabelSet support_union(std::size_t q) const;

  SystemSpec to_spec() const;

  friend bool operator==(const System& a, const System& b) {
    return a.contents_ == b.contents_ && a.contexts_ == b.contexts_;
  }

 private:
  friend System assemble(std::vector<Content> contents, std::vector<Context> contexts);
  System() = default;

  std::vector<Content> contents_;
  std::vector<Context> contexts_;
  std::vector<std::vector<std::size_t>> contexts_of_;
};

/// Index-level constructor shared by every operation that outputs a system.
/// Canonicalizes (measured ascending, zero atoms dropped, atoms sorted) and
/// checks every invariant.
System assemble(std::vector<Content> contents, std::vector<Context> contexts);

/// Errors: NonUnitMass, NegativeProbability, UnknownLabel, UnknownContent,
/// EmptyFormat, DuplicateAtom, DuplicateId, MalformedAtom, InvalidValueSpace.
System validate_system(const SystemSpec& spec);

// ---------------------------------------------------------------------------
// Connections and consistency.

struct ConnectionView {
  std::size_t content = 0;
  std::vector<std::pair<std::size_t, Pmf>> marginals;  // (context, pmf), contexts ascending
};

ConnectionView connection(const System& system, std::size_t q);
ConnectionView connection(const System& system, std::string_view content_id);

struct ConnectionWitness {
  std::size_t content = 0;
  std::size_t context_a = 0;
  std::size_t context_b = 0;
};

struct ConsistencyReport {
  bool consistent = true;
  std::optional<ConnectionWitness> witness;
};

ConsistencyReport is_consistently_connected(const System& system);

struct StrongConsistencyReport {
  bool strong = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // context pair
};

/// For every context pair, the joint distributions over the shared contents
/// coincide.
StrongConsistencyReport is_strongly_consistent(const System& system);

// ---------------------------------------------------------------------------
// Structural edits.

/// Surjection of one content's labels onto a target value space; the same map
/// applies in every context.
struct ContentMap {
  std::size_t content = 0;
  ValueSpace target;
  std::vector<std::size_t> image;  // image[source label] = target label
};

using CoarseGrainingMap = std::vector<ContentMap>;

/// Errors: NotSurjective, UnknownLabel (image index outside target),
/// UnknownContent.
System coarse_grain(const System& system, const CoarseGrainingMap& maps);

/// Errors: NotMeasured.
System drop_variable(const System& system, std::size_t q, std::size_t c);
/// Adds R_q^c deterministically equal to `value`. Errors: AlreadyMeasured,
/// UnknownLabel.
System add_deterministic(const System& system, std::size_t q, std::size_t c, std::size_t value);

/// Keeps only the listed variables; contexts left empty are removed.
/// Errors: EmptyFormat, NotMeasured.
System subsystem(const System& system, const std::vector<Variable>& keep);

}  // namespace cbd
