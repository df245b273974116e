#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbd/label_set.hpp"
#include "cbd/model.hpp"

namespace cbd {

/// Ground sizes up to this bound get a fully enumerated linked family.
inline constexpr std::size_t kMaxEnumeratedGround = 16;

/// Finite symmetric Frechet V-space: ground {0, ..., size-1} with a family of
/// nonempty vicinities covering it.
class VSpace {
 public:
  /// Throws Error{InvalidValueSpace} for empty or uncovering vicinity families.
  VSpace(std::size_t size, std::vector<LabelSet> vicinities);

  /// Vicinities are all order intervals.
  static VSpace ordered(std::size_t size);
  /// Vicinities are all nonempty subsets. Above kMaxEnumeratedGround labels
  /// the family is kept implicit.
  static VSpace categorical(std::size_t size);

  std::size_t size() const { return size_; }
  LabelSet ground() const { return LabelSet::full(size_); }

  /// Throws Error{SpaceTooLarge} for implicit categorical families.
  const std::vector<LabelSet>& vicinities() const;
  /// Inclusion-minimal vicinities containing x; these alone decide limit points.
  const std::vector<LabelSet>& minimal_vicinities_of(std::size_t x) const { return minimal_.at(x); }

  std::optional<ValueKind> derived_kind() const { return derived_; }

 private:
  VSpace() = default;
  void index_minimal();

  std::size_t size_ = 0;
  std::vector<LabelSet> vicinities_;
  std::vector<std::vector<LabelSet>> minimal_;
  std::optional<ValueKind> derived_;
  bool implicit_ = false;
};

/// Explicit vicinities win; otherwise derived from the kind.
VSpace vspace_of(const ValueSpace& space);

/// {x : every vicinity of x meets F \ {x}}.
LabelSet limit_points(const VSpace& space, LabelSet subset);

/// All V-linked subsets of a space with at most kMaxEnumeratedGround points.
class LinkedFamily {
 public:
  bool contains(LabelSet subset) const;
  std::size_t count() const;
  std::vector<LabelSet> members() const;
  std::size_t ground_size() const { return size_; }

 private:
  friend LinkedFamily vlinked_family(const VSpace& space);
  std::size_t size_ = 0;
  std::vector<std::uint8_t> linked_;
};

/// Least family containing singletons and vicinities, closed under adding
/// limit points and under unions of members with a common point.
/// Throws Error{SpaceTooLarge} above kMaxEnumeratedGround.
LinkedFamily vlinked_family(const VSpace& space);

/// Exact membership test; above kMaxEnumeratedGround the closure is computed
/// over the subsets of `subset` only (at most kMaxEnumeratedGround elements).
bool is_vlinked(const VSpace& space, LabelSet subset);

/// Two-cell partition; `part0` holds label 0.
struct Dichotomy {
  LabelSet part0;
  LabelSet part1;

  friend bool operator==(const Dichotomy&, const Dichotomy&) = default;
  friend auto operator<=>(const Dichotomy&, const Dichotomy&) = default;
};

/// Canonical form of {subset, ground \ subset}.
Dichotomy make_dichotomy(LabelSet subset, LabelSet ground);

/// Dichotomies whose cells and ground are V-linked, sorted by part0.
/// Throws Error{GroundNotLinked} when the ground itself is not V-linked.
std::vector<Dichotomy> allowable_dichotomizations(const VSpace& space);

/// Images of linked sets are linked and preimages of linked sets are linked.
/// `map[x]` is the image of source point x. Throws Error{NotSurjective}.
bool is_allowable_coarse_graining(const VSpace& source, const VSpace& target, std::span<const std::size_t> map);

/// Checks g o f for allowable f: source -> middle and g: middle -> target.
/// Throws Error{NotAllowable} if f or g is not allowable itself.
bool compose_check(const VSpace& source, const VSpace& middle, const VSpace& target, std::span<const std::size_t> f,
                   std::span<const std::size_t> g);

/// The vicinities generate the full power set (they separate every pair of
/// points).
bool is_ordinary(const VSpace& space);

}  // namespace cbd
