#include "cbd/vspace.hpp"

#include <algorithm>
#include <unordered_set>

#include "cbd/error.hpp"

namespace cbd {

VSpace::VSpace(std::size_t size, std::vector<LabelSet> vicinities) : size_(size), vicinities_(std::move(vicinities)) {
  if (size_ == 0 || size_ > kMaxLabels) throw Error(ErrorCode::InvalidValueSpace, "ground size must be 1..64");
  LabelSet covered;
  for (auto v : vicinities_) {
    if (v.empty()) throw Error(ErrorCode::InvalidValueSpace, "empty vicinity");
    if (!v.subset_of(ground())) throw Error(ErrorCode::InvalidValueSpace, "vicinity outside the ground");
    covered = covered | v;
  }
  if (covered != ground()) throw Error(ErrorCode::InvalidValueSpace, "some point has no vicinity");
  std::sort(vicinities_.begin(), vicinities_.end());
  vicinities_.erase(std::unique(vicinities_.begin(), vicinities_.end()), vicinities_.end());
  index_minimal();
}

VSpace VSpace::ordered(std::size_t size) {
  std::vector<LabelSet> intervals;
  for (std::size_t lo = 0; lo < size; ++lo)
    for (std::size_t hi = lo; hi < size; ++hi) intervals.push_back(LabelSet::full(hi + 1) - LabelSet::full(lo));
  VSpace space(size, std::move(intervals));
  space.derived_ = ValueKind::ordered;
  return space;
}

VSpace VSpace::categorical(std::size_t size) {
  if (size == 0 || size > kMaxLabels) throw Error(ErrorCode::InvalidValueSpace, "ground size must be 1..64");
  VSpace space;
  space.size_ = size;
  space.derived_ = ValueKind::categorical;
  if (size <= kMaxEnumeratedGround) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << size); ++bits) space.vicinities_.emplace_back(bits);
  } else {
    space.implicit_ = true;
  }
  // singletons are vicinities, so they are the only minimal ones
  space.minimal_.resize(size);
  for (std::size_t x = 0; x < size; ++x) space.minimal_[x] = {LabelSet::single(x)};
  return space;
}

const std::vector<LabelSet>& VSpace::vicinities() const {
  if (implicit_) throw Error(ErrorCode::SpaceTooLarge, "categorical vicinity family is not materialized");
  return vicinities_;
}

void VSpace::index_minimal() {
  minimal_.assign(size_, {});
  for (std::size_t x = 0; x < size_; ++x) {
    std::vector<LabelSet> mine;
    for (auto v : vicinities_)
      if (v.contains(x)) mine.push_back(v);
    for (auto v : mine) {
      bool minimal = std::none_of(mine.begin(), mine.end(), [&](LabelSet w) { return w != v && w.subset_of(v); });
      if (minimal) minimal_[x].push_back(v);
    }
  }
}

VSpace vspace_of(const ValueSpace& space) {
  if (space.vicinities) return VSpace(space.size(), *space.vicinities);
  return space.kind == ValueKind::ordered ? VSpace::ordered(space.size()) : VSpace::categorical(space.size());
}

namespace {

bool is_limit_point(const VSpace& space, std::size_t x, LabelSet subset) {
  LabelSet others = subset.without(x);
  const auto& minimal = space.minimal_vicinities_of(x);
  return std::all_of(minimal.begin(), minimal.end(), [&](LabelSet v) { return v.intersects(others); });
}

/// Linkedness of every subset of `universe`, indexed by the compressed mask
/// (bit k <=> k-th element of `universe`). Every rule builds a set from its
/// own subsets, so the family restricted to subsets of `universe` is
/// self-contained; compressed masks of subsets are numerically smaller, which
/// gives a valid evaluation order.
std::vector<std::uint8_t> linked_subsets(const VSpace& space, LabelSet universe) {
  const auto elements = universe.indices();
  const std::size_t m = elements.size();
  if (m > kMaxEnumeratedGround)
    throw Error(ErrorCode::SpaceTooLarge, "closure over more than 16 points is not enumerated");
  const std::size_t count = std::size_t{1} << m;

  std::vector<LabelSet> expand(count);
  for (std::size_t s = 1; s < count; ++s)
    expand[s] = expand[s & (s - 1)].with(elements[static_cast<std::size_t>(std::countr_zero(s))]);

  std::unordered_set<std::uint64_t> vicinity_bits;
  if (space.derived_kind() == ValueKind::categorical) {
    // every nonempty subset is a vicinity
  } else {
    for (auto v : space.vicinities())
      if (v.subset_of(universe)) vicinity_bits.insert(v.bits());
  }
  const bool all_vicinities = space.derived_kind() == ValueKind::categorical;

  std::vector<std::uint8_t> linked(count, 0);
  // within[s * m + p]: union of linked subsets of s containing element p.
  std::vector<std::uint16_t> within(count * m, 0);

  for (std::size_t s = 1; s < count; ++s) {
    const LabelSet set = expand[s];
    bool ok = (s & (s - 1)) == 0 || all_vicinities || vicinity_bits.contains(set.bits());

    if (!ok) {
      for (std::size_t k = 0; k < m && !ok; ++k) {
        if (!((s >> k) & 1u)) continue;
        std::size_t rest = s & ~(std::size_t{1} << k);
        ok = linked[rest] && is_limit_point(space, elements[k], expand[rest]);
      }
    }

    std::uint16_t unions[kMaxEnumeratedGround] = {};
    for (std::size_t p = 0; p < m; ++p) {
      if (!((s >> p) & 1u)) continue;
      std::uint16_t acc = 0;
      for (std::size_t y = 0; y < m; ++y) {
        if (y == p || !((s >> y) & 1u)) continue;
        acc |= within[(s & ~(std::size_t{1} << y)) * m + p];
      }
      unions[p] = acc;
      if (!ok && acc == s) ok = true;
    }

    linked[s] = ok;
    for (std::size_t p = 0; p < m; ++p)
      if ((s >> p) & 1u) within[s * m + p] = ok ? static_cast<std::uint16_t>(s) : unions[p];
  }
  return linked;
}

std::size_t compress(LabelSet subset, LabelSet universe) {
  std::size_t out = 0, k = 0;
  for (auto x : universe.indices()) {
    if (subset.contains(x)) out |= std::size_t{1} << k;
    ++k;
  }
  return out;
}

}  // namespace

LabelSet limit_points(const VSpace& space, LabelSet subset) {
  LabelSet out;
  for (std::size_t x = 0; x < space.size(); ++x)
    if (is_limit_point(space, x, subset)) out = out.with(x);
  return out;
}

bool LinkedFamily::contains(LabelSet subset) const {
  if (subset.empty() || !subset.subset_of(LabelSet::full(size_))) return false;
  return linked_[subset.bits()] != 0;
}

std::size_t LinkedFamily::count() const {
  return static_cast<std::size_t>(std::count(linked_.begin(), linked_.end(), std::uint8_t{1}));
}

std::vector<LabelSet> LinkedFamily::members() const {
  std::vector<LabelSet> out;
  for (std::size_t s = 1; s < linked_.size(); ++s)
    if (linked_[s]) out.emplace_back(s);
  return out;
}

LinkedFamily vlinked_family(const VSpace& space) {
  if (space.size() > kMaxEnumeratedGround)
    throw Error(ErrorCode::SpaceTooLarge, "linked family is enumerated only up to 16 points");
  LinkedFamily family;
  family.size_ = space.size();
  family.linked_ = linked_subsets(space, space.ground());
  return family;
}

bool is_vlinked(const VSpace& space, LabelSet subset) {
  if (subset.empty() || !subset.subset_of(space.ground())) return false;
  if (subset.size() == 1) return true;
  if (space.derived_kind() == ValueKind::categorical) return true;
  if (space.derived_kind() == ValueKind::ordered) {
    // intervals: contiguous run of bits
    std::uint64_t shifted = subset.bits() >> subset.lowest();
    return (shifted & (shifted + 1)) == 0;
  }
  auto linked = linked_subsets(space, subset);
  return linked[compress(subset, subset)] != 0;
}

Dichotomy make_dichotomy(LabelSet subset, LabelSet ground) {
  LabelSet other = ground - subset;
  return subset.contains(0) ? Dichotomy{subset, other} : Dichotomy{other, subset};
}

std::vector<Dichotomy> allowable_dichotomizations(const VSpace& space) {
  const LabelSet ground = space.ground();
  std::vector<Dichotomy> out;
  if (space.size() > kMaxEnumeratedGround) {
    if (space.derived_kind() != ValueKind::ordered)
      throw Error(ErrorCode::SpaceTooLarge, "dichotomies are enumerated only up to 16 points");
    for (std::size_t cut = 1; cut < space.size(); ++cut)
      out.push_back({LabelSet::full(cut), ground - LabelSet::full(cut)});
    return out;
  }
  auto family = vlinked_family(space);
  if (!family.contains(ground)) throw Error(ErrorCode::GroundNotLinked, "the ground set is not V-linked");
  // part0 always holds point 0: enumerate the other points' memberships.
  const std::size_t rest_count = std::size_t{1} << (space.size() - 1);
  for (std::size_t r = 0; r + 1 < rest_count; ++r) {
    LabelSet part0{(static_cast<std::uint64_t>(r) << 1) | 1u};
    LabelSet part1 = ground - part0;
    if (family.contains(part0) && family.contains(part1)) out.push_back({part0, part1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_map(const VSpace& source, const VSpace& target, std::span<const std::size_t> map) {
  if (map.size() != source.size()) throw Error(ErrorCode::NotSurjective, "map is not total on the source");
  LabelSet hit;
  for (auto y : map) {
    if (y >= target.size()) throw Error(ErrorCode::NotSurjective, "image outside the target");
    hit = hit.with(y);
  }
  if (hit != target.ground()) throw Error(ErrorCode::NotSurjective, "map misses a target point");
}

}  // namespace

bool is_allowable_coarse_graining(const VSpace& source, const VSpace& target, std::span<const std::size_t> map) {
  check_map(source, target, map);
  auto source_family = vlinked_family(source);
  auto target_family = vlinked_family(target);

  for (auto x : source_family.members()) {
    LabelSet image;
    for (auto p : x.indices()) image = image.with(map[p]);
    if (!target_family.contains(image)) return false;
  }
  for (auto y : target_family.members()) {
    LabelSet preimage;
    for (std::size_t p = 0; p < map.size(); ++p)
      if (y.contains(map[p])) preimage = preimage.with(p);
    if (!source_family.contains(preimage)) return false;
  }
  return true;
}

bool compose_check(const VSpace& source, const VSpace& middle, const VSpace& target, std::span<const std::size_t> f,
                   std::span<const std::size_t> g) {
  if (!is_allowable_coarse_graining(source, middle, f) || !is_allowable_coarse_graining(middle, target, g))
    throw Error(ErrorCode::NotAllowable, "compose_check needs two allowable coarse-grainings");
  std::vector<std::size_t> composed(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) composed[x] = g[f[x]];
  return is_allowable_coarse_graining(source, target, composed);
}

bool is_ordinary(const VSpace& space) {
  if (space.derived_kind()) return true;
  const auto& vicinities = space.vicinities();
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      bool separated = std::any_of(vicinities.begin(), vicinities.end(),
                                   [&](LabelSet v) { return v.contains(x) != v.contains(y); });
      if (!separated) return false;
    }
  return true;
}

}  // namespace cbd
