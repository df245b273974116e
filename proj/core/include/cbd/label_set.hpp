#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cbd {

inline constexpr std::size_t kMaxLabels = 64;

/// Subset of a value space's labels, bit i <=> label index i.
class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr explicit LabelSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr LabelSet single(std::size_t index) { return LabelSet{std::uint64_t{1} << index}; }
  static constexpr LabelSet full(std::size_t size) {
    return LabelSet{size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1};
  }
  static LabelSet of(const std::vector<std::size_t>& indices) {
    LabelSet s;
    for (auto i : indices) s = s.with(i);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1u; }
  constexpr bool subset_of(LabelSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(LabelSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr LabelSet with(std::size_t index) const { return LabelSet{bits_ | (std::uint64_t{1} << index)}; }
  constexpr LabelSet without(std::size_t index) const { return LabelSet{bits_ & ~(std::uint64_t{1} << index)}; }
  constexpr std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend constexpr LabelSet operator|(LabelSet a, LabelSet b) { return LabelSet{a.bits_ | b.bits_}; }
  friend constexpr LabelSet operator&(LabelSet a, LabelSet b) { return LabelSet{a.bits_ & b.bits_}; }
  friend constexpr LabelSet operator-(LabelSet a, LabelSet b) { return LabelSet{a.bits_ & ~b.bits_}; }
  friend constexpr bool operator==(LabelSet, LabelSet) = default;
  friend constexpr auto operator<=>(LabelSet a, LabelSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace cbd
