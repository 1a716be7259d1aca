#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pwh {

/// A vertex label: a nonempty path of positive integers, printed as "1_2".
/// Paths are stored inline so labels are cheap to copy and compare; order is
/// lexicographic on the path with a proper prefix sorting first.
class VertexId {
 public:
  static constexpr std::size_t kMaxDepth = 8;
  static constexpr int kMaxComponent = 65535;

  VertexId() = default;
  explicit VertexId(int label);
  VertexId(std::initializer_list<int> path);

  static VertexId from_path(std::span<const int> path);
  /// Accepts "3" or "1_2_5"; throws an input error otherwise.
  static VertexId parse(std::string_view text);

  bool valid() const noexcept { return size_ != 0; }
  std::size_t depth() const noexcept { return size_; }
  int operator[](std::size_t i) const noexcept { return parts_[i]; }
  std::vector<int> path() const;
  std::string str() const;

  /// this_path followed by child's path
  VertexId extended(const VertexId& child) const;
  bool is_proper_prefix_of(const VertexId& other) const noexcept;

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) noexcept;

  std::size_t hash() const noexcept;

 private:
  std::array<std::uint16_t, kMaxDepth> parts_{};
  std::uint8_t size_ = 0;
};

inline std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) noexcept {
  std::size_t n = std::min(a.size_, b.size_);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.parts_[i] != b.parts_[i]) return a.parts_[i] <=> b.parts_[i];
  }
  return a.size_ <=> b.size_;
}

std::ostream& operator<<(std::ostream& os, const VertexId& v);

/// Sorted, duplicate-free vertex list. Faces are vertex sets too.
using VertexSet = std::vector<VertexId>;

VertexSet make_vertex_set(std::vector<VertexId> vertices);
/// Shorthand for sets of depth-one labels, e.g. labels({1, 2, 3}).
VertexSet labels(std::initializer_list<int> ids);
/// Labels 1..n.
VertexSet range_labels(int n);

bool is_subset(const VertexSet& a, const VertexSet& b);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool contains(const VertexSet& s, const VertexId& v);

/// "{1,2_1}"
std::string to_string(const VertexSet& s);

}  // namespace pwh

template <>
struct std::hash<pwh::VertexId> {
  std::size_t operator()(const pwh::VertexId& v) const noexcept { return v.hash(); }
};
