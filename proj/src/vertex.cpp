#include "pwh/vertex.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "pwh/error.hpp"

namespace pwh {

namespace {

void check_component(int c) {
  if (c < 1 || c > VertexId::kMaxComponent) {
    input_error("bad-vertex", "vertex label components must lie in 1.."
                                  + std::to_string(VertexId::kMaxComponent),
                std::to_string(c));
  }
}

}  // namespace

VertexId::VertexId(int label) {
  check_component(label);
  parts_[0] = static_cast<std::uint16_t>(label);
  size_ = 1;
}

VertexId::VertexId(std::initializer_list<int> path)
    : VertexId(from_path(std::span<const int>(path.begin(), path.size()))) {}

VertexId VertexId::from_path(std::span<const int> path) {
  if (path.empty() || path.size() > kMaxDepth) {
    input_error("bad-vertex", "vertex paths must have 1.." + std::to_string(kMaxDepth)
                                  + " components");
  }
  VertexId v;
  for (std::size_t i = 0; i < path.size(); ++i) {
    check_component(path[i]);
    v.parts_[i] = static_cast<std::uint16_t>(path[i]);
  }
  v.size_ = static_cast<std::uint8_t>(path.size());
  return v;
}

VertexId VertexId::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find('_', pos);
    std::string_view piece = text.substr(pos, end == std::string_view::npos ? end : end - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      input_error("bad-vertex", "cannot parse vertex label", std::string(text));
    }
    parts.push_back(value);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return from_path(parts);
}

std::vector<int> VertexId::path() const {
  return std::vector<int>(parts_.begin(), parts_.begin() + size_);
}

std::string VertexId::str() const {
  std::string out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) out += '_';
    out += std::to_string(parts_[i]);
  }
  return out;
}

VertexId VertexId::extended(const VertexId& child) const {
  if (size_ + child.size_ > kMaxDepth) {
    domain_error("vertex-depth", "nested vertex label exceeds depth "
                                     + std::to_string(kMaxDepth),
                 str() + "_" + child.str());
  }
  VertexId v = *this;
  for (std::size_t i = 0; i < child.size_; ++i) v.parts_[size_ + i] = child.parts_[i];
  v.size_ = static_cast<std::uint8_t>(size_ + child.size_);
  return v;
}

bool VertexId::is_proper_prefix_of(const VertexId& other) const noexcept {
  if (size_ >= other.size_) return false;
  return std::equal(parts_.begin(), parts_.begin() + size_, other.parts_.begin());
}

std::size_t VertexId::hash() const noexcept {
  std::size_t h = size_;
  for (std::size_t i = 0; i < size_; ++i) h = h * 1000003u + parts_[i];
  return h;
}

std::ostream& operator<<(std::ostream& os, const VertexId& v) { return os << v.str(); }

VertexSet make_vertex_set(std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

VertexSet labels(std::initializer_list<int> ids) {
  std::vector<VertexId> out;
  for (int i : ids) out.emplace_back(i);
  return make_vertex_set(std::move(out));
}

VertexSet range_labels(int n) {
  VertexSet out;
  for (int i = 1; i <= n; ++i) out.emplace_back(i);
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const VertexSet& s, const VertexId& v) {
  return std::binary_search(s.begin(), s.end(), v);
}

std::string to_string(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i].str();
  }
  return out + "}";
}

}  // namespace pwh
