#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "pwh/complex.hpp"
#include "pwh/error.hpp"
#include "pwh/whitehead.hpp"

namespace pwh::test {

inline SimplicialComplex cx(std::initializer_list<int> verts,
                            std::initializer_list<std::initializer_list<int>> facets) {
  std::vector<VertexSet> fs;
  for (auto f : facets) fs.push_back(labels(f));
  return SimplicialComplex::from_faces(labels(verts), fs);
}

inline std::vector<VertexSet> sets(std::initializer_list<std::initializer_list<int>> fs) {
  std::vector<VertexSet> out;
  for (auto f : fs) out.push_back(labels(f));
  return out;
}

inline VertexSet vs(std::initializer_list<const char*> names) {
  std::vector<VertexId> out;
  for (const char* n : names) out.push_back(VertexId::parse(n));
  return make_vertex_set(std::move(out));
}

inline MapLeaf map_leaf(std::string name, std::optional<int> dim = std::nullopt,
                        std::optional<VertexId> vertex = std::nullopt) {
  MapLeaf l;
  l.name = std::move(name);
  l.sphere_dim = dim;
  l.vertex = vertex;
  return l;
}

inline HwExpr lf(std::string name, std::optional<int> dim = std::nullopt,
                 std::optional<VertexId> vertex = std::nullopt) {
  return HwExpr::leaf(map_leaf(std::move(name), dim, vertex));
}

/// Error code thrown by f, or "" if it returns normally.
inline std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace pwh::test
