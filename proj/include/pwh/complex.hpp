#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pwh/vertex.hpp"

namespace pwh {

/// Bit i stands for the i-th vertex of the owning complex.
using Mask = std::uint64_t;

/// Upper bound on vertex counts, from PWH_MAX_VERTICES (default 16, at most 30).
std::size_t vertex_cap();

/// First-differing-element order on faces read as sorted index lists.
bool mask_lex_less(Mask a, Mask b) noexcept;

/// Dense membership table over all 2^n vertex subsets.
class FaceTable {
 public:
  explicit FaceTable(std::size_t n) : bits_(((std::size_t{1} << n) + 63) / 64, 0) {}
  bool test(Mask m) const noexcept { return (bits_[m >> 6] >> (m & 63)) & 1u; }
  void set(Mask m) noexcept { bits_[m >> 6] |= std::uint64_t{1} << (m & 63); }

 private:
  std::vector<std::uint64_t> bits_;
};

/// A finite abstract simplicial complex on an explicit vertex set, held by
/// its maximal faces. Vertices that are not faces ("ghosts") are allowed.
/// VOID has no faces at all; EMPTY has only the empty face. Immutable.
class SimplicialComplex {
 public:
  /// VOID on no vertices
  SimplicialComplex();

  /// Faces may be given redundantly; they are reduced to the maximal ones.
  static SimplicialComplex from_faces(VertexSet vertices, const std::vector<VertexSet>& faces);
  static SimplicialComplex from_masks(VertexSet vertices, std::vector<Mask> faces);
  static SimplicialComplex from_masks(std::shared_ptr<const VertexSet> vertices,
                                      std::vector<Mask> faces);
  static SimplicialComplex void_on(VertexSet vertices);
  static SimplicialComplex empty_on(VertexSet vertices);

  const VertexSet& vertices() const noexcept { return *vertices_; }
  const std::shared_ptr<const VertexSet>& shared_vertices() const noexcept { return vertices_; }
  std::size_t vertex_count() const noexcept { return vertices_->size(); }
  Mask full_mask() const noexcept;

  /// Canonical order: lexicographic on the sorted index lists.
  const std::vector<Mask>& facet_masks() const noexcept { return facets_; }
  std::vector<VertexSet> maximal_faces() const;

  bool is_void() const noexcept { return facets_.empty(); }
  bool is_empty() const noexcept { return facets_.size() == 1 && facets_[0] == 0; }
  /// -1 for EMPTY; VOID has no dimension and reports -2.
  int dimension() const noexcept;

  std::optional<std::size_t> index_of(const VertexId& v) const;
  /// Throws a domain error on labels outside the vertex set.
  Mask mask_of(const VertexSet& face) const;
  VertexSet face_of(Mask m) const;

  bool is_face_mask(Mask m) const noexcept;
  bool is_face(const VertexSet& face) const;
  /// Vertices v with {v} a face.
  VertexSet realized_vertices() const;

  /// Lazily built and shared between copies.
  const FaceTable& face_table() const;
  /// All face masks, canonical order.
  const std::vector<Mask>& face_masks() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

 private:
  struct Cache;
  SimplicialComplex(std::shared_ptr<const VertexSet> vertices, std::vector<Mask> facets);

  std::shared_ptr<const VertexSet> vertices_;
  std::vector<Mask> facets_;
  std::shared_ptr<Cache> cache_;
};

/// Δ[J]
SimplicialComplex simplex(VertexSet vertices);
/// ∂Δ[J]; ∂Δ of a single vertex is EMPTY. Errors on the empty set.
SimplicialComplex boundary_simplex(VertexSet vertices);
/// The single point {v}.
SimplicialComplex point(const VertexId& v);
SimplicialComplex skeleton(const SimplicialComplex& k, int d);
std::vector<VertexSet> faces(const SimplicialComplex& k);
std::vector<VertexSet> minimal_missing_faces(const SimplicialComplex& k);
std::vector<Mask> minimal_missing_face_masks(const SimplicialComplex& k);
/// Maximal faces are complements of minimal missing faces. The dual of a
/// full simplex is VOID; the dual of VOID is an error.
SimplicialComplex alexander_dual(const SimplicialComplex& k);
/// Inverse of minimal_missing_faces on a fixed vertex set.
SimplicialComplex from_minimal_missing_faces(VertexSet vertices, const std::vector<VertexSet>& mf);
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);
/// Union over the union of the two vertex sets; labels are identified.
SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b);
bool is_subcomplex(const SimplicialComplex& a, const SimplicialComplex& b);
bool is_face(const SimplicialComplex& k, const VertexSet& face);
/// K|_W for W a subset of the vertex set.
SimplicialComplex full_subcomplex(const SimplicialComplex& k, const VertexSet& w);
/// L ⊆ K and L = K|_{V(L)}
bool is_full_subcomplex(const SimplicialComplex& l, const SimplicialComplex& k);
/// Same faces on a larger vertex set.
SimplicialComplex with_vertices(const SimplicialComplex& k, const VertexSet& vertices);
/// Renames vertices; the map must be injective on V(K). Unmapped vertices keep their label.
SimplicialComplex relabel(const SimplicialComplex& k, const std::map<VertexId, VertexId>& map);

using VertexBijection = std::map<VertexId, VertexId>;
/// A witness f with f(K1) = K2 when one exists.
std::optional<VertexBijection> find_isomorphism(const SimplicialComplex& a,
                                                const SimplicialComplex& b);
bool is_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b);

/// Translates masks from one vertex indexing to another. Every source vertex
/// must have a destination position.
class MaskMap {
 public:
  MaskMap(const VertexSet& from, const VertexSet& to);
  /// Per-source-index destination bits, which need not be single bits.
  explicit MaskMap(std::vector<Mask> images) : images_(std::move(images)) {}
  Mask operator()(Mask m) const noexcept;

 private:
  std::vector<Mask> images_;
};

std::string describe(const SimplicialComplex& k);

}  // namespace pwh
