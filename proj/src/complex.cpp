#include "pwh/complex.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <mutex>

#include "pwh/error.hpp"

namespace pwh {

namespace {

constexpr std::size_t kDefaultCap = 16;
constexpr std::size_t kHardCap = 30;

std::size_t read_cap() {
  const char* env = std::getenv("PWH_MAX_VERTICES");
  if (!env || !*env) return kDefaultCap;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) return kDefaultCap;
  return std::min<std::size_t>(static_cast<std::size_t>(v), kHardCap);
}

// Drops non-maximal masks and sorts the rest canonically.
void reduce_to_maximal(std::vector<Mask>& masks) {
  // a proper superset is numerically larger, so descending order puts it first
  std::sort(masks.begin(), masks.end(), std::greater<Mask>());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::size_t kept = 0;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    Mask m = masks[i];
    bool covered = false;
    for (std::size_t k = 0; k < kept && !covered; ++k) covered = (m & masks[k]) == m;
    if (!covered) masks[kept++] = m;
  }
  masks.resize(kept);
  std::sort(masks.begin(), masks.end(), mask_lex_less);
}

void check_vertex_set(const VertexSet& v) {
  if (v.size() > vertex_cap()) {
    domain_error("vertex-cap", "vertex count " + std::to_string(v.size())
                                   + " exceeds the configured cap of "
                                   + std::to_string(vertex_cap()),
                 to_string(v));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].valid()) input_error("bad-vertex", "invalid vertex label");
    if (i && !(v[i - 1] < v[i])) {
      input_error("bad-vertex-set", "vertex set must be sorted and duplicate-free", to_string(v));
    }
  }
}

}  // namespace

std::size_t vertex_cap() {
  static const std::size_t cap = read_cap();
  return cap;
}

bool mask_lex_less(Mask a, Mask b) noexcept {
  if (a == b) return false;
  Mask d = a ^ b;
  Mask low = d & (~d + 1);
  Mask above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

struct SimplicialComplex::Cache {
  std::once_flag table_once;
  std::once_flag faces_once;
  std::unique_ptr<FaceTable> table;
  std::vector<Mask> faces;
};

SimplicialComplex::SimplicialComplex()
    : SimplicialComplex(std::make_shared<const VertexSet>(), {}) {}

SimplicialComplex::SimplicialComplex(std::shared_ptr<const VertexSet> vertices,
                                     std::vector<Mask> facets)
    : vertices_(std::move(vertices)),
      facets_(std::move(facets)),
      cache_(std::make_shared<Cache>()) {}

SimplicialComplex SimplicialComplex::from_masks(std::shared_ptr<const VertexSet> vertices,
                                                std::vector<Mask> faces) {
  check_vertex_set(*vertices);
  Mask full = vertices->size() >= 64 ? ~Mask{0} : (Mask{1} << vertices->size()) - 1;
  for (Mask m : faces) {
    if (m & ~full) domain_error("face-outside-vertices", "face uses an undeclared vertex");
  }
  reduce_to_maximal(faces);
  return SimplicialComplex(std::move(vertices), std::move(faces));
}

SimplicialComplex SimplicialComplex::from_masks(VertexSet vertices, std::vector<Mask> faces) {
  return from_masks(std::make_shared<const VertexSet>(std::move(vertices)), std::move(faces));
}

SimplicialComplex SimplicialComplex::from_faces(VertexSet vertices,
                                                const std::vector<VertexSet>& faces) {
  vertices = make_vertex_set(std::move(vertices));
  SimplicialComplex shell = void_on(vertices);
  std::vector<Mask> masks;
  masks.reserve(faces.size());
  for (const auto& f : faces) {
    VertexSet sorted = make_vertex_set(f);
    Mask m = 0;
    for (const auto& v : sorted) {
      auto idx = shell.index_of(v);
      if (!idx) {
        input_error("face-outside-vertices", "face uses an undeclared vertex", to_string(sorted));
      }
      m |= Mask{1} << *idx;
    }
    masks.push_back(m);
  }
  return from_masks(shell.vertices_, std::move(masks));
}

SimplicialComplex SimplicialComplex::void_on(VertexSet vertices) {
  return from_masks(std::move(vertices), {});
}

SimplicialComplex SimplicialComplex::empty_on(VertexSet vertices) {
  return from_masks(std::move(vertices), {0});
}

Mask SimplicialComplex::full_mask() const noexcept {
  return vertex_count() >= 64 ? ~Mask{0} : (Mask{1} << vertex_count()) - 1;
}

std::vector<VertexSet> SimplicialComplex::maximal_faces() const {
  std::vector<VertexSet> out;
  out.reserve(facets_.size());
  for (Mask m : facets_) out.push_back(face_of(m));
  return out;
}

int SimplicialComplex::dimension() const noexcept {
  if (facets_.empty()) return -2;
  int d = -1;
  for (Mask m : facets_) d = std::max(d, std::popcount(m) - 1);
  return d;
}

std::optional<std::size_t> SimplicialComplex::index_of(const VertexId& v) const {
  auto it = std::lower_bound(vertices_->begin(), vertices_->end(), v);
  if (it == vertices_->end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_->begin());
}

Mask SimplicialComplex::mask_of(const VertexSet& face) const {
  Mask m = 0;
  for (const auto& v : face) {
    auto idx = index_of(v);
    if (!idx) domain_error("unknown-vertex", "vertex is not in the complex", v.str());
    m |= Mask{1} << *idx;
  }
  return m;
}

VertexSet SimplicialComplex::face_of(Mask m) const {
  VertexSet out;
  out.reserve(std::popcount(m));
  while (m) {
    out.push_back((*vertices_)[std::countr_zero(m)]);
    m &= m - 1;
  }
  return out;
}

bool SimplicialComplex::is_face_mask(Mask m) const noexcept {
  for (Mask f : facets_) {
    if ((m & f) == m) return true;
  }
  return false;
}

bool SimplicialComplex::is_face(const VertexSet& face) const {
  Mask m = 0;
  for (const auto& v : face) {
    auto idx = index_of(v);
    if (!idx) return false;
    m |= Mask{1} << *idx;
  }
  return is_face_mask(m);
}

VertexSet SimplicialComplex::realized_vertices() const {
  Mask all = 0;
  for (Mask f : facets_) all |= f;
  return face_of(all);
}

const FaceTable& SimplicialComplex::face_table() const {
  std::call_once(cache_->table_once, [this] {
    auto table = std::make_unique<FaceTable>(vertex_count());
    for (Mask f : facets_) {
      for (Mask s = f;; s = (s - 1) & f) {
        table->set(s);
        if (s == 0) break;
      }
    }
    cache_->table = std::move(table);
  });
  return *cache_->table;
}

const std::vector<Mask>& SimplicialComplex::face_masks() const {
  std::call_once(cache_->faces_once, [this] {
    const FaceTable& table = face_table();
    std::vector<Mask> out;
    Mask limit = full_mask();
    for (Mask m = 0;; ++m) {
      if (table.test(m)) out.push_back(m);
      if (m == limit) break;
    }
    std::sort(out.begin(), out.end(), mask_lex_less);
    cache_->faces = std::move(out);
  });
  return cache_->faces;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertices_ != b.vertices_ && *a.vertices_ != *b.vertices_) return false;
  return a.facets_ == b.facets_;
}

MaskMap::MaskMap(const VertexSet& from, const VertexSet& to) {
  images_.reserve(from.size());
  std::size_t j = 0;
  for (const auto& v : from) {
    while (j < to.size() && to[j] < v) ++j;
    if (j == to.size() || to[j] != v) {
      domain_error("unknown-vertex", "vertex has no image in the target vertex set", v.str());
    }
    images_.push_back(Mask{1} << j);
  }
}

Mask MaskMap::operator()(Mask m) const noexcept {
  Mask out = 0;
  while (m) {
    out |= images_[std::countr_zero(m)];
    m &= m - 1;
  }
  return out;
}

SimplicialComplex simplex(VertexSet vertices) {
  vertices = make_vertex_set(std::move(vertices));
  Mask full = vertices.size() >= 64 ? ~Mask{0} : (Mask{1} << vertices.size()) - 1;
  return SimplicialComplex::from_masks(std::move(vertices), {full});
}

SimplicialComplex boundary_simplex(VertexSet vertices) {
  vertices = make_vertex_set(std::move(vertices));
  if (vertices.empty()) domain_error("boundary-of-void", "boundary of void");
  Mask full = (Mask{1} << vertices.size()) - 1;
  std::vector<Mask> facets;
  for (std::size_t i = 0; i < vertices.size(); ++i) facets.push_back(full ^ (Mask{1} << i));
  return SimplicialComplex::from_masks(std::move(vertices), std::move(facets));
}

SimplicialComplex point(const VertexId& v) { return simplex(VertexSet{v}); }

SimplicialComplex skeleton(const SimplicialComplex& k, int d) {
  if (d < -1) domain_error("bad-dimension", "skeleton dimension must be at least -1");
  std::vector<Mask> out;
  const int size = d + 1;
  for (Mask f : k.facet_masks()) {
    if (std::popcount(f) <= size) {
      out.push_back(f);
      continue;
    }
    // submasks of f with exactly `size` bits
    for (Mask s = f;; s = (s - 1) & f) {
      if (std::popcount(s) == size) out.push_back(s);
      if (s == 0) break;
    }
  }
  return SimplicialComplex::from_masks(k.shared_vertices(), std::move(out));
}

std::vector<VertexSet> faces(const SimplicialComplex& k) {
  std::vector<VertexSet> out;
  for (Mask m : k.face_masks()) out.push_back(k.face_of(m));
  return out;
}

std::vector<Mask> minimal_missing_face_masks(const SimplicialComplex& k) {
  if (k.is_void()) domain_error("void-complex", "minimal missing faces of VOID are undefined");
  const FaceTable& table = k.face_table();
  std::vector<Mask> out;
  const Mask limit = k.full_mask();
  if (limit == 0) return out;
  for (Mask m = 1;; ++m) {
    if (!table.test(m)) {
      bool minimal = true;
      for (Mask rest = m; rest; rest &= rest - 1) {
        if (!table.test(m & ~(rest & (~rest + 1)))) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(m);
    }
    if (m == limit) break;
  }
  std::sort(out.begin(), out.end(), mask_lex_less);
  return out;
}

std::vector<VertexSet> minimal_missing_faces(const SimplicialComplex& k) {
  std::vector<VertexSet> out;
  for (Mask m : minimal_missing_face_masks(k)) out.push_back(k.face_of(m));
  return out;
}

SimplicialComplex alexander_dual(const SimplicialComplex& k) {
  if (k.is_void()) domain_error("void-complex", "the Alexander dual of VOID is undefined");
  std::vector<Mask> facets;
  for (Mask m : minimal_missing_face_masks(k)) facets.push_back(k.full_mask() ^ m);
  return SimplicialComplex::from_masks(k.shared_vertices(), std::move(facets));
}

SimplicialComplex from_minimal_missing_faces(VertexSet vertices,
                                             const std::vector<VertexSet>& mf) {
  SimplicialComplex shell = SimplicialComplex::void_on(make_vertex_set(std::move(vertices)));
  std::vector<Mask> missing;
  for (const auto& f : mf) missing.push_back(shell.mask_of(make_vertex_set(f)));
  const std::size_t n = shell.vertex_count();
  FaceTable table(n);
  const Mask limit = shell.full_mask();
  for (Mask s = 0;; ++s) {
    bool ok = true;
    for (Mask m : missing) {
      if ((s & m) == m) {
        ok = false;
        break;
      }
    }
    if (ok) table.set(s);
    if (s == limit) break;
  }
  std::vector<Mask> facets;
  for (Mask s = 0;; ++s) {
    if (table.test(s)) {
      bool maximal = true;
      for (std::size_t i = 0; i < n && maximal; ++i) {
        Mask bit = Mask{1} << i;
        if (!(s & bit) && table.test(s | bit)) maximal = false;
      }
      if (maximal) facets.push_back(s);
    }
    if (s == limit) break;
  }
  return SimplicialComplex::from_masks(shell.shared_vertices(), std::move(facets));
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (!set_intersection(a.vertices(), b.vertices()).empty()) {
    domain_error("overlapping-vertices", "join requires disjoint vertex sets",
                 to_string(set_intersection(a.vertices(), b.vertices())));
  }
  VertexSet all = set_union(a.vertices(), b.vertices());
  MaskMap ma(a.vertices(), all), mb(b.vertices(), all);
  std::vector<Mask> facets;
  for (Mask fa : a.facet_masks()) {
    for (Mask fb : b.facet_masks()) facets.push_back(ma(fa) | mb(fb));
  }
  return SimplicialComplex::from_masks(std::move(all), std::move(facets));
}

SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b) {
  VertexSet all = set_union(a.vertices(), b.vertices());
  MaskMap ma(a.vertices(), all), mb(b.vertices(), all);
  std::vector<Mask> facets;
  for (Mask f : a.facet_masks()) facets.push_back(ma(f));
  for (Mask f : b.facet_masks()) facets.push_back(mb(f));
  return SimplicialComplex::from_masks(std::move(all), std::move(facets));
}

bool is_subcomplex(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertices() == b.vertices()) {
    for (Mask f : a.facet_masks()) {
      if (!b.is_face_mask(f)) return false;
    }
    return true;
  }
  for (Mask f : a.facet_masks()) {
    if (!b.is_face(a.face_of(f))) return false;
  }
  return true;
}

bool is_face(const SimplicialComplex& k, const VertexSet& face) { return k.is_face(face); }

SimplicialComplex full_subcomplex(const SimplicialComplex& k, const VertexSet& w) {
  VertexSet sorted = make_vertex_set(w);
  Mask keep = k.mask_of(sorted);
  std::vector<Mask> images;
  std::size_t next = 0;
  for (std::size_t i = 0; i < k.vertex_count(); ++i) {
    images.push_back((keep >> i) & 1u ? Mask{1} << next++ : 0);
  }
  MaskMap map(std::move(images));
  std::vector<Mask> facets;
  for (Mask f : k.facet_masks()) facets.push_back(map(f & keep));
  return SimplicialComplex::from_masks(std::move(sorted), std::move(facets));
}

bool is_full_subcomplex(const SimplicialComplex& l, const SimplicialComplex& k) {
  if (!is_subset(l.vertices(), k.vertices())) return false;
  return full_subcomplex(k, l.vertices()) == l;
}

SimplicialComplex with_vertices(const SimplicialComplex& k, const VertexSet& vertices) {
  VertexSet sorted = make_vertex_set(vertices);
  if (!is_subset(k.vertices(), sorted)) {
    domain_error("bad-extension", "extension must contain the original vertex set");
  }
  MaskMap map(k.vertices(), sorted);
  std::vector<Mask> facets;
  for (Mask f : k.facet_masks()) facets.push_back(map(f));
  return SimplicialComplex::from_masks(std::move(sorted), std::move(facets));
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::map<VertexId, VertexId>& map) {
  VertexSet image;
  for (const auto& v : k.vertices()) {
    auto it = map.find(v);
    image.push_back(it == map.end() ? v : it->second);
  }
  VertexSet sorted = make_vertex_set(image);
  if (sorted.size() != image.size()) {
    domain_error("non-injective-relabel", "relabeling must be injective");
  }
  std::vector<Mask> images;
  for (const auto& v : image) {
    images.push_back(
        Mask{1} << (std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
  }
  MaskMap mm(std::move(images));
  std::vector<Mask> facets;
  for (Mask f : k.facet_masks()) facets.push_back(mm(f));
  return SimplicialComplex::from_masks(std::move(sorted), std::move(facets));
}

namespace {

// Per-vertex invariant: sorted sizes of the facets containing it.
std::vector<std::vector<int>> vertex_signatures(const SimplicialComplex& k) {
  std::vector<std::vector<int>> sig(k.vertex_count());
  for (Mask f : k.facet_masks()) {
    for (Mask r = f; r; r &= r - 1) sig[std::countr_zero(r)].push_back(std::popcount(f));
  }
  for (auto& s : sig) std::sort(s.begin(), s.end());
  return sig;
}

struct IsoSearch {
  const SimplicialComplex& a;
  const SimplicialComplex& b;
  std::vector<std::vector<int>> sa, sb;
  std::vector<int> image;  // a-index -> b-index
  std::vector<bool> used;
  std::vector<Mask> b_facets;

  bool consistent(std::size_t assigned) const {
    Mask done = assigned >= 64 ? ~Mask{0} : (Mask{1} << assigned) - 1;
    for (Mask f : a.facet_masks()) {
      if ((f & done) != f) continue;
      Mask g = 0;
      for (Mask r = f; r; r &= r - 1) g |= Mask{1} << image[std::countr_zero(r)];
      if (!std::binary_search(b_facets.begin(), b_facets.end(), g)) return false;
    }
    return true;
  }

  bool run(std::size_t i) {
    if (i == a.vertex_count()) return true;
    for (std::size_t j = 0; j < b.vertex_count(); ++j) {
      if (used[j] || sa[i] != sb[j]) continue;
      image[i] = static_cast<int>(j);
      used[j] = true;
      if (consistent(i + 1) && run(i + 1)) return true;
      used[j] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<VertexBijection> find_isomorphism(const SimplicialComplex& a,
                                                const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count()) return std::nullopt;
  if (a.facet_masks().size() != b.facet_masks().size()) return std::nullopt;
  IsoSearch s{a, b, vertex_signatures(a), vertex_signatures(b),
              std::vector<int>(a.vertex_count(), -1), std::vector<bool>(b.vertex_count(), false),
              b.facet_masks()};
  auto sorted_a = s.sa, sorted_b = s.sb;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return std::nullopt;
  std::sort(s.b_facets.begin(), s.b_facets.end());
  if (!s.run(0)) return std::nullopt;
  VertexBijection out;
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    out.emplace(a.vertices()[i], b.vertices()[s.image[i]]);
  }
  return out;
}

bool is_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  return find_isomorphism(a, b).has_value();
}

std::string describe(const SimplicialComplex& k) {
  if (k.is_void()) return "VOID on " + to_string(k.vertices());
  std::string out = "[";
  bool first = true;
  for (const auto& f : k.maximal_faces()) {
    if (!first) out += ' ';
    first = false;
    out += to_string(f);
  }
  return out + "] on " + to_string(k.vertices());
}

}  // namespace pwh
