#include "pwh/whitehead.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "pwh/error.hpp"
#include "pwh/polyjoin.hpp"

namespace pwh {

struct HwExpr::Node {
  ExprKind kind = ExprKind::Leaf;
  MapLeaf leaf;
  std::vector<MapLeaf> terms;
  std::vector<HwExpr> args;
  std::optional<SimplicialComplex> ambient;
  std::vector<HwExpr> inner;  // one element for Folded
  std::optional<Fold> fold;
  bool declared_null = false;
};

void validate_leaf(const MapLeaf& leaf) {
  if (leaf.name.empty()) domain_error("bad-leaf", "a map needs a name");
  if (leaf.sphere_dim) {
    if (*leaf.sphere_dim < 1) domain_error("bad-leaf", "sphere dimension must be at least 1", leaf.name);
    if (*leaf.sphere_dim >= 2 && !leaf.suspension) {
      domain_error("bad-leaf", "S^{p-1} is a suspension when p >= 2", leaf.name);
    }
  }
  if (leaf.codomain.associative && !leaf.codomain.h_space) {
    domain_error("bad-space", "an associative space must be an H-space", leaf.codomain.name);
  }
}

Permutation Permutation::identity(std::size_t m) {
  Permutation p;
  p.images_.resize(m);
  std::iota(p.images_.begin(), p.images_.end(), 1);
  return p;
}

Permutation Permutation::from_images(std::vector<int> images) {
  std::vector<bool> seen(images.size() + 1, false);
  for (int v : images) {
    if (v < 1 || v > static_cast<int>(images.size()) || seen[v]) {
      domain_error("bad-permutation", "image list is not a bijection of 1..m");
    }
    seen[v] = true;
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

std::string Permutation::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out + ")";
}

int koszul_sign(const Permutation& perm, std::span<const int> dims) {
  if (dims.size() != perm.size()) domain_error("bad-dims", "need one degree per permuted element");
  const auto& img = perm.images();
  int parity = 0;
  for (std::size_t a = 0; a < img.size(); ++a) {
    for (std::size_t b = a + 1; b < img.size(); ++b) {
      if (img[a] > img[b]) parity ^= (dims[img[a] - 1] & dims[img[b] - 1] & 1);
    }
  }
  return parity ? -1 : 1;
}

namespace {

SimplicialComplex substitute_targets(bool full, const std::vector<SimplicialComplex>& targets) {
  VertexSet slots = range_labels(static_cast<int>(targets.size()));
  SimplicialComplex outer = full ? simplex(slots) : boundary_simplex(slots);
  return substitution(outer, targets, JoinOptions{Labeling::Inherit, false});
}

std::vector<SimplicialComplex> arg_targets(const HwExpr& e) {
  std::vector<SimplicialComplex> out;
  for (const auto& a : e.args()) out.push_back(target_complex(a));
  return out;
}

std::map<VertexId, SpaceRef> codomains_by_vertex(const HwExpr& e) {
  std::map<VertexId, SpaceRef> out;
  for (const auto& l : leaves(e)) {
    if (l.vertex) out.emplace(*l.vertex, l.codomain);
  }
  return out;
}

void check_fold_spaces(const HwExpr& inner, const Fold& fold) {
  SimplicialComplex anchor = anchor_complex(inner);
  fold.check_applicable(anchor.vertices());
  auto spaces = codomains_by_vertex(inner);
  for (const auto& j : fold.targets()) {
    VertexSet block = fold.block(j);
    auto tj = spaces.find(j);
    for (const auto& i : block) {
      auto ti = spaces.find(i);
      if (tj != spaces.end() && ti != spaces.end() && !(ti->second == tj->second)) {
        domain_error("fold-codomain", "folded vertices need equal codomains", i.str() + "->" + j.str());
      }
    }
    VertexSet local = block;
    local.push_back(j);
    SimplicialComplex restricted = full_subcomplex(anchor, make_vertex_set(local));
    bool disjoint = std::all_of(restricted.facet_masks().begin(), restricted.facet_masks().end(),
                                [](Mask m) { return std::popcount(m) <= 1; });
    if (disjoint || tj == spaces.end()) continue;
    if (!tj->second.associative) {
      domain_error("fold-h-space", "folding onto " + j.str() + " needs an associative H-space codomain",
                   tj->second.name);
    }
  }
}

void check_ambient(const HwExpr& e) {
  if (!e.ambient()) return;
  SimplicialComplex shape = substitute_targets(false, arg_targets(e));
  const SimplicialComplex& amb = *e.ambient();
  for (Mask f : shape.facet_masks()) {
    VertexSet face = shape.face_of(f);
    if (!amb.is_face(face)) {
      domain_error("ambient-too-small", "ambient does not contain the codomain complex", to_string(face));
    }
  }
  VertexSet missing = set_difference(shape.vertices(), amb.vertices());
  if (!missing.empty()) {
    domain_error("ambient-too-small", "ambient lacks codomain vertices", to_string(missing));
  }
}

}  // namespace

HwExpr HwExpr::leaf(MapLeaf leaf) {
  validate_leaf(leaf);
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Leaf;
  n->leaf = std::move(leaf);
  return HwExpr(std::move(n));
}

HwExpr HwExpr::sum(std::vector<MapLeaf> terms) {
  if (terms.empty()) domain_error("empty-sum", "a formal sum needs a term");
  for (const auto& t : terms) {
    validate_leaf(t);
    if (t.vertex != terms[0].vertex || !(t.codomain == terms[0].codomain)
        || t.sphere_dim != terms[0].sphere_dim) {
      domain_error("bad-sum", "summed maps must share slot, codomain and degree", t.name);
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Sum;
  n->terms = std::move(terms);
  return HwExpr(std::move(n));
}

HwExpr HwExpr::hw(std::vector<HwExpr> args, std::optional<SimplicialComplex> ambient) {
  if (args.size() < 2) domain_error("hw-arity", "a higher Whitehead map needs at least two arguments");
  if (ambient && ambient->is_void()) domain_error("void-ambient", "ambient must not be VOID");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Hw;
  n->args = std::move(args);
  n->ambient = std::move(ambient);
  HwExpr e(std::move(n));
  if (e.fully_placed()) {
    codomain_complex(e);
    check_ambient(e);
  }
  return e;
}

HwExpr HwExpr::folded(HwExpr inner, Fold fold, bool declared_null) {
  if (inner.kind() != ExprKind::Hw) domain_error("bad-folded", "only higher Whitehead maps can be folded");
  if (inner.fully_placed()) check_fold_spaces(inner, fold);
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Folded;
  n->inner.push_back(std::move(inner));
  n->fold = std::move(fold);
  n->declared_null = declared_null;
  return HwExpr(std::move(n));
}

ExprKind HwExpr::kind() const noexcept { return node_->kind; }

const MapLeaf& HwExpr::as_leaf() const {
  if (kind() != ExprKind::Leaf) throw std::logic_error("not a leaf");
  return node_->leaf;
}

const std::vector<MapLeaf>& HwExpr::terms() const {
  if (kind() != ExprKind::Sum) throw std::logic_error("not a sum");
  return node_->terms;
}

const std::vector<HwExpr>& HwExpr::args() const {
  if (kind() != ExprKind::Hw) throw std::logic_error("not an hw node");
  return node_->args;
}

const std::optional<SimplicialComplex>& HwExpr::ambient() const {
  if (kind() != ExprKind::Hw) throw std::logic_error("not an hw node");
  return node_->ambient;
}

const HwExpr& HwExpr::inner() const {
  if (kind() != ExprKind::Folded) throw std::logic_error("not a folded node");
  return node_->inner.front();
}

const Fold& HwExpr::fold() const {
  if (kind() != ExprKind::Folded) throw std::logic_error("not a folded node");
  return *node_->fold;
}

bool HwExpr::declared_null() const { return kind() == ExprKind::Folded && node_->declared_null; }

bool HwExpr::fully_placed() const {
  switch (kind()) {
    case ExprKind::Leaf: return node_->leaf.vertex.has_value();
    case ExprKind::Sum: return node_->terms.front().vertex.has_value();
    case ExprKind::Hw:
      return std::all_of(node_->args.begin(), node_->args.end(),
                         [](const HwExpr& a) { return a.fully_placed(); });
    case ExprKind::Folded: return inner().fully_placed();
  }
  return false;
}

bool operator==(const HwExpr& a, const HwExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Leaf: return a.node_->leaf == b.node_->leaf;
    case ExprKind::Sum: return a.node_->terms == b.node_->terms;
    case ExprKind::Hw: return a.node_->args == b.node_->args && a.node_->ambient == b.node_->ambient;
    case ExprKind::Folded:
      return a.inner() == b.inner() && a.fold() == b.fold() && a.declared_null() == b.declared_null();
  }
  return false;
}

namespace {

HwExpr place(const HwExpr& e, const VertexId& path) {
  switch (e.kind()) {
    case ExprKind::Leaf: {
      if (e.as_leaf().vertex) return e;
      MapLeaf l = e.as_leaf();
      l.vertex = path;
      return HwExpr::leaf(std::move(l));
    }
    case ExprKind::Sum: {
      if (e.terms().front().vertex) return e;
      auto terms = e.terms();
      for (auto& t : terms) t.vertex = path;
      return HwExpr::sum(std::move(terms));
    }
    case ExprKind::Hw: {
      std::vector<HwExpr> args;
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        VertexId child(static_cast<int>(i + 1));
        args.push_back(place(e.args()[i], path.valid() ? path.extended(child) : child));
      }
      return HwExpr::hw(std::move(args), e.ambient());
    }
    case ExprKind::Folded: return HwExpr::folded(place(e.inner(), path), e.fold(), e.declared_null());
  }
  return e;
}

void collect_leaves(const HwExpr& e, std::vector<MapLeaf>& out) {
  switch (e.kind()) {
    case ExprKind::Leaf: out.push_back(e.as_leaf()); break;
    case ExprKind::Sum: out.insert(out.end(), e.terms().begin(), e.terms().end()); break;
    case ExprKind::Hw:
      for (const auto& a : e.args()) collect_leaves(a, out);
      break;
    case ExprKind::Folded: collect_leaves(e.inner(), out); break;
  }
}

}  // namespace

HwExpr place_vertices(const HwExpr& e, const VertexId& prefix) {
  if (e.fully_placed()) return e;
  if ((e.kind() == ExprKind::Leaf || e.kind() == ExprKind::Sum) && !prefix.valid()) return place(e, VertexId(1));
  return place(e, prefix);
}

std::vector<MapLeaf> leaves(const HwExpr& e) {
  std::vector<MapLeaf> out;
  collect_leaves(e, out);
  return out;
}

SimplicialComplex target_complex(const HwExpr& e) {
  switch (e.kind()) {
    case ExprKind::Leaf:
    case ExprKind::Sum: {
      const auto& v = e.kind() == ExprKind::Leaf ? e.as_leaf().vertex : e.terms().front().vertex;
      if (!v) domain_error("unplaced-leaf", "leaf has no vertex; call place_vertices first");
      return point(*v);
    }
    case ExprKind::Hw: return anchor_complex(e);
    case ExprKind::Folded: return codomain_complex(e);
  }
  return {};
}

SimplicialComplex codomain_complex(const HwExpr& e) {
  switch (e.kind()) {
    case ExprKind::Hw: return substitute_targets(false, arg_targets(e));
    case ExprKind::Folded: return folded_complex(anchor_complex(e.inner()), e.fold());
    default: domain_error("not-a-map", "only Hw and Folded expressions have a codomain complex");
  }
}

SimplicialComplex anchor_complex(const HwExpr& e) {
  if (e.kind() == ExprKind::Hw && e.ambient()) return *e.ambient();
  return codomain_complex(e);
}

Domain domain(const HwExpr& e) {
  Domain d;
  switch (e.kind()) {
    case ExprKind::Leaf:
      d.suspensions = 1;
      d.smash_factors = {e.as_leaf().name};
      d.sphere_dim = e.as_leaf().sphere_dim;
      break;
    case ExprKind::Sum: {
      std::string name = "(";
      for (std::size_t i = 0; i < e.terms().size(); ++i) name += (i ? "+" : "") + e.terms()[i].name;
      d.suspensions = 1;
      d.smash_factors = {name + ")"};
      d.sphere_dim = e.terms().front().sphere_dim;
      break;
    }
    case ExprKind::Hw: {
      // join of the argument domains: Σ^{m−1} of the smash of the X_i
      d.suspensions = static_cast<int>(e.args().size()) - 1;
      int dims = -1;
      bool spherical = true;
      for (const auto& a : e.args()) {
        Domain da = domain(a);
        d.suspensions += da.suspensions - 1;
        d.smash_factors.insert(d.smash_factors.end(), da.smash_factors.begin(), da.smash_factors.end());
        if (da.sphere_dim) dims += *da.sphere_dim;
        else spherical = false;
      }
      if (spherical) d.sphere_dim = dims;
      break;
    }
    case ExprKind::Folded: return domain(e.inner());
  }
  return d;
}

std::string pretty(const HwExpr& e) {
  switch (e.kind()) {
    case ExprKind::Leaf: return e.as_leaf().name;
    case ExprKind::Sum: return domain(e).smash_factors.front();
    case ExprKind::Hw: {
      std::string out = e.ambient() ? "hw^{K}(" : "hw(";
      for (std::size_t i = 0; i < e.args().size(); ++i) out += (i ? "," : "") + pretty(e.args()[i]);
      return out + ")";
    }
    case ExprKind::Folded: return "nabla_{" + e.fold().str() + "}" + pretty(e.inner());
  }
  return {};
}

std::pair<HwExpr, int> normalize_spherical(const HwExpr& e) {
  switch (e.kind()) {
    case ExprKind::Leaf:
      if (!e.as_leaf().sphere_dim) domain_error("not-spherical", "leaf has no sphere dimension", e.as_leaf().name);
      return {e, 1};
    case ExprKind::Sum: domain_error("not-spherical", "expand formal sums before normalizing");
    case ExprKind::Folded: {
      auto [inner, sign] = normalize_spherical(e.inner());
      return {HwExpr::folded(inner, e.fold(), e.declared_null()), sign};
    }
    case ExprKind::Hw: break;
  }
  int sign = 1;
  std::vector<HwExpr> args;
  std::vector<std::string> keys;
  std::vector<int> dims;
  for (const auto& a : e.args()) {
    auto [na, s] = normalize_spherical(a);
    sign *= s;
    keys.push_back(pretty(na));
    dims.push_back(*domain(na).sphere_dim);
    args.push_back(std::move(na));
  }
  std::vector<int> order(args.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> images;
  std::vector<HwExpr> sorted;
  for (int i : order) {
    images.push_back(i + 1);
    sorted.push_back(args[i]);
  }
  sign *= koszul_sign(Permutation::from_images(images), dims);
  return {HwExpr::hw(std::move(sorted), e.ambient()), sign};
}

namespace {

// Rebuilds e with its first formal sum replaced by `term`.
HwExpr replace_first_sum(const HwExpr& e, const MapLeaf& term, bool& done) {
  if (done) return e;
  switch (e.kind()) {
    case ExprKind::Leaf: return e;
    case ExprKind::Sum: done = true; return HwExpr::leaf(term);
    case ExprKind::Hw: {
      std::vector<HwExpr> args;
      for (const auto& a : e.args()) args.push_back(replace_first_sum(a, term, done));
      return HwExpr::hw(std::move(args), e.ambient());
    }
    case ExprKind::Folded:
      return HwExpr::folded(replace_first_sum(e.inner(), term, done), e.fold(), e.declared_null());
  }
  return e;
}

const HwExpr* first_sum(const HwExpr& e) {
  switch (e.kind()) {
    case ExprKind::Leaf: return nullptr;
    case ExprKind::Sum: return &e;
    case ExprKind::Hw:
      for (const auto& a : e.args()) {
        if (auto* s = first_sum(a)) return s;
      }
      return nullptr;
    case ExprKind::Folded: return first_sum(e.inner());
  }
  return nullptr;
}

}  // namespace

std::vector<HwExpr> expand_linear(const HwExpr& e) {
  const HwExpr* s = first_sum(e);
  if (!s) return {e};
  std::vector<HwExpr> out;
  for (const auto& term : s->terms()) {
    if (!term.suspension) domain_error("not-suspension", "multilinearity requires suspension", term.name);
  }
  for (const auto& term : s->terms()) {
    bool done = false;
    for (auto& x : expand_linear(replace_first_sum(e, term, done))) out.push_back(std::move(x));
  }
  return out;
}

std::string to_string(TrivialityStatus s) {
  switch (s) {
    case TrivialityStatus::Trivial: return "Trivial";
    case TrivialityStatus::NonTrivial: return "NonTrivial";
    case TrivialityStatus::Unknown: return "Unknown";
  }
  return {};
}

std::vector<std::pair<std::string, SimplicialComplex>> trivializing_complexes(const HwExpr& e) {
  if (e.kind() != ExprKind::Hw) domain_error("not-hw", "trivializing complexes are defined for Hw nodes");
  std::vector<SimplicialComplex> targets = arg_targets(e);
  std::vector<std::pair<std::string, SimplicialComplex>> out;
  out.emplace_back("R2", substitute_targets(true, targets));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (e.args()[i].kind() != ExprKind::Hw) continue;
    for (const auto& [tag, t] : trivializing_complexes(e.args()[i])) {
      auto widened = targets;
      widened[i] = complex_union(targets[i], t);
      out.emplace_back("R3", substitute_targets(false, widened));
    }
  }
  return out;
}

namespace {

Triviality trivial(std::string rule, std::string detail) {
  return Triviality{TrivialityStatus::Trivial, std::move(rule), std::nullopt, std::move(detail)};
}

// A leaf declared null, or a formal sum of null maps.
std::optional<Triviality> null_leaf(const HwExpr& e) {
  switch (e.kind()) {
    case ExprKind::Leaf:
      if (e.as_leaf().is_null) return trivial("R1", "null map " + e.as_leaf().name);
      return std::nullopt;
    case ExprKind::Sum:
      if (std::all_of(e.terms().begin(), e.terms().end(), [](const MapLeaf& l) { return l.is_null; })) {
        return trivial("R1", "sum of null maps");
      }
      return std::nullopt;
    case ExprKind::Hw:
      for (const auto& a : e.args()) {
        if (auto t = null_leaf(a)) return t;
      }
      return std::nullopt;
    case ExprKind::Folded:
      if (e.declared_null()) return trivial("R1", "folded map declared null");
      return null_leaf(e.inner());
  }
  return std::nullopt;
}

// Depth-two bracket hw(hw(leaves), leaves) of degree-two spherical classes.
bool dj_shape(const HwExpr& e) {
  int nested = 0;
  for (const auto& a : e.args()) {
    if (a.kind() == ExprKind::Hw) {
      if (a.ambient()) return false;
      for (const auto& b : a.args()) {
        if (b.kind() != ExprKind::Leaf) return false;
      }
      ++nested;
    } else if (a.kind() != ExprKind::Leaf) {
      return false;
    }
  }
  if (nested != 1) return false;
  for (const auto& l : leaves(e)) {
    if (l.sphere_dim != 2) return false;
  }
  return true;
}

Triviality hw_triviality(const HwExpr& e, TrivialityMode mode) {
  if (auto t = null_leaf(e)) return *t;
  for (std::size_t i = 0; i < e.args().size(); ++i) {
    const HwExpr& a = e.args()[i];
    if (a.kind() == ExprKind::Leaf || a.kind() == ExprKind::Sum) continue;
    Triviality ta = triviality(a, mode);
    if (ta.status == TrivialityStatus::Trivial) {
      return trivial("R1", "argument " + std::to_string(i + 1) + " is trivial (" + ta.rule + ")");
    }
  }
  SimplicialComplex amb = anchor_complex(e);
  auto shapes = trivializing_complexes(e);
  for (const auto& [tag, t] : shapes) {
    if (is_subcomplex(t, amb)) return trivial(tag, "ambient contains " + describe(t));
  }
  if (mode == TrivialityMode::DJ && dj_shape(e)) {
    const SimplicialComplex& required = shapes.front().second;
    std::vector<Mask> fs = required.face_masks();
    std::stable_sort(fs.begin(), fs.end(),
                     [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
    for (Mask f : fs) {
      VertexSet face = required.face_of(f);
      if (!amb.is_face(face)) {
        return Triviality{TrivialityStatus::NonTrivial, "R5", face,
                          "ambient misses a face of " + describe(required)};
      }
    }
  }
  return {};
}

Triviality folded_triviality(const HwExpr& e, TrivialityMode mode) {
  if (e.declared_null()) return trivial("R1", "folded map declared null");
  Triviality ti = triviality(e.inner(), mode);
  if (ti.status == TrivialityStatus::Trivial) {
    return trivial("R1", "unfolded map is trivial (" + ti.rule + ")");
  }
  SimplicialComplex amb = anchor_complex(e.inner());
  auto shapes = trivializing_complexes(e.inner());
  SimplicialComplex lpsi = max_folding_complex(amb, e.fold());
  for (const auto& [tag, t] : shapes) {
    if (is_subcomplex(t, lpsi)) return trivial("R4b", "L_psi contains the " + tag + " complex");
  }
  SimplicialComplex folded_amb = folded_complex(amb, e.fold());
  for (const auto& [tag, t] : shapes) {
    SimplicialComplex ft = folded_complex(with_vertices(t, set_union(t.vertices(), amb.vertices())), e.fold());
    if (is_subcomplex(ft, folded_amb)) return trivial("R4a", "folded " + tag + " complex lies in the folded ambient");
  }
  return {};
}

}  // namespace

Triviality triviality(const HwExpr& raw, TrivialityMode mode) {
  HwExpr e = place_vertices(raw);
  switch (e.kind()) {
    case ExprKind::Leaf:
    case ExprKind::Sum:
      if (auto t = null_leaf(e)) return *t;
      return {};
    case ExprKind::Hw: return hw_triviality(e, mode);
    case ExprKind::Folded: return folded_triviality(e, mode);
  }
  return {};
}

}  // namespace pwh
