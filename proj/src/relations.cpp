#include "pwh/relations.hpp"

#include <algorithm>
#include <stdexcept>

#include "pwh/error.hpp"
#include "pwh/expr_io.hpp"
#include "pwh/polyjoin.hpp"

namespace pwh {

Partition Partition::from_blocks(std::vector<VertexSet> blocks) {
  Partition p;
  std::vector<VertexId> all;
  for (auto& b : blocks) {
    std::size_t n = b.size();
    b = make_vertex_set(std::move(b));
    if (b.empty()) domain_error("bad-partition", "partition blocks must be nonempty");
    if (b.size() != n) domain_error("bad-partition", "a block repeats a vertex", to_string(b));
    all.insert(all.end(), b.begin(), b.end());
  }
  std::size_t total = all.size();
  p.ground_ = make_vertex_set(std::move(all));
  if (p.ground_.size() != total) domain_error("bad-partition", "partition blocks must be disjoint");
  p.blocks_ = std::move(blocks);
  return p;
}

Partition Partition::parse(std::string_view text) {
  std::vector<VertexSet> blocks;
  std::size_t pos = 0;
  while (true) {
    std::size_t bar = text.find('|', pos);
    std::string_view block = text.substr(pos, bar == std::string_view::npos ? bar : bar - pos);
    std::vector<VertexId> vs;
    std::size_t q = 0;
    while (q <= block.size()) {
      std::size_t comma = block.find(',', q);
      std::string_view item = block.substr(q, comma == std::string_view::npos ? comma : comma - q);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (item.empty()) input_error("bad-partition", "empty vertex in partition", std::string(text));
      vs.push_back(VertexId::parse(item));
      if (comma == std::string_view::npos) break;
      q = comma + 1;
    }
    blocks.push_back(std::move(vs));
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  try {
    return from_blocks(std::move(blocks));
  } catch (const Error& e) {
    input_error(e.code(), e.what(), std::string(text));
  }
}

Partition Partition::singletons(int m) {
  std::vector<VertexSet> blocks;
  for (int i = 1; i <= m; ++i) blocks.push_back({VertexId(i)});
  return from_blocks(std::move(blocks));
}

VertexSet Partition::complement(std::size_t i) const { return set_difference(ground_, blocks_.at(i)); }

std::string Partition::str() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += '|';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) out += (j ? "," : "") + blocks_[i][j].str();
  }
  return out;
}

namespace {

std::size_t position(const VertexSet& ground, const VertexId& v) {
  return static_cast<std::size_t>(std::lower_bound(ground.begin(), ground.end(), v) - ground.begin());
}

void require_k3(const Partition& p) {
  if (p.k() < 3) domain_error("partition-too-coarse", "identity complex requires k ≥ 3", p.str());
}

const JoinOptions kInherit{Labeling::Inherit, false};

}  // namespace

Permutation block_permutation(const Partition& p, std::size_t i) {
  std::vector<int> images;
  for (const auto& v : p.complement(i)) images.push_back(static_cast<int>(position(p.ground(), v)) + 1);
  for (const auto& v : p.blocks().at(i)) images.push_back(static_cast<int>(position(p.ground(), v)) + 1);
  return Permutation::from_images(std::move(images));
}

SimplicialComplex identity_complex_by_mf(const Partition& p) {
  require_k3(p);
  std::vector<VertexSet> mf;
  for (std::size_t i = 0; i < p.k(); ++i) mf.push_back(p.complement(i));
  return from_minimal_missing_faces(p.ground(), mf);
}

SimplicialComplex identity_complex_by_union(const Partition& p) {
  require_k3(p);
  SimplicialComplex out = SimplicialComplex::void_on(p.ground());
  for (std::size_t i = 0; i < p.k(); ++i) {
    const VertexSet& block = p.blocks()[i];
    std::vector<SimplicialComplex> inner{boundary_simplex(p.complement(i))};
    for (const auto& v : block) inner.push_back(point(v));
    SimplicialComplex piece =
        substitution(boundary_simplex(range_labels(static_cast<int>(block.size()) + 1)), inner, kInherit);
    out = complex_union(out, piece);
  }
  return out;
}

SimplicialComplex identity_complex(const Partition& p) {
  require_k3(p);
  int k = static_cast<int>(p.k());
  std::vector<SimplicialComplex> inner;
  for (const auto& b : p.blocks()) inner.push_back(boundary_simplex(b));
  // composition slots follow block order, labels come from the blocks
  SimplicialComplex out = composition(skeleton(simplex(range_labels(k)), k - 3), inner, kInherit);
#ifndef NDEBUG
  if (p.m() <= 10 && (!(out == identity_complex_by_mf(p)) || !(out == identity_complex_by_union(p)))) {
    throw std::logic_error("identity complex constructions disagree for " + p.str());
  }
#endif
  return out;
}

std::vector<MapLeaf> default_leaves(const Partition& p, const std::optional<std::vector<int>>& dims,
                                    bool dj) {
  if (dims && dims->size() != p.m()) {
    domain_error("bad-dims", "need " + std::to_string(p.m()) + " degrees, got " + std::to_string(dims->size()));
  }
  std::vector<MapLeaf> out;
  for (std::size_t t = 0; t < p.m(); ++t) {
    MapLeaf l;
    l.name = "f" + p.ground()[t].str();
    if (dj) l.name = "mu" + p.ground()[t].str();
    if (dims) l.sphere_dim = (*dims)[t];
    else if (dj) l.sphere_dim = 2;
    l.codomain = SpaceRef{dj ? "CPinf" : "Y", true, true};
    l.vertex = p.ground()[t];
    out.push_back(std::move(l));
  }
  return out;
}

namespace {

std::vector<HwExpr> args_from_leaves(const Partition& p, std::vector<MapLeaf>& leaves, bool require_spheres) {
  if (leaves.size() != p.m()) {
    domain_error("bad-leaves", "need " + std::to_string(p.m()) + " maps, got " + std::to_string(leaves.size()));
  }
  bool spherical = std::all_of(leaves.begin(), leaves.end(), [](const MapLeaf& l) { return l.sphere_dim.has_value(); });
  std::vector<HwExpr> args;
  for (std::size_t t = 0; t < leaves.size(); ++t) {
    MapLeaf& l = leaves[t];
    if (!l.suspension) domain_error("not-suspension", "relations need suspension domains", l.name);
    if (require_spheres && spherical && *l.sphere_dim < 2) {
      domain_error("low-degree", "spherical relations need degrees ≥ 2", l.name);
    }
    l.vertex = p.ground()[t];
    args.push_back(HwExpr::leaf(l));
  }
  return args;
}

// Summand i before any outer fold.
HwExpr summand_expr(const Partition& p, std::size_t i, const std::vector<HwExpr>& args,
                    const SimplicialComplex& ambient) {
  std::vector<HwExpr> inner;
  for (const auto& v : p.complement(i)) inner.push_back(args[position(p.ground(), v)]);
  std::vector<HwExpr> outer{HwExpr::hw(std::move(inner))};
  for (const auto& v : p.blocks()[i]) outer.push_back(args[position(p.ground(), v)]);
  return HwExpr::hw(std::move(outer), ambient);
}

Relation assemble(const Partition& p, const std::vector<HwExpr>& args, const SimplicialComplex& ambient,
                  const std::optional<Fold>& fold, const RelationOptions& opts) {
  require_k3(p);
  std::vector<int> dims;
  bool spherical = true;
  for (const auto& a : args) {
    auto d = domain(a).sphere_dim;
    if (d) dims.push_back(*d);
    else spherical = false;
  }
  Relation r;
  r.ambient = fold ? folded_complex(ambient, *fold) : ambient;
  for (std::size_t i = 0; i < p.k(); ++i) {
    HwExpr e = summand_expr(p, i, args, ambient);
    if (fold) e = HwExpr::folded(e, *fold);
    Summand s{e, block_permutation(p, i), std::nullopt, 1, triviality(e, opts.mode), std::nullopt, i};
    if (spherical) {
      s.sign = koszul_sign(s.permutation, dims);
      s.degree = domain(e).sphere_dim;
    }
    r.summands.push_back(std::move(s));
  }
  return opts.collect ? collect(r) : r;
}

VertexId nested_label(const VertexId& slot, const VertexId& u, std::size_t n) {
  return slot_label(slot, u, n, JoinOptions{});
}

SimplicialComplex relabel_slot(const VertexId& slot, const SimplicialComplex& s) {
  std::map<VertexId, VertexId> map;
  for (const auto& u : s.vertices()) map.emplace(u, nested_label(slot, u, s.vertex_count()));
  return relabel(s, map);
}

HwExpr default_slot_arg(const SimplicialComplex& s) {
  auto leaf_at = [](const VertexId& v) {
    MapLeaf l;
    l.name = "f" + v.str();
    l.codomain = SpaceRef{"Y", true, true};
    l.vertex = v;
    return HwExpr::leaf(l);
  };
  if (s.vertex_count() == 1) {
    if (!s.is_face(s.vertices())) domain_error("void-slot", "inner complex on one vertex must be that vertex");
    return leaf_at(s.vertices()[0]);
  }
  SimplicialComplex bd = boundary_simplex(s.vertices());
  if (!is_subcomplex(bd, s)) {
    domain_error("no-default-arg", "no default map into this inner complex; pass arguments explicitly",
                 describe(s));
  }
  std::vector<HwExpr> leaves;
  for (const auto& v : s.vertices()) leaves.push_back(leaf_at(v));
  return HwExpr::hw(std::move(leaves), s == bd ? std::nullopt : std::optional<SimplicialComplex>(s));
}

struct Substituted {
  std::vector<SimplicialComplex> inner;  // relabeled
  SimplicialComplex total;               // K_Π⟨inner⟩
  std::vector<HwExpr> args;
};

Substituted substitute(const Partition& p, const std::vector<SimplicialComplex>& inner,
                       std::vector<HwExpr> args) {
  require_k3(p);
  if (inner.size() != p.m()) {
    domain_error("slot-count", "need " + std::to_string(p.m()) + " inner complexes, got " + std::to_string(inner.size()));
  }
  Substituted out;
  for (std::size_t t = 0; t < p.m(); ++t) out.inner.push_back(relabel_slot(p.ground()[t], inner[t]));
  out.total = substitution(identity_complex(p), out.inner, kInherit);
  if (args.empty()) {
    for (const auto& s : out.inner) args.push_back(default_slot_arg(s));
  }
  if (args.size() != p.m()) domain_error("bad-args", "need one argument per slot");
  for (std::size_t t = 0; t < p.m(); ++t) {
    args[t] = place_vertices(args[t], p.ground()[t]);
    if (!(target_complex(args[t]) == out.inner[t])) {
      domain_error("arg-target", "argument " + std::to_string(t + 1) + " does not occupy its inner complex",
                   describe(target_complex(args[t])));
    }
  }
  out.args = std::move(args);
  return out;
}

}  // namespace

Relation relation(const Partition& p, std::vector<MapLeaf> leaves, const RelationOptions& opts) {
  require_k3(p);
  std::vector<HwExpr> args = args_from_leaves(p, leaves, true);
  return assemble(p, args, identity_complex(p), std::nullopt, opts);
}

Relation substituted_relation(const Partition& p, const std::vector<SimplicialComplex>& inner,
                              std::vector<HwExpr> args, std::optional<SimplicialComplex> ambient,
                              const RelationOptions& opts) {
  Substituted s = substitute(p, inner, std::move(args));
  SimplicialComplex amb = ambient ? *ambient : s.total;
  for (Mask f : s.total.facet_masks()) {
    VertexSet face = s.total.face_of(f);
    if (!amb.is_face(face)) domain_error("ambient-too-small", "ambient must contain K_Π⟨S⟩", to_string(face));
  }
  return assemble(p, s.args, amb, std::nullopt, opts);
}

Relation folded_relation(const Partition& p, const Fold& fold, std::vector<MapLeaf> leaves,
                         const RelationOptions& opts) {
  require_k3(p);
  fold.check_applicable(p.ground());
  std::vector<HwExpr> args = args_from_leaves(p, leaves, true);
  return assemble(p, args, identity_complex(p), fold, opts);
}

Relation fold_within_relation(const Partition& p, const std::vector<SimplicialComplex>& inner, const Fold& fold,
                              std::vector<HwExpr> args, const std::vector<bool>& null_slots,
                              const RelationOptions& opts) {
  Substituted s = substitute(p, inner, std::move(args));
  fold.check_applicable(s.total.vertices());
  std::vector<VertexSet> blocks;
  for (const auto& c : s.inner) blocks.push_back(c.vertices());
  if (!is_block_respecting(fold, blocks)) {
    domain_error("fold-not-block-respecting", "fold must stay inside the inner vertex sets", fold.str());
  }
  if (!null_slots.empty() && null_slots.size() != p.m()) domain_error("bad-null-slots", "need one flag per slot");
  std::vector<SimplicialComplex> folded_inner;
  std::vector<HwExpr> folded_args;
  for (std::size_t t = 0; t < p.m(); ++t) {
    auto pairs = fold.pairs_within(s.inner[t].vertices());
    bool declared_null = !null_slots.empty() && null_slots[t];
    if (pairs.empty()) {
      if (declared_null) domain_error("bad-null-slots", "only folded arguments can be declared null");
      folded_inner.push_back(s.inner[t]);
      folded_args.push_back(s.args[t]);
      continue;
    }
    Fold local = Fold::from_pairs(std::move(pairs));
    if (s.args[t].kind() != ExprKind::Hw) domain_error("bad-args", "a folded slot needs an Hw argument");
    folded_inner.push_back(folded_complex(s.inner[t], local));
    folded_args.push_back(HwExpr::folded(s.args[t], local, declared_null));
  }
  SimplicialComplex amb = substitution(identity_complex(p), folded_inner, kInherit);
  if (!(amb == folded_complex(s.total, fold))) {
    throw std::logic_error("fold does not commute with substitution for " + fold.str());
  }
  return assemble(p, folded_args, amb, std::nullopt, opts);
}

Relation fold_across_relation(int m, const SimplicialComplex& k1, const SimplicialComplex& km, const Fold& fold,
                              std::vector<HwExpr> args, const RelationOptions& opts) {
  if (m < 3) domain_error("bad-m", "fold-across relations need m ≥ 3");
  std::vector<VertexSet> blocks{{VertexId(1)}, {}, {VertexId(m)}};
  for (int t = 2; t < m; ++t) blocks[1].push_back(VertexId(t));
  if (m == 3) blocks[1] = {VertexId(2)};
  Partition p = Partition::from_blocks(blocks);
  std::vector<SimplicialComplex> inner{k1};
  for (int t = 2; t < m; ++t) inner.push_back(point(VertexId(t)));
  inner.push_back(km);
  Substituted s = substitute(p, inner, std::move(args));
  const SimplicialComplex& k1r = s.inner.front();
  const SimplicialComplex& kmr = s.inner.back();

  if (fold.sources() != kmr.vertices()) {
    domain_error("fold-across-sources", "fold sources must be exactly the vertices of K_m", to_string(kmr.vertices()));
  }
  if (!is_subset(fold.targets(), k1r.vertices()) || fold.targets().size() != fold.sources().size()) {
    domain_error("fold-across-targets", "fold must map K_m injectively into K_1", fold.str());
  }
  std::map<VertexId, VertexId> iso(fold.mapping().begin(), fold.mapping().end());
  if (!(relabel(kmr, iso) == full_subcomplex(k1r, fold.targets()))) {
    domain_error("not-full-subcomplex", "the fold must identify K_m with a full subcomplex of K_1", fold.str());
  }

  Relation r = assemble(p, s.args, s.total, fold, RelationOptions{opts.mode, false});
  std::vector<SimplicialComplex> expected{k1r};
  for (int t = 2; t < m; ++t) expected.push_back(point(VertexId(t)));
  if (!(r.ambient == substitution(boundary_simplex(range_labels(m - 1)), expected, kInherit))) {
    throw std::logic_error("folded ambient differs from the boundary substitution");
  }
  // block 1 is {2..m−1}; its inner bracket is hw(f_1, f_m)
  if (folded_complex(join(k1r, kmr), fold) == k1r) {
    r.summands[1].triviality = Triviality{TrivialityStatus::Trivial, "R4",
                                          std::nullopt, "K_1 = (K_1 * K_m) folded"};
  }
  return opts.collect ? collect(r) : r;
}

namespace {

void strip_vertices(Json& j) {
  if (j.is_object()) {
    j.erase("vertex");
    for (auto& [k, v] : j.items()) strip_vertices(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_vertices(v);
  }
}

std::string collect_key(const HwExpr& e) {
  Json j = expr_to_json(e);
  strip_vertices(j);
  return j.dump();
}

}  // namespace

Relation collect(const Relation& r) {
  Relation out;
  out.ambient = r.ambient;
  std::vector<std::string> keys;
  for (const auto& s : r.summands) {
    if (s.triviality.status == TrivialityStatus::Trivial) {
      out.summands.push_back(s);
      keys.emplace_back();
      continue;
    }
    Summand merged = s;
    std::string key;
    if (s.sign) {
      auto [ne, ns] = normalize_spherical(s.expr);
      merged.expr = ne;
      merged.coefficient = s.coefficient * *s.sign * ns;
      merged.sign = 1;
      key = collect_key(ne);
    } else {
      key = collect_key(s.expr) + s.permutation.str();
    }
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it != keys.end()) {
      out.summands[it - keys.begin()].coefficient += merged.coefficient;
    } else {
      out.summands.push_back(std::move(merged));
      keys.push_back(std::move(key));
    }
  }
  return out;
}

IdentityFoldShape classify_identity_fold(const Partition& p, const Fold& fold) {
  VertexSet touched = set_union(fold.sources(), fold.targets());
  auto block_of = [&](const VertexId& v) {
    for (std::size_t l = 0; l < p.k(); ++l) {
      if (contains(p.blocks()[l], v)) return l;
    }
    domain_error("fold-outside-vertices", "fold vertex outside the partition", v.str());
  };
  for (std::size_t l = 0; l < p.k(); ++l) {
    if (is_subset(touched, p.blocks()[l])) return {IdentityFoldCase::WithinBlock, l, {}};
  }
  if (fold.sources().size() == 1 && fold.targets().size() == 1) {
    return {IdentityFoldCase::CrossBlock, std::nullopt,
            {block_of(fold.sources()[0]), block_of(fold.targets()[0])}};
  }
  return {IdentityFoldCase::Collapsing, std::nullopt, {}};
}

SimplicialComplex predicted_folded_identity(const Partition& p, const Fold& fold) {
  IdentityFoldShape shape = classify_identity_fold(p, fold);
  VertexSet rest = set_difference(p.ground(), fold.sources());
  switch (shape.kind) {
    case IdentityFoldCase::WithinBlock: {
      std::size_t l = *shape.block;
      return join(boundary_simplex(p.complement(l)), simplex(set_difference(p.blocks()[l], fold.sources())));
    }
    case IdentityFoldCase::CrossBlock: return boundary_simplex(rest);
    case IdentityFoldCase::Collapsing: return simplex(rest);
  }
  return {};
}

SimplicialComplex predicted_identity_lpsi(const Partition& p, const Fold& fold) {
  IdentityFoldShape shape = classify_identity_fold(p, fold);
  switch (shape.kind) {
    case IdentityFoldCase::WithinBlock: {
      std::size_t l = *shape.block;
      return join(boundary_simplex(p.complement(l)), simplex(p.blocks()[l]));
    }
    case IdentityFoldCase::CrossBlock:
      return from_minimal_missing_faces(p.ground(), {set_difference(p.ground(), fold.sources()),
                                                     set_difference(p.ground(), fold.targets())});
    case IdentityFoldCase::Collapsing: return simplex(p.ground());
  }
  return {};
}

bool predicted_folded_trivial(const Partition& p, const Fold& fold, std::size_t i) {
  IdentityFoldShape shape = classify_identity_fold(p, fold);
  if (shape.kind != IdentityFoldCase::CrossBlock) return true;
  return std::find(shape.touched_blocks.begin(), shape.touched_blocks.end(), i) == shape.touched_blocks.end();
}

Json relation_to_json(const Relation& r) {
  Json out;
  out["ambient"] = complex_to_json(r.ambient);
  Json summands = Json::array();
  for (const auto& s : r.summands) {
    Json j;
    j["block"] = s.block + 1;
    j["pretty"] = pretty(s.expr);
    j["expr"] = expr_to_json(s.expr);
    j["permutation"] = s.permutation.images();
    j["sign"] = s.sign ? Json(*s.sign) : Json(nullptr);
    j["coefficient"] = s.coefficient;
    j["degree"] = s.degree ? Json(*s.degree) : Json(nullptr);
    j["triviality"] = triviality_to_json(s.triviality);
    summands.push_back(std::move(j));
  }
  out["summands"] = std::move(summands);
  return out;
}

Relation relation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("summands") || !j["summands"].is_array()) {
    input_error("bad-json", "a relation needs \"ambient\" and a \"summands\" array");
  }
  Relation r;
  r.ambient = complex_from_json(j["ambient"]);
  for (const auto& s : j["summands"]) {
    if (!s.is_object() || !s.contains("expr") || !s.contains("permutation") || !s.contains("triviality")) {
      input_error("bad-json", "a summand needs expr, permutation and triviality");
    }
    std::vector<int> images;
    for (const auto& v : s["permutation"]) {
      if (!v.is_number_integer()) input_error("bad-json", "permutation entries must be integers");
      images.push_back(v.get<int>());
    }
    Summand sm{expr_from_json(s["expr"]), Permutation::from_images(std::move(images)), std::nullopt, 1,
               triviality_from_json(s["triviality"]), std::nullopt, 0};
    if (s.contains("sign") && !s["sign"].is_null()) sm.sign = s["sign"].get<int>();
    if (s.contains("coefficient")) sm.coefficient = s["coefficient"].get<int>();
    if (s.contains("degree") && !s["degree"].is_null()) sm.degree = s["degree"].get<int>();
    if (s.contains("block")) sm.block = s["block"].get<std::size_t>() - 1;
    r.summands.push_back(std::move(sm));
  }
  return r;
}

std::string serialize_relation(const Relation& r) { return relation_to_json(r).dump(); }

}  // namespace pwh
