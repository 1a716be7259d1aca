#include "pwh/polyjoin.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <iostream>

#include "pwh/error.hpp"

namespace pwh {

SimplicialPair::SimplicialPair(SimplicialComplex big, SimplicialComplex small)
    : big_(std::move(big)), small_(std::move(small)) {
  if (big_.vertices() != small_.vertices()) {
    domain_error("pair-vertices", "a pair (S,T) needs one vertex set for S and T",
                 to_string(big_.vertices()) + " vs " + to_string(small_.vertices()));
  }
  if (big_.is_void()) domain_error("void-pair", "the big complex of a pair must not be VOID");
  if (!is_subcomplex(small_, big_)) {
    domain_error("pair-not-nested", "a pair (S,T) needs T ⊆ S", describe(small_));
  }
}

VertexId slot_label(const VertexId& slot, const VertexId& u, std::size_t inner_size,
                    const JoinOptions& opts) {
  if (opts.labeling == Labeling::Inherit) return u;
  if (opts.flatten_singletons && inner_size == 1) return slot;
  if (slot.is_proper_prefix_of(u)) return u;
  return slot.extended(u);
}

namespace {

struct Layout {
  VertexSet vertices;
  std::vector<MaskMap> maps;
};

Layout make_layout(const SimplicialComplex& k, std::span<const SimplicialPair> pairs,
                   const JoinOptions& opts) {
  if (k.is_void()) domain_error("void-outer", "the outer complex must not be VOID");
  if (pairs.size() != k.vertex_count()) {
    domain_error("slot-count", "expected " + std::to_string(k.vertex_count())
                                   + " inner complexes, got " + std::to_string(pairs.size()));
  }
  std::vector<VertexSet> relabeled(pairs.size());
  std::vector<VertexId> all;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const VertexSet& inner = pairs[i].vertices();
    for (const auto& u : inner) {
      relabeled[i].push_back(slot_label(k.vertices()[i], u, inner.size(), opts));
      all.push_back(relabeled[i].back());
    }
  }
  Layout layout;
  std::size_t total = all.size();
  layout.vertices = make_vertex_set(std::move(all));
  if (layout.vertices.size() != total) {
    domain_error("overlapping-vertices", "inner vertex sets collide after relabeling");
  }
  for (const auto& r : relabeled) {
    std::vector<Mask> images;
    for (const auto& v : r) {
      auto pos = std::lower_bound(layout.vertices.begin(), layout.vertices.end(), v);
      images.push_back(Mask{1} << (pos - layout.vertices.begin()));
    }
    layout.maps.emplace_back(std::move(images));
  }
  return layout;
}

std::vector<Mask> mapped(const MaskMap& map, const std::vector<Mask>& masks) {
  std::vector<Mask> out;
  out.reserve(masks.size());
  for (Mask m : masks) out.push_back(map(m));
  return out;
}

// All unions choosing one mask from each list.
void extend_product(std::vector<Mask>& acc, const std::vector<Mask>& options) {
  std::vector<Mask> next;
  next.reserve(acc.size() * options.size());
  for (Mask a : acc) {
    for (Mask o : options) next.push_back(a | o);
  }
  acc = std::move(next);
}

}  // namespace

SimplicialComplex polyhedral_join(const SimplicialComplex& k, std::span<const SimplicialPair> pairs,
                                  const JoinOptions& opts) {
  Layout layout = make_layout(k, pairs, opts);
  std::vector<std::vector<Mask>> big, small;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    big.push_back(mapped(layout.maps[i], pairs[i].big().facet_masks()));
    small.push_back(mapped(layout.maps[i], pairs[i].small().facet_masks()));
  }
  // T_i ⊆ S_i makes the join monotone in σ, so facets of K suffice.
  std::vector<Mask> facets;
  for (Mask sigma : k.facet_masks()) {
    std::vector<Mask> acc{0};
    for (std::size_t i = 0; i < pairs.size() && !acc.empty(); ++i) {
      extend_product(acc, (sigma >> i) & 1u ? big[i] : small[i]);
    }
    facets.insert(facets.end(), acc.begin(), acc.end());
  }
  return SimplicialComplex::from_masks(std::move(layout.vertices), std::move(facets));
}

SimplicialComplex substitution(const SimplicialComplex& k, std::span<const SimplicialComplex> inner,
                               const JoinOptions& opts) {
  std::vector<SimplicialPair> pairs;
  pairs.reserve(inner.size());
  for (const auto& s : inner) pairs.emplace_back(s, SimplicialComplex::empty_on(s.vertices()));
  return polyhedral_join(k, pairs, opts);
}

SimplicialComplex composition(const SimplicialComplex& k, std::span<const SimplicialComplex> inner,
                              const JoinOptions& opts) {
  std::vector<SimplicialPair> pairs;
  pairs.reserve(inner.size());
  for (const auto& t : inner) pairs.emplace_back(simplex(t.vertices()), t);
  return polyhedral_join(k, pairs, opts);
}

std::vector<VertexSet> mf_polyhedral_join(const SimplicialComplex& k,
                                          std::span<const SimplicialPair> pairs,
                                          const JoinOptions& opts, MfRoute* route) {
  Layout layout = make_layout(k, pairs, opts);
  SimplicialComplex shell = SimplicialComplex::void_on(layout.vertices);
  auto to_sets = [&](std::vector<Mask> masks) {
    std::sort(masks.begin(), masks.end(), mask_lex_less);
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<VertexSet> out;
    for (Mask m : masks) out.push_back(shell.face_of(m));
    return out;
  };

  bool void_small = std::any_of(pairs.begin(), pairs.end(), [](const SimplicialPair& p) { return p.small().is_void(); });
  if (k.realized_vertices() != k.vertices() || void_small) {
    if (std::getenv("PWH_DEBUG")) {
      std::clog << "pwh: ghost vertex in K or VOID T_i; MF by enumeration\n";
    }
    if (route) *route = MfRoute::BruteForce;
    return to_sets(minimal_missing_face_masks(polyhedral_join(k, pairs, opts)));
  }
  if (route) *route = MfRoute::Formula;

  std::vector<Mask> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (Mask tau : minimal_missing_face_masks(pairs[i].big())) out.push_back(layout.maps[i](tau));
  }
  // τ_i ranges over MF(T_i) that are faces of S_i.
  std::vector<std::vector<Mask>> options(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& s = pairs[i].big();
    const auto& t = pairs[i].small();
    for (Mask tau : minimal_missing_face_masks(t)) {
      if (s.is_face_mask(tau)) options[i].push_back(layout.maps[i](tau));
    }
  }
  for (Mask kappa : minimal_missing_face_masks(k)) {
    std::vector<Mask> acc{0};
    for (Mask r = kappa; r && !acc.empty(); r &= r - 1) {
      extend_product(acc, options[std::countr_zero(r)]);
    }
    out.insert(out.end(), acc.begin(), acc.end());
  }
  return to_sets(std::move(out));
}

}  // namespace pwh
