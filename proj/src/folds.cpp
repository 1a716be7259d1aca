#include "pwh/folds.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "pwh/error.hpp"

namespace pwh {

Fold Fold::from_pairs(std::vector<std::pair<VertexId, VertexId>> mapping) {
  if (mapping.empty()) domain_error("empty-fold", "a fold needs at least one pair");
  std::sort(mapping.begin(), mapping.end());
  Fold f;
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    if (i && mapping[i].first == mapping[i - 1].first) {
      domain_error("fold-not-function", "a fold source is mapped twice", mapping[i].first.str());
    }
    f.sources_.push_back(mapping[i].first);
    f.targets_.push_back(mapping[i].second);
  }
  f.targets_ = make_vertex_set(std::move(f.targets_));
  auto clash = set_intersection(f.sources_, f.targets_);
  if (!clash.empty()) {
    domain_error("fold-overlap", "fold sources and targets must be disjoint", to_string(clash));
  }
  f.mapping_ = std::move(mapping);
  return f;
}

Fold Fold::parse(std::string_view text) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return c == ';' || c == ',' || c == ' '; };
  while (pos < text.size()) {
    if (is_sep(text[pos])) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    std::string_view item = text.substr(pos, end - pos);
    auto arrow = item.find("->");
    if (arrow == std::string_view::npos) input_error("bad-fold", "expected 'i->j'", std::string(item));
    pairs.emplace_back(VertexId::parse(item.substr(0, arrow)), VertexId::parse(item.substr(arrow + 2)));
    pos = end;
  }
  if (pairs.empty()) input_error("bad-fold", "empty fold map", std::string(text));
  return from_pairs(std::move(pairs));
}

VertexId Fold::apply(const VertexId& v) const {
  auto it = std::lower_bound(mapping_.begin(), mapping_.end(), v,
                             [](const auto& p, const VertexId& x) { return p.first < x; });
  if (it != mapping_.end() && it->first == v) return it->second;
  return v;
}

VertexSet Fold::apply(const VertexSet& face) const {
  VertexSet out;
  for (const auto& v : face) out.push_back(apply(v));
  return make_vertex_set(std::move(out));
}

VertexSet Fold::block(const VertexId& j) const {
  VertexSet out;
  for (const auto& [i, t] : mapping_) {
    if (t == j) out.push_back(i);
  }
  return out;
}

void Fold::check_applicable(const VertexSet& vertices) const {
  for (const VertexSet* s : {&sources_, &targets_}) {
    if (std::includes(vertices.begin(), vertices.end(), s->begin(), s->end())) continue;
    VertexSet missing = set_difference(*s, vertices);
    if (!missing.empty()) {
      domain_error("fold-outside-vertices", "fold uses vertices outside the complex", to_string(missing));
    }
  }
}

std::vector<std::pair<VertexId, VertexId>> Fold::pairs_within(const VertexSet& vertices) const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (const auto& p : mapping_) {
    if (contains(vertices, p.first)) out.push_back(p);
  }
  return out;
}

std::string Fold::str() const {
  std::string out;
  for (const auto& [i, j] : mapping_) {
    if (!out.empty()) out += ';';
    out += i.str() + "->" + j.str();
  }
  return out;
}

namespace {

struct FoldIndex {
  VertexSet out_vertices;
  std::vector<Mask> images;  // old index -> new bit
  Mask source_bits = 0;      // I in old indexing
};

FoldIndex index_fold(const SimplicialComplex& k, const Fold& fold) {
  fold.check_applicable(k.vertices());
  FoldIndex idx;
  const VertexSet& vs = k.vertices();
  const auto& mapping = fold.mapping();
  idx.out_vertices.reserve(vs.size());
  std::set_difference(vs.begin(), vs.end(), fold.sources().begin(), fold.sources().end(),
                      std::back_inserter(idx.out_vertices));
  idx.images.reserve(vs.size());
  // mapping is sorted by source, so one pass pairs it with the vertex list
  auto next = mapping.begin();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const VertexId* target = &vs[i];
    if (next != mapping.end() && next->first == vs[i]) {
      target = &next->second;
      idx.source_bits |= Mask{1} << i;
      ++next;
    }
    auto pos = std::lower_bound(idx.out_vertices.begin(), idx.out_vertices.end(), *target);
    idx.images.push_back(Mask{1} << (pos - idx.out_vertices.begin()));
  }
  return idx;
}

SimplicialComplex apply_index(const SimplicialComplex& k, const FoldIndex& idx) {
  MaskMap map(idx.images);
  std::vector<Mask> facets;
  facets.reserve(k.facet_masks().size());
  for (Mask f : k.facet_masks()) facets.push_back(map(f));
  return SimplicialComplex::from_masks(idx.out_vertices, std::move(facets));
}

}  // namespace

SimplicialComplex folded_complex_by_characterization(const SimplicialComplex& k, const Fold& fold) {
  FoldIndex idx = index_fold(k, fold);
  const std::size_t n = idx.out_vertices.size();
  // new index -> old bit, and for targets the old bits of {j} ∪ I_j
  std::vector<Mask> old_bit(n, 0), choices(n, 0);
  for (std::size_t i = 0; i < k.vertex_count(); ++i) {
    std::size_t t = std::countr_zero(idx.images[i]);
    if (!((idx.source_bits >> i) & 1u)) old_bit[t] = Mask{1} << i;
    choices[t] |= Mask{1} << i;
  }
  Mask target_bits = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (std::popcount(choices[t]) > 1) target_bits |= Mask{1} << t;
  }

  std::vector<Mask> faces;
  const Mask limit = n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (Mask sigma = 0;; ++sigma) {
    Mask fixed = 0;
    for (Mask r = sigma & ~target_bits; r; r &= r - 1) fixed |= old_bit[std::countr_zero(r)];
    std::vector<Mask> open;
    for (Mask r = sigma & target_bits; r; r &= r - 1) open.push_back(choices[std::countr_zero(r)]);
    // depth-first over one choice per target
    bool found = false;
    std::vector<std::pair<std::size_t, Mask>> stack{{0, fixed}};
    while (!stack.empty() && !found) {
      auto [depth, acc] = stack.back();
      stack.pop_back();
      if (depth == open.size()) {
        found = k.is_face_mask(acc);
        continue;
      }
      for (Mask r = open[depth]; r; r &= r - 1) {
        Mask next = acc | (r & (~r + 1));
        if (k.is_face_mask(next)) stack.emplace_back(depth + 1, next);
      }
    }
    if (found) faces.push_back(sigma);
    if (sigma == limit) break;
  }
  return SimplicialComplex::from_masks(std::move(idx.out_vertices), std::move(faces));
}

SimplicialComplex folded_complex(const SimplicialComplex& k, const Fold& fold) {
  SimplicialComplex out = apply_index(k, index_fold(k, fold));
#ifndef NDEBUG
  if (k.vertex_count() <= 12 && !(out == folded_complex_by_characterization(k, fold))) {
    throw std::logic_error("folded complex disagrees with its face criterion");
  }
#endif
  return out;
}

SimplicialComplex max_folding_complex(const SimplicialComplex& k, const Fold& fold) {
  // K_∇⟨Δ[{j} ⊔ I_j]⟩ has the preimages ψ^{-1}(F) of the facets F of K_∇ as facets.
  FoldIndex idx = index_fold(k, fold);
  SimplicialComplex folded = apply_index(k, idx);
  std::vector<Mask> preimage(idx.out_vertices.size(), 0);
  for (std::size_t i = 0; i < k.vertex_count(); ++i) preimage[std::countr_zero(idx.images[i])] |= Mask{1} << i;
  std::vector<Mask> facets;
  facets.reserve(folded.facet_masks().size());
  for (Mask f : folded.facet_masks()) {
    Mask out = 0;
    for (Mask r = f; r; r &= r - 1) out |= preimage[std::countr_zero(r)];
    facets.push_back(out);
  }
  return SimplicialComplex::from_masks(k.shared_vertices(), std::move(facets));
}

bool is_block_respecting(const Fold& fold, const std::vector<VertexSet>& blocks) {
  for (const auto& [i, j] : fold.mapping()) {
    bool ok = false;
    for (const auto& b : blocks) {
      if (contains(b, i)) {
        ok = contains(b, j);
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace pwh
