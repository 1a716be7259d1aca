#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pwh/complex.hpp"

namespace pwh {

/// A fold ψ: I → J, I ∩ J = ∅, ψ onto J. Extended by the identity it maps
/// V onto V∖I.
class Fold {
 public:
  /// Pairs (i, ψ(i)); sources must be distinct.
  static Fold from_pairs(std::vector<std::pair<VertexId, VertexId>> mapping);
  /// "4->1;5->2" (commas are accepted as separators too)
  static Fold parse(std::string_view text);

  const VertexSet& sources() const noexcept { return sources_; }  // I
  const VertexSet& targets() const noexcept { return targets_; }  // J
  const std::vector<std::pair<VertexId, VertexId>>& mapping() const noexcept { return mapping_; }

  /// ψ̄(v): ψ(v) on I, v elsewhere.
  VertexId apply(const VertexId& v) const;
  VertexSet apply(const VertexSet& face) const;
  /// I_j = ψ^{-1}(j)
  VertexSet block(const VertexId& j) const;

  /// Requires I ∪ J ⊆ vertices.
  void check_applicable(const VertexSet& vertices) const;
  /// Keeps the pairs whose source lies in `vertices`; empty result allowed.
  std::vector<std::pair<VertexId, VertexId>> pairs_within(const VertexSet& vertices) const;

  std::string str() const;

  friend bool operator==(const Fold&, const Fold&) = default;

 private:
  std::vector<std::pair<VertexId, VertexId>> mapping_;  // sorted by source
  VertexSet sources_;
  VertexSet targets_;
};

/// K_∇ = ψ̄(K) on V∖I.
SimplicialComplex folded_complex(const SimplicialComplex& k, const Fold& fold);

/// K_∇ by its face criterion: σ ⊆ V∖I is a face when, choosing some
/// c_j ∈ {j} ∪ I_j for every j ∈ σ∩J, (σ∖J) ∪ {c_j} lies in K. With |J| = 1
/// this is "σ ∈ K or (σ∖{j}) ⊔ {i} ∈ K for some i ∈ I".
SimplicialComplex folded_complex_by_characterization(const SimplicialComplex& k, const Fold& fold);

/// L_ψ = K_∇⟨Δ[{k} ⊔ I_k]⟩ on V, the largest L with fold(L) = fold(K).
SimplicialComplex max_folding_complex(const SimplicialComplex& k, const Fold& fold);

/// Every block is either untouched by the fold or carries it internally
/// (sources and targets in the same block).
bool is_block_respecting(const Fold& fold, const std::vector<VertexSet>& blocks);

}  // namespace pwh
