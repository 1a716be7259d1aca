#pragma once

#include <span>
#include <vector>

#include "pwh/complex.hpp"

namespace pwh {

/// (S, T) with T ⊆ S on a common vertex set; S must not be VOID.
class SimplicialPair {
 public:
  SimplicialPair(SimplicialComplex big, SimplicialComplex small);

  const SimplicialComplex& big() const noexcept { return big_; }
  const SimplicialComplex& small() const noexcept { return small_; }
  const VertexSet& vertices() const noexcept { return big_.vertices(); }

 private:
  SimplicialComplex big_;
  SimplicialComplex small_;
};

/// How inner vertices are named in a polyhedral join.
///
/// Nest: vertex u of the pair at outer vertex i becomes i_u. A pair on a
/// single vertex keeps the outer label i when flatten_singletons is set, and
/// labels that already carry i as a proper prefix are kept unchanged.
/// Inherit: inner labels are used as given.
/// Either way the relabeled vertex sets must come out pairwise disjoint.
enum class Labeling { Nest, Inherit };

struct JoinOptions {
  Labeling labeling = Labeling::Nest;
  bool flatten_singletons = true;
};

/// New label of inner vertex u placed at outer vertex `slot`.
VertexId slot_label(const VertexId& slot, const VertexId& u, std::size_t inner_size,
                    const JoinOptions& opts);

/// K(S,T): the union over σ ∈ K of ⊔ σ_i, with σ_i ∈ S_i for i ∈ σ and
/// σ_i ∈ T_i otherwise. pairs[i] sits at the i-th vertex of K.
SimplicialComplex polyhedral_join(const SimplicialComplex& k, std::span<const SimplicialPair> pairs,
                                  const JoinOptions& opts = {});
/// K⟨S_1..S_m⟩, pairs (S_i, EMPTY)
SimplicialComplex substitution(const SimplicialComplex& k, std::span<const SimplicialComplex> inner,
                               const JoinOptions& opts = {});
/// K(T_1..T_m), pairs (Δ[V(T_i)], T_i)
SimplicialComplex composition(const SimplicialComplex& k, std::span<const SimplicialComplex> inner,
                              const JoinOptions& opts = {});

enum class MfRoute { Formula, BruteForce };

/// MF(K(S,T)). Uses the closed formula when every vertex of K is a face and
/// no T_i is VOID, enumeration otherwise; `route` reports which was taken.
std::vector<VertexSet> mf_polyhedral_join(const SimplicialComplex& k,
                                          std::span<const SimplicialPair> pairs,
                                          const JoinOptions& opts = {}, MfRoute* route = nullptr);

}  // namespace pwh
