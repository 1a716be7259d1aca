#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwh/complex.hpp"
#include "pwh/folds.hpp"
#include "pwh/io.hpp"
#include "pwh/whitehead.hpp"

namespace pwh {

/// Ordered blocks P_1..P_k, pairwise disjoint and nonempty. Q_i is the
/// complement of P_i in the ground set.
class Partition {
 public:
  static Partition from_blocks(std::vector<VertexSet> blocks);
  /// "1|2,3|4"
  static Partition parse(std::string_view text);
  /// {{1},…,{m}}
  static Partition singletons(int m);

  const std::vector<VertexSet>& blocks() const noexcept { return blocks_; }
  std::size_t k() const noexcept { return blocks_.size(); }
  const VertexSet& ground() const noexcept { return ground_; }
  std::size_t m() const noexcept { return ground_.size(); }
  VertexSet complement(std::size_t i) const;  // Q_i
  std::string str() const;

 private:
  std::vector<VertexSet> blocks_;
  VertexSet ground_;
};

/// (j_1..j_q, i_1..i_p): Q_i ascending then P_i ascending, as positions in the ground set.
Permutation block_permutation(const Partition& p, std::size_t i);

/// K_Π = sk^{k−3}Δ^{k−1}(∂Δ[P_1], …, ∂Δ[P_k]); needs k ≥ 3.
SimplicialComplex identity_complex(const Partition& p);
/// From MF(K_Π) = {Q_1, …, Q_k}.
SimplicialComplex identity_complex_by_mf(const Partition& p);
/// ⋃_i ∂Δ⟨∂Δ[Q_i], P_i⟩
SimplicialComplex identity_complex_by_union(const Partition& p);

struct Summand {
  HwExpr expr;
  Permutation permutation;
  std::optional<int> sign;  // Koszul sign, spherical mode only
  int coefficient = 1;
  Triviality triviality;
  std::optional<int> degree;
  std::size_t block = 0;  // generating block, 0-based
};

struct Relation {
  SimplicialComplex ambient;
  std::vector<Summand> summands;
};

struct RelationOptions {
  TrivialityMode mode = TrivialityMode::General;
  bool collect = false;
};

/// Leaves f<v> at each ground vertex v; spherical when dims are given. In
/// DJ mode the codomain is CP^inf (an associative H-space).
std::vector<MapLeaf> default_leaves(const Partition& p, const std::optional<std::vector<int>>& dims,
                                    bool dj = false);

/// Σ_i hw^{K_Π}(hw(f over Q_i), f over P_i) ∘ σ_i; leaves[t] sits at ground()[t].
Relation relation(const Partition& p, std::vector<MapLeaf> leaves, const RelationOptions& opts = {});

/// Same summands with ambient ⊇ K_Π⟨S_1..S_m⟩ (default: equality). args[t]
/// must occupy the relabeled S_t; empty args picks defaults (a leaf on a
/// point, hw of leaves when ∂Δ[V(S_t)] ⊆ S_t).
Relation substituted_relation(const Partition& p, const std::vector<SimplicialComplex>& inner,
                              std::vector<HwExpr> args = {},
                              std::optional<SimplicialComplex> ambient = std::nullopt,
                              const RelationOptions& opts = {});

/// Summands ∇_{(I,J)} hw^{K_Π}(…) over folded_complex(K_Π, ψ).
Relation folded_relation(const Partition& p, const Fold& fold, std::vector<MapLeaf> leaves,
                         const RelationOptions& opts = {});

/// Block-respecting fold of K_Π⟨S⟩: each argument carries its part of the
/// fold, the ambient becomes K_Π⟨(S_t)_∇⟩. null_slots marks folded
/// arguments declared null.
Relation fold_within_relation(const Partition& p, const std::vector<SimplicialComplex>& inner,
                              const Fold& fold, std::vector<HwExpr> args = {},
                              const std::vector<bool>& null_slots = {},
                              const RelationOptions& opts = {});

/// Π = {{1},{2..m−1},{m}}, S = (K_1, •, …, •, K_m) and ψ identifying K_m
/// with a full subcomplex of K_1. The hw(f_1, f_m) summand is Trivial
/// exactly when K_1 = (K_1 ∗ K_m)_∇.
Relation fold_across_relation(int m, const SimplicialComplex& k1, const SimplicialComplex& km,
                              const Fold& fold, std::vector<HwExpr> args = {},
                              const RelationOptions& opts = {});

/// Merges summands with equal normalized form into signed coefficients.
/// Trivial summands are kept as they are.
Relation collect(const Relation& r);

/// Shape of folded_complex(K_Π, ψ).
enum class IdentityFoldCase { WithinBlock, CrossBlock, Collapsing };
struct IdentityFoldShape {
  IdentityFoldCase kind;
  std::optional<std::size_t> block;          // WithinBlock: the block l
  std::vector<std::size_t> touched_blocks;   // CrossBlock: blocks of i and j
};
IdentityFoldShape classify_identity_fold(const Partition& p, const Fold& fold);
/// ∂Δ[Q_l] ∗ Δ[P_l∖I], ∂Δ[[m]∖I] or Δ[[m]∖I]
SimplicialComplex predicted_folded_identity(const Partition& p, const Fold& fold);
/// ∂Δ[Q_l] ∗ Δ[P_l], MF {[m]∖I, [m]∖J}, or Δ[[m]]
SimplicialComplex predicted_identity_lpsi(const Partition& p, const Fold& fold);
/// Summand i of the folded relation is null by the classification.
bool predicted_folded_trivial(const Partition& p, const Fold& fold, std::size_t i);

Json relation_to_json(const Relation& r);
Relation relation_from_json(const Json& j);
std::string serialize_relation(const Relation& r);

}  // namespace pwh
