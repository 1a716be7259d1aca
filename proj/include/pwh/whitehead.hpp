#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pwh/complex.hpp"
#include "pwh/folds.hpp"

namespace pwh {

/// Target space Y of a map.
struct SpaceRef {
  std::string name = "Y";
  bool h_space = false;
  bool associative = false;

  friend bool operator==(const SpaceRef&, const SpaceRef&) = default;
};

/// A map f: ΣX → Y, or f: S^p → Y when sphere_dim is set.
struct MapLeaf {
  std::string name;
  std::optional<int> sphere_dim;
  bool suspension = true;  // X is itself a suspension
  bool is_null = false;
  SpaceRef codomain;
  /// Where the leaf sits in the codomain complex. Left unset, the position
  /// path inside the expression is used (1, 2, … at the top, 1_2 for the
  /// second argument of the first argument, …).
  std::optional<VertexId> vertex;

  friend bool operator==(const MapLeaf&, const MapLeaf&) = default;
};

/// Checks the field invariants; throws a domain error.
void validate_leaf(const MapLeaf& leaf);

/// A bijection of {1..m} stored as its image list (σ(1), …, σ(m)).
class Permutation {
 public:
  static Permutation identity(std::size_t m);
  static Permutation from_images(std::vector<int> images);

  std::size_t size() const noexcept { return images_.size(); }
  int operator()(std::size_t position) const { return images_.at(position - 1); }
  const std::vector<int>& images() const noexcept { return images_; }
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Π over inversions (a, b) of the image list of (−1)^{dims[a]·dims[b]}.
/// dims is indexed by element (dims[0] belongs to element 1).
int koszul_sign(const Permutation& perm, std::span<const int> dims);

enum class ExprKind { Leaf, Sum, Hw, Folded };

/// Immutable expression tree for higher Whitehead maps. Copies share nodes.
class HwExpr {
 public:
  static HwExpr leaf(MapLeaf leaf);
  /// Formal sum f + f′ + … in one slot; all terms share vertex and codomain.
  static HwExpr sum(std::vector<MapLeaf> terms);
  /// h_w(args) or, with an ambient, h_w^K(args). Needs at least two args.
  static HwExpr hw(std::vector<HwExpr> args, std::optional<SimplicialComplex> ambient = std::nullopt);
  /// ∇_{(I,J)} applied to an Hw node.
  static HwExpr folded(HwExpr inner, Fold fold, bool declared_null = false);

  ExprKind kind() const noexcept;
  const MapLeaf& as_leaf() const;
  const std::vector<MapLeaf>& terms() const;
  const std::vector<HwExpr>& args() const;
  const std::optional<SimplicialComplex>& ambient() const;
  const HwExpr& inner() const;
  const Fold& fold() const;
  bool declared_null() const;

  /// Every leaf (and sum) carries an explicit vertex.
  bool fully_placed() const;

  friend bool operator==(const HwExpr& a, const HwExpr& b);

  struct Node;

 private:
  explicit HwExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Assigns positional vertices to unplaced leaves and re-runs validation.
/// With a prefix p the paths start below it (p_1, p_2, …; a bare leaf gets p).
HwExpr place_vertices(const HwExpr& e, const VertexId& prefix = VertexId());

/// All leaves in left-to-right order (sum terms included).
std::vector<MapLeaf> leaves(const HwExpr& e);

/// The complex an argument occupies in the enclosing codomain: a point for a
/// leaf, the ambient (or own codomain) for Hw, the folded ambient for Folded.
SimplicialComplex target_complex(const HwExpr& e);
/// ∂Δ^{m−1}⟨targets⟩ for Hw; the folded ambient for Folded.
SimplicialComplex codomain_complex(const HwExpr& e);
/// The ambient if present, else the codomain complex.
SimplicialComplex anchor_complex(const HwExpr& e);

/// Domain Σ^{suspensions} X_1 ∧ ⋯ ∧ X_n; for spheres, S^{sphere_dim}.
struct Domain {
  int suspensions = 0;
  std::vector<std::string> smash_factors;
  std::optional<int> sphere_dim;
};
Domain domain(const HwExpr& e);

/// Sorts the arguments of every Hw node by printed form, returning the
/// accumulated Koszul sign. Requires spherical leaves.
std::pair<HwExpr, int> normalize_spherical(const HwExpr& e);

/// Multilinear expansion of formal sums; one expression per choice of terms.
std::vector<HwExpr> expand_linear(const HwExpr& e);

/// "hw^{K}(hw(f1,f2,f3),f4)"
std::string pretty(const HwExpr& e);

enum class TrivialityStatus { Trivial, NonTrivial, Unknown };
enum class TrivialityMode { General, DJ };

struct Triviality {
  TrivialityStatus status = TrivialityStatus::Unknown;
  std::string rule;  // R1..R5 when decided
  std::optional<VertexSet> certificate;  // missing face for NonTrivial
  std::string detail;

  friend bool operator==(const Triviality&, const Triviality&) = default;
};

std::string to_string(TrivialityStatus s);

/// Rules in order: R1 null leaves or trivial arguments; R2 Δ⟨targets⟩ inside
/// the ambient; R3 ∂Δ⟨…, T_i, …⟩ inside the ambient for a trivializing T_i
/// of a nested Hw argument; R4 for folded maps; R5 the Davis–Januszkiewicz
/// criterion for depth-two brackets of degree-two classes.
Triviality triviality(const HwExpr& e, TrivialityMode mode = TrivialityMode::General);

/// Complexes K′ over which an Hw node is null by R2/R3, tagged with the rule.
std::vector<std::pair<std::string, SimplicialComplex>> trivializing_complexes(const HwExpr& e);

}  // namespace pwh
