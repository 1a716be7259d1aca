#include "doctest.h"

#include "pwh/polyjoin.hpp"
#include "pwh/relations.hpp"
#include "test_util.hpp"

using namespace pwh;
using namespace pwh::test;

namespace {

std::vector<std::string> pretties(const Relation& r) {
  std::vector<std::string> out;
  for (const auto& s : r.summands) out.push_back(pretty(s.expr));
  return out;
}

std::vector<VertexSet> sorted(std::vector<VertexSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

int count_status(const Relation& r, TrivialityStatus st) {
  int n = 0;
  for (const auto& s : r.summands) n += s.triviality.status == st;
  return n;
}

}  // namespace

TEST_CASE("partition parsing") {
  Partition p = Partition::parse("1|2,3|4");
  CHECK(p.k() == 3);
  CHECK(p.m() == 4);
  CHECK(p.complement(1) == labels({1, 4}));
  CHECK(p.str() == "1|2,3|4");
  CHECK(error_code([] { Partition::parse("1|1,2|3"); }) == "bad-partition");
  CHECK(error_code([] { Partition::parse("1||3"); }) == "bad-partition");
  CHECK(error_code([] { identity_complex(Partition::parse("1|2")); }) == "partition-too-coarse");
}

TEST_CASE("identity complex of 1|2,3|4") {
  Partition p = Partition::parse("1|2,3|4");
  SimplicialComplex k = identity_complex(p);
  CHECK(k.maximal_faces() == sets({{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}));
  CHECK(sorted(minimal_missing_faces(k)) == sorted(sets({{2, 3, 4}, {1, 4}, {1, 2, 3}})));
  CHECK(k == identity_complex_by_mf(p));
  CHECK(k == identity_complex_by_union(p));
}

TEST_CASE("identity complexes of singleton partitions") {
  CHECK(identity_complex(Partition::singletons(3)) == skeleton(simplex(range_labels(3)), 0));
  for (int m = 3; m <= 7; ++m) {
    CHECK(identity_complex(Partition::singletons(m)) == skeleton(simplex(range_labels(m)), m - 3));
  }
}

TEST_CASE("block permutations list the complement first") {
  Partition p = Partition::parse("1|2,3|4");
  CHECK(block_permutation(p, 0).images() == std::vector<int>{2, 3, 4, 1});
  CHECK(block_permutation(p, 1).images() == std::vector<int>{1, 4, 2, 3});
  CHECK(block_permutation(p, 2).images() == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("relation summands for 1|2,3|4") {
  Partition p = Partition::parse("1|2,3|4");
  Relation r = relation(p, default_leaves(p, std::nullopt));
  CHECK(pretties(r) == std::vector<std::string>{"hw^{K}(hw(f2,f3,f4),f1)", "hw^{K}(hw(f1,f4),f2,f3)",
                                                "hw^{K}(hw(f1,f2,f3),f4)"});
  CHECK(r.ambient == identity_complex(p));
  for (const auto& s : r.summands) {
    CHECK_FALSE(s.sign.has_value());
    CHECK(is_subcomplex(codomain_complex(s.expr), r.ambient));
  }
}

TEST_CASE("Jacobi summands and singleton signs") {
  Partition p = Partition::singletons(3);
  Relation r = relation(p, default_leaves(p, std::vector<int>{2, 3, 3}));
  CHECK(pretties(r) == std::vector<std::string>{"hw^{K}(hw(f2,f3),f1)", "hw^{K}(hw(f1,f3),f2)",
                                                "hw^{K}(hw(f1,f2),f3)"});
  for (int m = 3; m <= 6; ++m) {
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<int> dims;
      for (int t = 0; t < m; ++t) dims.push_back(mask >> t & 1 ? 3 : 2);
      Partition s = Partition::singletons(m);
      Relation rel = relation(s, default_leaves(s, dims));
      int total = 0;
      for (int d : dims) total += d;
      for (std::size_t i = 0; i < rel.summands.size(); ++i) {
        int tail = 0;
        for (int t = static_cast<int>(i) + 1; t < m; ++t) tail += dims[t];
        CHECK(*rel.summands[i].sign == ((dims[i] * tail) % 2 ? -1 : 1));
        CHECK(rel.summands[i].degree == total - 2);
      }
    }
  }
}

TEST_CASE("relation preconditions") {
  Partition p = Partition::singletons(3);
  auto leaves = default_leaves(p, std::nullopt);
  leaves[1].suspension = false;
  CHECK(error_code([&] { relation(p, leaves); }) == "not-suspension");
  CHECK(error_code([&] { relation(p, default_leaves(p, std::vector<int>{1, 2, 2})); }) == "low-degree");
  CHECK(error_code([&] { default_leaves(p, std::vector<int>{2, 2}); }) == "bad-dims");
}

TEST_CASE("DJ relations are non-trivial term by term") {
  for (const char* text : {"1|2,3|4", "1|2|3|4", "1,2|3|4,5", "1|2|3"}) {
    Partition p = Partition::parse(text);
    Relation r = relation(p, default_leaves(p, std::nullopt, true), {TrivialityMode::DJ, false});
    CHECK(count_status(r, TrivialityStatus::NonTrivial) == static_cast<int>(p.k()));
  }
}

TEST_CASE("substituted relations") {
  Partition p = Partition::parse("1|2,3|4");
  std::vector<SimplicialComplex> points;
  for (int t = 1; t <= 4; ++t) points.push_back(point(VertexId(t)));
  Relation plain = relation(p, default_leaves(p, std::nullopt));
  Relation sub = substituted_relation(p, points);
  CHECK(pretties(sub) == pretties(plain));
  CHECK(sub.ambient == plain.ambient);

  std::vector<SimplicialComplex> inner = points;
  inner[0] = boundary_simplex(range_labels(3));
  Relation s = substituted_relation(p, inner);
  SimplicialComplex k1 = boundary_simplex(vs({"1_1", "1_2", "1_3"}));
  std::vector<VertexSet> k1_facets = k1.maximal_faces();
  k1_facets.push_back(labels({4}));
  SimplicialComplex k1_and_4 = SimplicialComplex::from_faces(vs({"1_1", "1_2", "1_3", "4"}), k1_facets);
  std::vector<SimplicialComplex> expected_inner{k1_and_4, point(VertexId(2)), point(VertexId(3))};
  SimplicialComplex expected = substitution(boundary_simplex(range_labels(3)), expected_inner,
                                            JoinOptions{Labeling::Inherit, false});
  CHECK(s.ambient == expected);
  CHECK(pretty(s.summands[0].expr) == "hw^{K}(hw(f2,f3,f4),hw(f1_1,f1_2,f1_3))");

  SimplicialComplex bigger = simplex(s.ambient.vertices());
  Relation wide = substituted_relation(p, inner, {}, bigger);
  CHECK(pretties(wide) == pretties(s));
  CHECK(wide.ambient == bigger);
  CHECK(error_code([&] { substituted_relation(p, inner, {}, identity_complex(p)); }) == "ambient-too-small");
}

TEST_CASE("folded identity relations follow the classification") {
  Partition s4 = Partition::singletons(4);
  Relation cross = folded_relation(s4, Fold::parse("4->1"), default_leaves(s4, std::nullopt));
  CHECK(cross.ambient == boundary_simplex(labels({1, 2, 3})));
  CHECK(count_status(cross, TrivialityStatus::Trivial) == 2);
  CHECK(cross.summands[0].triviality.status != TrivialityStatus::Trivial);
  CHECK(cross.summands[3].triviality.status != TrivialityStatus::Trivial);

  Partition p = Partition::parse("1,2|3|4");
  Relation within = folded_relation(p, Fold::parse("2->1"), default_leaves(p, std::nullopt));
  CHECK(count_status(within, TrivialityStatus::Trivial) == 3);
  Relation multi = folded_relation(s4, Fold::parse("3->1;4->1"), default_leaves(s4, std::nullopt));
  CHECK(count_status(multi, TrivialityStatus::Trivial) == 4);
}

TEST_CASE("classification predictions") {
  Partition p = Partition::parse("1,2|3|4,5");
  for (const char* f : {"2->1", "3->1", "4->1;5->2", "5->4", "3->4"}) {
    Fold fold = Fold::parse(f);
    CHECK(folded_complex(identity_complex(p), fold) == predicted_folded_identity(p, fold));
    CHECK(max_folding_complex(identity_complex(p), fold) == predicted_identity_lpsi(p, fold));
  }
  CHECK(classify_identity_fold(p, Fold::parse("2->1")).kind == IdentityFoldCase::WithinBlock);
  CHECK(classify_identity_fold(p, Fold::parse("3->1")).kind == IdentityFoldCase::CrossBlock);
  CHECK(classify_identity_fold(p, Fold::parse("3->1;5->2")).kind == IdentityFoldCase::Collapsing);
}

TEST_CASE("collecting equal folded summands") {
  Partition p = Partition::singletons(4);
  auto leaves = default_leaves(p, std::vector<int>{2, 2, 2, 2});
  leaves[3].name = "f1";
  Relation r = folded_relation(p, Fold::parse("4->1"), leaves, {TrivialityMode::General, true});
  int surviving = 0;
  for (const auto& s : r.summands) {
    if (s.triviality.status == TrivialityStatus::Trivial) continue;
    ++surviving;
    CHECK(s.coefficient == 2);
  }
  CHECK(surviving == 1);
}

TEST_CASE("fold within substituted inner complexes") {
  Partition p = Partition::parse("1|2|3");
  std::vector<SimplicialComplex> inner{boundary_simplex(range_labels(3)), point(VertexId(1)), point(VertexId(1))};
  Fold fold = Fold::parse("1_3->1_1");
  MapLeaf a = map_leaf("f1_1"), b = map_leaf("f1_2"), c = map_leaf("f1_3");
  a.codomain = b.codomain = c.codomain = SpaceRef{"Y", true, true};
  a.vertex = VertexId({1, 1});
  b.vertex = VertexId({1, 2});
  c.vertex = VertexId({1, 3});
  std::vector<HwExpr> args{HwExpr::hw({HwExpr::leaf(a), HwExpr::leaf(b), HwExpr::leaf(c)}), lf("f2"), lf("f3")};
  Relation r = fold_within_relation(p, inner, fold, args);
  std::vector<SimplicialComplex> folded_inner{simplex(vs({"1_1", "1_2"})), point(VertexId(2)), point(VertexId(3))};
  CHECK(r.ambient == substitution(identity_complex(p), folded_inner, JoinOptions{Labeling::Inherit, false}));
  Relation null_r = fold_within_relation(p, inner, fold, args, {true, false, false});
  CHECK(count_status(null_r, TrivialityStatus::Trivial) == 3);
  CHECK(error_code([&] { fold_within_relation(p, inner, Fold::parse("2->1_1"), args); }) ==
        "fold-not-block-respecting");
}

TEST_CASE("fold across a full subcomplex") {
  Fold fold = Fold::parse("4->1_1");
  Relation r = fold_across_relation(4, boundary_simplex(range_labels(3)), point(VertexId(4)), fold);
  std::vector<SimplicialComplex> inner{boundary_simplex(vs({"1_1", "1_2", "1_3"})), point(VertexId(2)),
                                       point(VertexId(3))};
  CHECK(r.ambient == substitution(boundary_simplex(range_labels(3)), inner, JoinOptions{Labeling::Inherit, false}));
  REQUIRE(r.summands.size() == 3);
  CHECK(r.summands[1].triviality.status != TrivialityStatus::Trivial);

  Relation t = fold_across_relation(4, simplex(range_labels(2)), point(VertexId(4)), Fold::parse("4->1_1"));
  CHECK(t.summands[1].triviality.status == TrivialityStatus::Trivial);
  CHECK(error_code([] { fold_across_relation(4, boundary_simplex(range_labels(3)), point(VertexId(4)),
                                             Fold::parse("4->2")); }) == "fold-across-targets");
}

TEST_CASE("relation JSON round trip") {
  Partition p = Partition::parse("1|2,3|4");
  Relation r = relation(p, default_leaves(p, std::vector<int>{2, 3, 2, 2}), {TrivialityMode::DJ, false});
  std::string once = serialize_relation(r);
  CHECK(serialize_relation(relation_from_json(Json::parse(once))) == once);
  CHECK(error_code([] { relation_from_json(Json::parse("{}")); }) == "bad-json");
}
