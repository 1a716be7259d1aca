#include "doctest.h"

#include "pwh/expr_io.hpp"
#include "pwh/whitehead.hpp"
#include "test_util.hpp"

using namespace pwh;
using namespace pwh::test;

namespace {

SimplicialComplex square() { return cx({1, 2, 3, 4}, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}); }

HwExpr at(const char* name, int v, std::optional<int> dim = std::nullopt) { return lf(name, dim, VertexId(v)); }

MapLeaf dj_leaf(int v) {
  MapLeaf l = map_leaf("mu" + std::to_string(v), 2, VertexId(v));
  l.codomain = SpaceRef{"CPinf", true, true};
  return l;
}

}  // namespace

TEST_CASE("leaf invariants") {
  MapLeaf l = map_leaf("f", 1);
  l.suspension = false;
  CHECK_NOTHROW(validate_leaf(l));
  l.sphere_dim = 2;
  CHECK(error_code([&] { validate_leaf(l); }) == "bad-leaf");
  MapLeaf sp = map_leaf("g");
  sp.codomain.associative = true;
  CHECK(error_code([&] { validate_leaf(sp); }) == "bad-space");
  CHECK(error_code([] { HwExpr::hw({lf("f")}); }) == "hw-arity");
}

TEST_CASE("codomain complex of a flat map is the boundary of a simplex") {
  for (int m = 2; m <= 6; ++m) {
    std::vector<HwExpr> args;
    for (int i = 1; i <= m; ++i) args.push_back(lf("f" + std::to_string(i)));
    HwExpr e = place_vertices(HwExpr::hw(args));
    CHECK(codomain_complex(e) == boundary_simplex(range_labels(m)));
  }
}

TEST_CASE("nested codomain complex") {
  HwExpr inner = HwExpr::hw({lf("a", {}, VertexId({1, 1})), lf("b", {}, VertexId({1, 2})),
                             lf("c", {}, VertexId({1, 3}))});
  HwExpr e = HwExpr::hw({inner, at("d", 4), at("e", 5)});
  SimplicialComplex k = codomain_complex(e);
  CHECK(k.vertices() == vs({"1_1", "1_2", "1_3", "4", "5"}));
  CHECK(k.is_face(vs({"1_1", "1_2", "4"})));
  CHECK(k.is_face(vs({"4", "5"})));
  CHECK_FALSE(k.is_face(vs({"1_1", "1_2", "1_3"})));
  CHECK_FALSE(k.is_face(vs({"1_1", "4", "5"})));
}

TEST_CASE("positional placement") {
  HwExpr e = place_vertices(HwExpr::hw({HwExpr::hw({lf("a"), lf("b")}), lf("c")}));
  auto ls = leaves(e);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0].vertex == VertexId({1, 1}));
  CHECK(ls[1].vertex == VertexId({1, 2}));
  CHECK(ls[2].vertex == VertexId(2));
  CHECK(e.fully_placed());
}

TEST_CASE("domains and degrees") {
  HwExpr e = place_vertices(HwExpr::hw({lf("f1", 3), lf("f2", 5)}));
  CHECK(domain(e).sphere_dim == 7);
  CHECK(domain(e).suspensions == 1);
  HwExpr nested = place_vertices(HwExpr::hw({HwExpr::hw({lf("a", 2), lf("b", 2)}), lf("c", 2)}));
  CHECK(domain(nested).sphere_dim == 4);
  HwExpr mixed = place_vertices(HwExpr::hw({lf("a", 2), lf("b")}));
  CHECK_FALSE(domain(mixed).sphere_dim.has_value());
  CHECK(domain(mixed).smash_factors == std::vector<std::string>{"a", "b"});
  HwExpr flat = place_vertices(HwExpr::hw({lf("a"), lf("b"), lf("c")}));
  CHECK(domain(flat).suspensions == 2);
}

TEST_CASE("Koszul signs") {
  std::vector<int> dims{3, 5};
  CHECK(koszul_sign(Permutation::identity(2), dims) == 1);
  CHECK(koszul_sign(Permutation::from_images({2, 1}), dims) == -1);
  std::vector<int> even{2, 3};
  CHECK(koszul_sign(Permutation::from_images({2, 1}), even) == 1);
  std::vector<int> three{1, 1, 1};
  CHECK(koszul_sign(Permutation::from_images({3, 1, 2}), three) == 1);
  CHECK(koszul_sign(Permutation::from_images({3, 2, 1}), three) == -1);
  CHECK(error_code([] { Permutation::from_images({1, 1}); }) == "bad-permutation");
}

TEST_CASE("spherical normalization") {
  HwExpr e = place_vertices(HwExpr::hw({lf("f2", 3), lf("f1", 3)}));
  auto [n, s] = normalize_spherical(e);
  CHECK(pretty(n) == "hw(f1,f2)");
  CHECK(s == -1);
  auto [n2, s2] = normalize_spherical(n);
  CHECK(n2 == n);
  CHECK(s2 == 1);
  CHECK(normalize_spherical(place_vertices(HwExpr::hw({lf("f1", 2), lf("f2", 3)}))).second == 1);
  CHECK(error_code([] { normalize_spherical(place_vertices(HwExpr::hw({lf("a"), lf("b")}))); }) == "not-spherical");
}

TEST_CASE("multilinear expansion") {
  HwExpr e = HwExpr::hw({HwExpr::sum({map_leaf("f1"), map_leaf("g1")}), lf("f2")});
  auto ex = expand_linear(e);
  REQUIRE(ex.size() == 2);
  CHECK(pretty(ex[0]) == "hw(f1,f2)");
  CHECK(pretty(ex[1]) == "hw(g1,f2)");
  CHECK(expand_linear(HwExpr::hw({HwExpr::sum({map_leaf("f1")}), lf("f2")})).size() == 1);
  CHECK(expand_linear(HwExpr::hw({HwExpr::sum({map_leaf("a"), map_leaf("b"), map_leaf("c")}), lf("f2")})).size() == 3);
  MapLeaf ns = map_leaf("h");
  ns.suspension = false;
  MapLeaf ns2 = map_leaf("k");
  ns2.suspension = false;
  CHECK(error_code([&] { expand_linear(HwExpr::hw({HwExpr::sum({ns, ns2}), lf("f2")})); }) == "not-suspension");
}

TEST_CASE("R1 null leaves and R2 full simplex ambients") {
  MapLeaf z = map_leaf("z");
  z.is_null = true;
  HwExpr with_null = HwExpr::hw({HwExpr::leaf(z), lf("f2")});
  CHECK(triviality(with_null).rule == "R1");

  HwExpr r2 = HwExpr::hw({at("f1", 1), at("f2", 2), at("f3", 3)}, simplex(range_labels(3)));
  Triviality t = triviality(r2);
  CHECK(t.status == TrivialityStatus::Trivial);
  CHECK(t.rule == "R2");

  HwExpr plain = place_vertices(HwExpr::hw({lf("f1"), lf("f2"), lf("f3")}));
  CHECK(triviality(plain).status == TrivialityStatus::Unknown);
}

TEST_CASE("ambient must contain the codomain complex") {
  CHECK(error_code([] { HwExpr::hw({at("f1", 1), at("f2", 2), at("f3", 3)}, skeleton(simplex(range_labels(3)), 0)); }) ==
        "ambient-too-small");
}

TEST_CASE("R3 through a nested argument") {
  HwExpr inner = HwExpr::hw({at("f1", 1), at("f2", 2)});
  SimplicialComplex amb = cx({1, 2, 3}, {{1, 2}, {3}});
  HwExpr e = HwExpr::hw({inner, at("f3", 3)}, amb);
  CHECK(triviality(e).rule == "R3");
}

TEST_CASE("R3 outranks the DJ criterion") {
  HwExpr inner = HwExpr::hw({HwExpr::leaf(dj_leaf(1)), HwExpr::leaf(dj_leaf(2))});
  HwExpr e = HwExpr::hw({inner, HwExpr::leaf(dj_leaf(3))}, cx({1, 2, 3}, {{1, 2}, {3}}));
  CHECK_FALSE(is_subcomplex(join(boundary_simplex(labels({1, 2})), point(VertexId(3))), *e.ambient()));
  Triviality t = triviality(e, TrivialityMode::DJ);
  CHECK(t.status == TrivialityStatus::Trivial);
  CHECK(t.rule == "R3");
}

TEST_CASE("DJ summands over the identity complex are non-trivial") {
  HwExpr inner = HwExpr::hw({HwExpr::leaf(dj_leaf(2)), HwExpr::leaf(dj_leaf(3)), HwExpr::leaf(dj_leaf(4))});
  HwExpr e = HwExpr::hw({inner, HwExpr::leaf(dj_leaf(1))}, square());
  Triviality t = triviality(e, TrivialityMode::DJ);
  CHECK(t.status == TrivialityStatus::NonTrivial);
  CHECK(t.rule == "R5");
  REQUIRE(t.certificate.has_value());
  CHECK_FALSE(square().is_face(*t.certificate));
  CHECK(triviality(e).status == TrivialityStatus::Unknown);
}

TEST_CASE("folded map is trivial through the maximal folding complex") {
  HwExpr inner = HwExpr::hw({at("f1", 1), at("f4", 4)});
  HwExpr e = HwExpr::hw({inner, at("f2", 2), at("f3", 3)}, square());
  HwExpr folded = HwExpr::folded(e, Fold::parse("4->1"));
  CHECK(codomain_complex(folded) == boundary_simplex(labels({1, 2, 3})));
  Triviality t = triviality(folded);
  CHECK(t.status == TrivialityStatus::Trivial);
  CHECK(t.rule == "R4b");
  CHECK(triviality(e).status == TrivialityStatus::Unknown);
  CHECK(pretty(folded) == "nabla_{4->1}hw^{K}(hw(f1,f4),f2,f3)");
}

TEST_CASE("folding needs an associative H-space unless the block is discrete") {
  HwExpr e = HwExpr::hw({at("f1", 1), at("f2", 2), at("f3", 3)});
  CHECK(error_code([&] { HwExpr::folded(e, Fold::parse("3->1")); }) == "fold-h-space");
  MapLeaf a = map_leaf("f1", {}, VertexId(1));
  MapLeaf c = map_leaf("f3", {}, VertexId(3));
  a.codomain = SpaceRef{"Y", true, true};
  HwExpr mismatch = HwExpr::hw({HwExpr::leaf(a), at("f2", 2), HwExpr::leaf(c)});
  CHECK(error_code([&] { HwExpr::folded(mismatch, Fold::parse("3->1")); }) == "fold-codomain");
  c.codomain = a.codomain;
  HwExpr ok = HwExpr::hw({HwExpr::leaf(a), at("f2", 2), HwExpr::leaf(c)});
  CHECK_NOTHROW(HwExpr::folded(ok, Fold::parse("3->1")));
  SpaceRef plain;
  a.codomain = plain;
  c.codomain = plain;
  HwExpr discrete = HwExpr::hw({HwExpr::hw({HwExpr::leaf(a), at("f2", 2)}), HwExpr::leaf(c)},
                               cx({1, 2, 3}, {{1, 2}, {2, 3}}));
  CHECK_NOTHROW(HwExpr::folded(discrete, Fold::parse("3->1")));
}

TEST_CASE("enlarging the ambient keeps trivial maps trivial") {
  HwExpr inner = HwExpr::hw({at("f1", 1), at("f2", 2)});
  SimplicialComplex amb = cx({1, 2, 3}, {{1, 2}, {3}});
  SimplicialComplex bigger = cx({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
  CHECK(triviality(HwExpr::hw({inner, at("f3", 3)}, amb)).status == TrivialityStatus::Trivial);
  CHECK(triviality(HwExpr::hw({inner, at("f3", 3)}, bigger)).status == TrivialityStatus::Trivial);
}

TEST_CASE("expression JSON round trip") {
  HwExpr inner = HwExpr::hw({at("f1", 1, 2), at("f4", 4, 3)});
  HwExpr e = HwExpr::folded(HwExpr::hw({inner, at("f2", 2, 2), at("f3", 3, 2)}, square()), Fold::parse("4->1"));
  Json j = expr_to_json(e);
  CHECK(expr_from_json(j) == e);
  CHECK(expr_to_json(expr_from_json(j)).dump() == j.dump());
  CHECK(error_code([] { expr_from_json(Json::parse(R"({"tree":{}})")); }) == "bad-json");
}
