#include "doctest.h"

#include "pwh/complex.hpp"
#include "pwh/error.hpp"
#include "pwh/io.hpp"

using namespace pwh;

namespace {

SimplicialComplex cx(std::initializer_list<int> verts,
                     std::initializer_list<std::initializer_list<int>> facets) {
  std::vector<VertexSet> fs;
  for (auto f : facets) fs.push_back(labels(f));
  return SimplicialComplex::from_faces(labels(verts), fs);
}

std::vector<VertexSet> sets(std::initializer_list<std::initializer_list<int>> fs) {
  std::vector<VertexSet> out;
  for (auto f : fs) out.push_back(labels(f));
  return out;
}

}  // namespace

TEST_CASE("vertex labels parse, print and order by path") {
  CHECK(VertexId::parse("1_2").str() == "1_2");
  CHECK(VertexId::parse("7") == VertexId(7));
  CHECK(VertexId(1) < VertexId({1, 1}));
  CHECK(VertexId({1, 1}) < VertexId({1, 2}));
  CHECK(VertexId({1, 2}) < VertexId(2));
  CHECK(VertexId(1).is_proper_prefix_of(VertexId({1, 3})));
  CHECK_FALSE(VertexId(1).is_proper_prefix_of(VertexId(1)));
  CHECK(VertexId(2).extended(VertexId({3, 1})) == VertexId({2, 3, 1}));
  CHECK_THROWS_AS(VertexId::parse("1__2"), Error);
  CHECK_THROWS_AS(VertexId::parse("0"), Error);
  CHECK_THROWS_AS(VertexId::parse("a"), Error);
}

TEST_CASE("faces are ordered lexicographically on sorted vertex lists") {
  // {1} < {1,2} < {1,3} < {2}
  CHECK(mask_lex_less(0b001, 0b011));
  CHECK(mask_lex_less(0b011, 0b101));
  CHECK(mask_lex_less(0b101, 0b010));
  CHECK(mask_lex_less(0, 0b100));
  CHECK_FALSE(mask_lex_less(0b010, 0b010));
}

TEST_CASE("construction reduces to maximal faces") {
  auto k = SimplicialComplex::from_faces(labels({1, 2, 3}),
                                         sets({{1}, {1, 2}, {2, 3}, {2}, {1, 2}}));
  CHECK(k.maximal_faces() == sets({{1, 2}, {2, 3}}));
  CHECK(k.is_face(labels({1})));
  CHECK(k.is_face({}));
  CHECK_FALSE(k.is_face(labels({1, 3})));
  CHECK_FALSE(k.is_face(labels({9})));
  CHECK(k.dimension() == 1);
  CHECK_THROWS_AS(SimplicialComplex::from_faces(labels({1, 2}), sets({{1, 3}})), Error);
}

TEST_CASE("VOID and EMPTY are distinct") {
  auto v = SimplicialComplex::void_on(labels({1, 2}));
  auto e = SimplicialComplex::empty_on(labels({1, 2}));
  CHECK(v.is_void());
  CHECK_FALSE(v.is_empty());
  CHECK(e.is_empty());
  CHECK_FALSE(v == e);
  CHECK(e.maximal_faces() == std::vector<VertexSet>{VertexSet{}});
  CHECK(faces(v).empty());
  CHECK(faces(e).size() == 1);
  CHECK(minimal_missing_faces(e) == sets({{1}, {2}}));
  CHECK_THROWS_AS(minimal_missing_faces(v), Error);
}

TEST_CASE("simplices and boundaries") {
  auto d = simplex(labels({1, 2, 3}));
  CHECK(d.maximal_faces() == sets({{1, 2, 3}}));
  CHECK(minimal_missing_faces(d).empty());
  auto b = boundary_simplex(labels({1, 2, 3}));
  CHECK(b.maximal_faces() == sets({{1, 2}, {1, 3}, {2, 3}}));
  CHECK(minimal_missing_faces(b) == sets({{1, 2, 3}}));
  CHECK(boundary_simplex(labels({5})).is_empty());
  try {
    boundary_simplex({});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "boundary of void");
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("skeleta") {
  auto k4 = skeleton(simplex(range_labels(4)), 1);
  CHECK(k4.maximal_faces().size() == 6);
  CHECK(minimal_missing_faces(k4) == sets({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}));
  CHECK(skeleton(simplex(range_labels(3)), -1).is_empty());
  CHECK(skeleton(simplex(range_labels(3)), 5) == simplex(range_labels(3)));
  CHECK(skeleton(SimplicialComplex::void_on(labels({1})), 0).is_void());
  CHECK_THROWS_AS(skeleton(simplex(range_labels(3)), -2), Error);
}

TEST_CASE("ghost vertices are minimal missing faces") {
  auto k = cx({1, 2, 3}, {{1, 2}});
  CHECK(minimal_missing_faces(k) == sets({{3}}));
  CHECK(k.realized_vertices() == labels({1, 2}));
}

TEST_CASE("Alexander dual") {
  auto b = boundary_simplex(labels({1, 2, 3}));
  auto e = SimplicialComplex::empty_on(labels({1, 2, 3}));
  CHECK(alexander_dual(b) == e);
  CHECK(alexander_dual(e) == b);
  CHECK(alexander_dual(simplex(labels({1, 2}))).is_void());
  CHECK_THROWS_AS(alexander_dual(SimplicialComplex::void_on(labels({1}))), Error);
  // the path 1-2-3-4 is self-dual up to relabeling
  auto p = cx({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
  auto dp = alexander_dual(p);
  CHECK(dp.maximal_faces() == sets({{1, 3}, {2, 3}, {2, 4}}));
  CHECK(alexander_dual(dp) == p);
}

TEST_CASE("missing faces determine the complex") {
  auto p = cx({1, 2, 3, 4, 5}, {{1, 2, 3}, {3, 4}, {4, 5}});
  CHECK(from_minimal_missing_faces(p.vertices(), minimal_missing_faces(p)) == p);
  CHECK(from_minimal_missing_faces(labels({1}), {VertexSet{}}).is_void());
}

TEST_CASE("join requires disjoint vertex sets") {
  auto a = boundary_simplex(labels({1, 2}));
  auto b = simplex(labels({3}));
  auto j = join(a, b);
  CHECK(j.maximal_faces() == sets({{1, 3}, {2, 3}}));
  CHECK(join(a, SimplicialComplex::empty_on(labels({4}))).maximal_faces() == sets({{1}, {2}}));
  CHECK(join(a, SimplicialComplex::void_on(labels({4}))).is_void());
  CHECK_THROWS_AS(join(a, a), Error);
}

TEST_CASE("union, subcomplexes and full subcomplexes") {
  auto a = cx({1, 2, 3}, {{1, 2}});
  auto b = cx({2, 3, 4}, {{2, 3}, {4}});
  auto u = complex_union(a, b);
  CHECK(u.vertices() == labels({1, 2, 3, 4}));
  CHECK(u.maximal_faces() == sets({{1, 2}, {2, 3}, {4}}));
  CHECK(is_subcomplex(a, u));
  CHECK(is_subcomplex(b, u));
  CHECK_FALSE(is_subcomplex(u, a));
  auto d = cx({1, 2, 3, 4}, {{1, 2, 3}, {3, 4}});
  CHECK(full_subcomplex(d, labels({1, 2, 4})).maximal_faces() == sets({{1, 2}, {4}}));
  CHECK(is_full_subcomplex(cx({1, 2, 4}, {{1, 2}, {4}}), d));
  CHECK_FALSE(is_full_subcomplex(cx({1, 2}, {{1}, {2}}), d));
  CHECK_THROWS_AS(full_subcomplex(d, labels({7})), Error);
}

TEST_CASE("relabel and ghost extension") {
  auto b = boundary_simplex(labels({1, 2}));
  auto r = relabel(b, {{VertexId(1), VertexId(5)}});
  CHECK(r.vertices() == labels({2, 5}));
  CHECK_THROWS_AS(relabel(b, {{VertexId(1), VertexId(2)}}), Error);
  auto g = with_vertices(b, labels({1, 2, 3}));
  CHECK(g.vertices() == labels({1, 2, 3}));
  CHECK(minimal_missing_faces(g) == sets({{1, 2}, {3}}));
}

TEST_CASE("isomorphism search returns a witness") {
  auto a = cx({1, 2, 3, 4}, {{1, 2, 3}, {3, 4}});
  auto b = cx({5, 6, 7, 8}, {{5, 8}, {6, 7, 8}});
  auto w = find_isomorphism(a, b);
  REQUIRE(w);
  CHECK(relabel(a, *w) == b);
  auto path = cx({1, 2, 3}, {{1, 2}, {2, 3}});
  CHECK_FALSE(is_isomorphic(path, boundary_simplex(labels({1, 2, 3}))));
  CHECK_FALSE(is_isomorphic(path, cx({1, 2, 3, 4}, {{1, 2}, {2, 3}})));
}

TEST_CASE("vertex cap is enforced") {
  CHECK(vertex_cap() >= 1);
  int over = static_cast<int>(vertex_cap()) + 1;
  try {
    simplex(range_labels(over));
    FAIL("expected the cap to trip");
  } catch (const Error& e) {
    CHECK(e.code() == "vertex-cap");
  }
}

TEST_CASE("JSON round trip and VOID/EMPTY encodings") {
  auto k = SimplicialComplex::from_faces(
      {VertexId(1), VertexId(2), VertexId({1, 1})},
      {VertexSet{VertexId(1), VertexId(2)}, VertexSet{VertexId({1, 1})}});
  CHECK(serialize_complex(k) ==
        R"({"vertices":["1","1_1","2"],"maximal_faces":[["1","2"],["1_1"]]})");
  CHECK(parse_complex(serialize_complex(k)) == k);
  CHECK(serialize_complex(SimplicialComplex::void_on(labels({1}))) ==
        R"({"vertices":["1"],"maximal_faces":[]})");
  CHECK(serialize_complex(SimplicialComplex::empty_on(labels({1}))) ==
        R"({"vertices":["1"],"maximal_faces":[[]]})");
  CHECK(parse_complex(R"({"vertices":[1,2],"maximal_faces":[[1],[1,2]]})").maximal_faces() ==
        sets({{1, 2}}));
}

TEST_CASE("malformed complexes are input errors") {
  auto expect_input = [](std::string_view text) {
    try {
      parse_complex(text);
      FAIL("accepted: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
    }
  };
  expect_input(R"({"vertices":["1"]})");
  expect_input(R"({"vertices":["1"],"maximal_faces":[["2"]]})");
  expect_input(R"({"vertices":["1","1"],"maximal_faces":[]})");
  expect_input(R"({"vertices":["x"],"maximal_faces":[]})");
  expect_input(R"({"vertices":["1"],"maximal_faces":[],"extra":1})");
  expect_input(R"({"vertices":)");
  expect_input("vertices: 1 2\nfaces: {1 3}\n");
  expect_input("faces: {1}\n");
  expect_input("vertices: 1\nfaces: {1\n");
}

TEST_CASE("text form") {
  auto k = complex_from_text("vertices: 1 2 3 4\nfaces: {1 2} {2 3}\n");
  CHECK(k.vertices() == labels({1, 2, 3, 4}));
  CHECK(k.maximal_faces() == sets({{1, 2}, {2, 3}}));
  CHECK(complex_from_text(complex_to_text(k)) == k);
  CHECK(complex_from_text("vertices: 1\nfaces:\n").is_void());
  CHECK(complex_from_text("vertices: 1\nfaces: {}\n").is_empty());
}

TEST_CASE("DOT export lists edges and triangles") {
  auto dot = complex_to_dot(cx({1, 2, 3, 4}, {{1, 2, 3}, {4}}));
  CHECK(dot.find("\"1\" -- \"2\"") != std::string::npos);
  CHECK(dot.find("shape=triangle") != std::string::npos);
  CHECK(dot.find("\"3\" -- \"4\"") == std::string::npos);
}
