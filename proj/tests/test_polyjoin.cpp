#include "doctest.h"

#include "pwh/polyjoin.hpp"
#include "test_util.hpp"

using namespace pwh;
using namespace pwh::test;

namespace {

const JoinOptions kInherit{Labeling::Inherit, false};

std::vector<VertexSet> sorted(std::vector<VertexSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("join of a point with a boundary edge") {
  SimplicialComplex j = join(point(VertexId(1)), boundary_simplex(labels({2, 3})));
  CHECK(j.maximal_faces() == sets({{1, 2}, {1, 3}}));
}

TEST_CASE("composition of boundary blocks into a 0-skeleton") {
  std::vector<SimplicialComplex> inner{boundary_simplex(labels({1})), boundary_simplex(labels({2, 3})),
                                       boundary_simplex(labels({4}))};
  SimplicialComplex k = composition(skeleton(simplex(range_labels(3)), 0), inner, kInherit);
  CHECK(k.vertices() == labels({1, 2, 3, 4}));
  CHECK(k.maximal_faces() == sets({{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}));
}

TEST_CASE("substitution nests labels under the slot") {
  SimplicialComplex bd = boundary_simplex(range_labels(3));
  std::vector<SimplicialComplex> inner{bd, point(VertexId(1)), point(VertexId(1))};
  SimplicialComplex k = substitution(bd, inner);
  CHECK(k.vertices() == vs({"1_1", "1_2", "1_3", "2", "3"}));
  std::vector<VertexSet> expected{vs({"1_1", "1_2", "2"}), vs({"1_1", "1_2", "3"}), vs({"1_1", "1_3", "2"}),
                                  vs({"1_1", "1_3", "3"}), vs({"1_2", "1_3", "2"}), vs({"1_2", "1_3", "3"}),
                                  vs({"2", "3"})};
  CHECK(sorted(k.maximal_faces()) == sorted(expected));
}

TEST_CASE("substituting points gives back the outer complex") {
  SimplicialComplex k = cx({1, 2, 3, 4}, {{1, 2}, {2, 3, 4}});
  std::vector<SimplicialComplex> inner;
  for (int i = 1; i <= 4; ++i) inner.push_back(point(VertexId(i)));
  CHECK(substitution(k, inner) == k);
  CHECK(composition(k, inner) == simplex(k.vertices()));
}

TEST_CASE("polyhedral join over a simplex is the join of the big parts") {
  SimplicialComplex k = simplex(range_labels(2));
  std::vector<SimplicialPair> pairs{{simplex(labels({1})), SimplicialComplex::empty_on(labels({1}))},
                                    {boundary_simplex(labels({1, 2})), SimplicialComplex::empty_on(labels({1, 2}))}};
  SimplicialComplex pj = polyhedral_join(k, pairs);
  CHECK(pj.maximal_faces() == std::vector<VertexSet>{vs({"1", "2_1"}), vs({"1", "2_2"})});
}

TEST_CASE("pair validation") {
  CHECK(error_code([] { SimplicialPair(boundary_simplex(labels({1, 2})), simplex(labels({1, 2}))); }) ==
        "pair-not-nested");
  CHECK(error_code([] { SimplicialPair(SimplicialComplex::void_on(labels({1})), SimplicialComplex::void_on(labels({1}))); }) ==
        "void-pair");
  CHECK(error_code([] { SimplicialPair(simplex(labels({1})), simplex(labels({2}))); }) == "pair-vertices");
}

TEST_CASE("inherited labels must not collide") {
  std::vector<SimplicialComplex> inner{point(VertexId(1)), point(VertexId(1))};
  CHECK(error_code([&] { substitution(simplex(range_labels(2)), inner, kInherit); }) == "overlapping-vertices");
  CHECK(error_code([&] { substitution(simplex(range_labels(3)), inner); }) == "slot-count");
}

TEST_CASE("MF formula agrees with enumeration and reports its route") {
  SimplicialComplex k = cx({1, 2, 3}, {{1, 2}, {3}});
  std::vector<SimplicialPair> pairs{
      {boundary_simplex(labels({1, 2})), SimplicialComplex::empty_on(labels({1, 2}))},
      {simplex(labels({1})), SimplicialComplex::empty_on(labels({1}))},
      {cx({1, 2, 3}, {{1, 2}, {2, 3}}), cx({1, 2, 3}, {{2}})}};
  MfRoute route;
  auto mf = mf_polyhedral_join(k, pairs, {}, &route);
  CHECK(route == MfRoute::Formula);
  CHECK(sorted(mf) == sorted(minimal_missing_faces(polyhedral_join(k, pairs))));

  SimplicialComplex ghost = cx({1, 2, 3}, {{1, 2}});
  auto mf_ghost = mf_polyhedral_join(ghost, pairs, {}, &route);
  CHECK(route == MfRoute::BruteForce);
  CHECK(sorted(mf_ghost) == sorted(minimal_missing_faces(polyhedral_join(ghost, pairs))));
}

TEST_CASE("Nest labeling keeps singleton slots and already-nested labels") {
  JoinOptions nest;
  CHECK(slot_label(VertexId(2), VertexId(7), 1, nest) == VertexId(2));
  CHECK(slot_label(VertexId(2), VertexId(7), 2, nest) == VertexId({2, 7}));
  CHECK(slot_label(VertexId(2), VertexId({2, 3}), 2, nest) == VertexId({2, 3}));
  CHECK(slot_label(VertexId(2), VertexId(7), 1, JoinOptions{Labeling::Nest, false}) == VertexId({2, 7}));
  CHECK(slot_label(VertexId(2), VertexId(7), 1, kInherit) == VertexId(7));
}
