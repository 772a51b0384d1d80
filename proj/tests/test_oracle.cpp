#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "modhecke/oracle.hpp"

using namespace modhecke;

TEST_CASE("bitset basics") {
  Bitset a(70), b(70);
  a.set(0);
  a.set(64);
  b.set(0);
  CHECK(a.count() == 2);
  CHECK(b.is_subset_of(a));
  CHECK(!a.is_subset_of(b));
  CHECK((a & b).count() == 1);
  CHECK((a | b).count() == 2);
  CHECK(a.bits() == std::vector<int>{0, 64});
  a.reset(64);
  CHECK(a == b);
}

TEST_CASE("rref and rank") {
  ExactMatrix m(3, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(0, 2) = 3;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  m.at(1, 2) = 6;
  m.at(2, 0) = 0;
  m.at(2, 1) = 1;
  m.at(2, 2) = 1;
  CHECK(rank(m) == 2);
  ExactMatrix r = rref(m);
  CHECK(r.rows() == 2);
  CHECK(r.at(0, 0) == 1);
  CHECK(r.at(0, 1) == 0);
  CHECK(r.at(0, 2) == 1);
  CHECK(r.at(1, 1) == 1);
  CHECK(r.at(1, 2) == 1);
}

TEST_CASE("span membership and equality") {
  std::vector<std::vector<Rat>> basis = {{1, 0, 1}, {0, 1, 1}};
  CHECK(in_span({2, 3, 5}, basis));
  CHECK(!in_span({1, 0, 0}, basis));
  std::vector<std::vector<Rat>> other = {{1, 1, 2}, {1, -1, 0}};
  CHECK(span_equal(basis, other));
  CHECK(!span_equal(basis, {{1, 0, 0}}));
}

TEST_CASE("span intersection") {
  // xy-plane and xz-plane in Q^3 meet in the x-axis
  std::vector<std::vector<Rat>> a = {{1, 0, 0}, {0, 1, 0}};
  std::vector<std::vector<Rat>> b = {{1, 0, 0}, {0, 0, 1}};
  auto c = span_intersect(a, b);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == std::vector<Rat>{1, 0, 0});
  CHECK(span_intersect(a, {{0, 0, 1}}).empty());
}

TEST_CASE("solve in span") {
  std::vector<std::vector<Rat>> rows = {{1, 1}, {1, -1}};
  SolveResult s = solve_in_span(rows, {3, 1});
  REQUIRE(s.ok);
  CHECK(s.coeffs[0] == 2);
  CHECK(s.coeffs[1] == 1);
  CHECK(!solve_in_span({{1, 0}}, {0, 1}).ok);
}

TEST_CASE("orbits and group order") {
  PermutationAction rot{5, {{1, 2, 3, 4, 0}}};
  auto orb = orbits(rot);
  REQUIRE(orb.size() == 1);
  CHECK(orb[0].size() == 5);
  CHECK(group_order(rot) == 5);

  // S_3 from a transposition and a 3-cycle
  PermutationAction s3{3, {{1, 0, 2}, {1, 2, 0}}};
  CHECK(group_order(s3) == 6);
  CHECK(group_elements(s3).size() == 6);

  // no generators: only the identity
  PermutationAction trivial{4, {}};
  CHECK(group_order(trivial) == 1);
  CHECK(orbits(trivial).size() == 4);
  auto ids = orbit_ids(trivial);
  CHECK(ids == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("permutation matrix convention") {
  // P[g(x)][x] = 1
  ExactMatrix p = permutation_matrix({1, 2, 0});
  CHECK(p.at(1, 0) == 1);
  CHECK(p.at(2, 1) == 1);
  CHECK(p.at(0, 2) == 1);
  CHECK(p.at(0, 0) == 0);
}

TEST_CASE("group closure cap") {
  PermutationAction s3{3, {{1, 0, 2}, {1, 2, 0}}};
  CHECK_THROWS_AS(group_order(s3, 5), CapExceeded);
}
