#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "modhecke/instance.hpp"

using namespace modhecke;

TEST_CASE("iso type parsing and order") {
  IsoType a = IsoType::parse("2,1", Kind::chain_ring);
  CHECK(a.parts == std::vector<int>{2, 1});
  CHECK(a.sum() == 3);
  CHECK(a.str() == "2,1");
  IsoType z = IsoType::parse("0", Kind::chain_ring);
  CHECK(z.parts.empty());
  // graded lex: by sum first
  CHECK(IsoType::parse("2", Kind::chain_ring) < IsoType::parse("1,1,1", Kind::chain_ring));
  CHECK(IsoType::parse("1,1", Kind::chain_ring) < IsoType::parse("2", Kind::chain_ring));
}

TEST_CASE("sets instance lattice") {
  Instance inst = Instance::make_sets(4);
  CHECK(inst.lattice().size() == 16);
  Bitset b(4);
  b.set(1);
  b.set(3);
  Subobject s = inst.make_sub_from_elements(b);
  CHECK(s.type.parts == std::vector<int>{2});
  CHECK(inst.sub_leq(s, inst.full_sub()));
  CHECK(inst.quotient_type(s, inst.full_sub()).parts == std::vector<int>{2});
}

TEST_CASE("subspaces of F_2^2") {
  Instance inst = Instance::make_chain_ring(2, 1, 2);
  CHECK(inst.lattice().size() == 5);  // 0, three lines, the plane
  int lines = 0;
  for (const Subobject& s : inst.lattice()) lines += s.type.parts == std::vector<int>{1};
  CHECK(lines == 3);
}

TEST_CASE("canonical echelon generators over Z/4") {
  Instance inst = Instance::make_chain_ring(2, 2, 2);
  Subobject s = inst.make_sub_from_gens({{2, 1}});
  // the span of (2,1) is cyclic of order 4; its echelon form keeps the
  // dependent Howell row (0,2)
  CHECK(s.elems.count() == 4);
  CHECK(s.type.parts == std::vector<int>{2});
  REQUIRE(s.gens.size() == 2);
  CHECK(s.gens[0] == std::vector<int>{2, 1});
  CHECK(s.gens[1] == std::vector<int>{0, 2});

  // canonical form depends only on the span
  Subobject t = inst.make_sub_from_gens({{2, 3}});
  CHECK(s.elems == t.elems);
  CHECK(s.gens == t.gens);
}

TEST_CASE("submodule lattice of (Z/4)^2") {
  Instance inst = Instance::make_chain_ring(2, 2, 2);
  const auto& lat = inst.lattice();
  std::map<std::string, int> by_type;
  for (const Subobject& s : lat) by_type[s.type.str()]++;
  CHECK(by_type["0"] == 1);
  CHECK(by_type["1"] == 3);
  CHECK(by_type["2"] == 6);
  CHECK(by_type["1,1"] == 1);
  CHECK(by_type["2,1"] == 3);
  CHECK(by_type["2,2"] == 1);
  CHECK(lat.size() == 15);

  // type via annihilator-count profile agrees with Smith normal form
  for (const Subobject& s : lat) {
    std::vector<long> counts(inst.k + 1, 0);
    for (int e : s.elems.bits())
      for (int j = inst.order_exp(e); j <= inst.k; ++j) counts[j]++;
    CHECK(inst.type_from_counts(counts) == s.type);
  }
}

TEST_CASE("embedding order equals realizability") {
  Instance inst = Instance::make_chain_ring(2, 2, 2);
  // brute force: a <= b iff reference(b) has a subobject of type a
  std::vector<IsoType> types = inst.types_leq(inst.ambient_type());
  for (const IsoType& a : types)
    for (const IsoType& b : types) {
      bool brute = false;
      for (const Subobject& s : inst.enumerate_submodules(inst.reference(b)))
        if (s.type == a) brute = true;
      CHECK(inst.type_leq(a, b) == brute);
    }
  CHECK(!inst.type_leq(IsoType::parse("1,1", Kind::chain_ring),
                       IsoType::parse("2", Kind::chain_ring)));
  CHECK(!inst.type_leq(IsoType::parse("2", Kind::chain_ring),
                       IsoType::parse("1,1", Kind::chain_ring)));
}

TEST_CASE("meet and join") {
  Instance inst = Instance::make_chain_ring(2, 1, 3);
  const auto& lat = inst.lattice();
  for (size_t i = 0; i < lat.size(); i += 3)
    for (size_t j = 0; j < lat.size(); j += 3) {
      Subobject m = inst.meet(lat[i], lat[j]);
      Subobject u = inst.join(lat[i], lat[j]);
      CHECK(m.elems == (lat[i].elems & lat[j].elems));
      CHECK(inst.sub_leq(lat[i], u));
      CHECK(inst.sub_leq(lat[j], u));
      CHECK(m.type.sum() + u.type.sum() >= 0);
    }
}

TEST_CASE("isomorphism search") {
  Instance inst = Instance::make_chain_ring(2, 1, 2);
  Subobject f = inst.full_sub();
  CHECK(inst.all_isos(f, f).size() == 6);  // |GL_2(F_2)|
  Instance z4 = Instance::make_chain_ring(2, 2, 1);
  Subobject g = z4.full_sub();
  CHECK(z4.all_isos(g, g).size() == 2);  // units of Z/4
}

TEST_CASE("automorphism group orders") {
  // S_3
  Instance sets3 = Instance::make_sets(3);
  PermutationAction a;
  a.degree = 3;
  for (const Automorphism& g : sets3.aut_generators()) a.generators.push_back(g.perm);
  CHECK(group_order(a) == 6);

  // GL_3(F_2)
  Instance f23 = Instance::make_chain_ring(2, 1, 3);
  CHECK(f23.aut_elements(f23.ambient_type()).size() == 168);

  // GL_2(Z/4)
  Instance z42 = Instance::make_chain_ring(2, 2, 2);
  CHECK(z42.aut_elements(z42.ambient_type()).size() == 96);
}

TEST_CASE("arrow types") {
  Instance inst = Instance::make_chain_ring(2, 2, 2);
  // two inequivalent embeddings of (1) into (2,1)
  std::vector<ArrowType> arr = inst.arrow_types(IsoType::parse("1", Kind::chain_ring),
                                                IsoType::parse("2,1", Kind::chain_ring));
  CHECK(arr.size() == 2);
  long total = 0, reps = 0;
  for (const ArrowType& at : arr) total += at.orbit_size;
  for (const Subobject& s : inst.enumerate_submodules(inst.reference(IsoType::parse("2,1", Kind::chain_ring))))
    if (s.type.parts == std::vector<int>{1}) ++reps;
  CHECK(total == reps);

  // arrow labels are constant on orbits and cover all arrows
  IsoType nu = IsoType::parse("2,1", Kind::chain_ring);
  const std::vector<ArrowType>& all = inst.arrows_into(nu);
  std::set<int> seen;
  for (const Subobject& s : inst.enumerate_submodules(inst.reference(nu)))
    seen.insert(inst.arrow_index_in_ref(nu, s.elems));
  CHECK(seen.size() == all.size());
}

TEST_CASE("symmetric types and couples") {
  Instance sets = Instance::make_sets(5);
  CHECK(sets.is_symmetric_type(IsoType::parse("5", Kind::sets)));
  SymCoupleReport rep = sets.is_symmetric_couple(IsoType::parse("5", Kind::sets),
                                                 IsoType::parse("2", Kind::sets));
  CHECK(rep.symmetric);

  Instance field = Instance::make_chain_ring(2, 1, 4);
  SymCoupleReport frep = field.is_symmetric_couple(field.ambient_type(),
                                                   IsoType::parse("1,1", Kind::chain_ring));
  CHECK(frep.symmetric);  // 2m <= n
}

TEST_CASE("quotient types and duality of (Z/4)^2") {
  Instance inst = Instance::make_chain_ring(2, 2, 2);
  Subobject f = inst.full_sub();
  std::map<std::string, int> by_sub, by_quot;
  for (const Subobject& s : inst.lattice()) {
    by_sub[s.type.str()]++;
    by_quot[inst.quotient_type(s, f).str()]++;
  }
  CHECK(by_sub == by_quot);
}
