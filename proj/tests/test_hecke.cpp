#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "modhecke/hecke.hpp"

using namespace modhecke;

static IsoType T(const std::string& s) { return IsoType::parse(s, Kind::chain_ring); }
static IsoType S(const std::string& s) { return IsoType::parse(s, Kind::sets); }

static void check_all(const std::vector<CheckItem>& items) {
  for (const CheckItem& it : items) {
    INFO(it.name << " " << it.detail);
    CHECK(it.pass);
  }
}

TEST_CASE("johnson scheme on 3-subsets of a 6-set") {
  HeckeContext ctx(Instance::make_sets(6), S("3"));
  CHECK(ctx.interval().size() == 4);
  CHECK(ctx.X(S("3")).size() == 20);
  CHECK(ctx.all_types_realized());
  CHECK(ctx.couple_report().symmetric);

  const auto& e = ctx.idempotents();
  std::vector<int> ranks;
  for (const HeckeElement& el : e) ranks.push_back(rank(el.mat));
  CHECK(ranks == std::vector<int>{1, 5, 9, 5});

  check_all(ctx.verify_cellalg());
  check_all(ctx.verify_cell_idem());
  for (const IsoType& nu : {S("1"), S("2"), S("3")}) check_all(ctx.verify_cellmod(nu));
  check_all(ctx.verify_equivariance({S("1"), S("2"), S("3")}));
}

TEST_CASE("grassmann scheme of planes in F_2^4") {
  HeckeContext ctx(Instance::make_chain_ring(2, 1, 4), T("1,1"));
  CHECK(ctx.interval().size() == 3);
  CHECK(ctx.X(T("1,1")).size() == 35);

  // geometric basis row sums: fix a plane, count planes with a given meet
  const auto& g = ctx.geometric_basis();
  Rat row0 = 0, row1 = 0;
  for (int j = 0; j < 35; ++j) {
    row0 += g[0].mat.at(0, j);
    row1 += g[1].mat.at(0, j);
  }
  CHECK(row0 == 16);  // disjoint planes
  CHECK(row1 == 18);  // meet in a line

  check_all(ctx.verify_cellalg());
  check_all(ctx.verify_cellmod(T("1")));
  check_all(ctx.verify_cellmod(T("1,1")));
}

TEST_CASE("hecke algebra over Z/4 rank 2") {
  HeckeContext ctx(Instance::make_chain_ring(2, 2, 2), T("2"));
  CHECK(ctx.interval().size() == 3);
  CHECK(ctx.X(T("2")).size() == 6);

  const auto& e = ctx.idempotents();
  int total = 0;
  for (const HeckeElement& el : e) total += rank(el.mat);
  CHECK(total == 6);

  check_all(ctx.verify_cellalg());
  check_all(ctx.verify_cell_idem());
  for (const IsoType& nu : ctx.interval())
    if (nu.sum() > 0) check_all(ctx.verify_cellmod(nu));
}

TEST_CASE("cellular basis equals averaging composition and round-trips") {
  HeckeContext ctx(Instance::make_sets(5), S("2"));
  const auto& c = ctx.cellular_basis();
  const auto& g = ctx.geometric_basis();
  REQUIRE(c.size() == 3);
  // c_0 is all ones, c_phi = g_phi
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) CHECK(c[0].mat.at(i, j) == 1);
  CHECK(c[2].mat == g[2].mat);
  // g recovered from c through mu-hat coefficients
  std::vector<Rat> acc(3, 0);
  for (size_t t = 0; t < 3; ++t) {
    Int m = mu_hat(ctx.inst(), ctx.interval()[1], ctx.interval()[t]);
    for (size_t s = 0; s < 3; ++s) acc[s] += Rat(m) * c[t].compact[s];
  }
  CHECK(acc == g[1].compact);
}

TEST_CASE("intertwiner dimensions match oracle orbit counts") {
  HeckeContext ctx(Instance::make_sets(6), S("3"));
  CHECK(long(ctx.arrows(S("2")).size()) == ctx.oracle_orbit_count(S("2")));
  CHECK(ctx.multiplicity(S("1"), S("2")) == 1);  // one embedding class of 1 into 2
  CHECK(ctx.multiplicity(S("2"), S("2")) == 1);
  CHECK(ctx.multiplicity(S("3"), S("2")) == 0);  // 3 does not embed into 2

  // two inequivalent embeddings of (1) into (2,1)
  Instance z = Instance::make_chain_ring(2, 2, 2);
  CHECK(z.arrow_types(T("1"), T("2,1")).size() == 2);
}

TEST_CASE("spectral table annihilation and distinct rows") {
  HeckeContext ctx(Instance::make_chain_ring(2, 1, 4), T("1"));
  const SpectralTable& sp = ctx.spectral_table();
  REQUIRE(sp.types.size() == 2);
  // c_0 is the all-ones matrix on the 15 lines: eigenvalues 15 and 0
  CHECK(ctx.a_entry(T("0"), T("0")) == 15);
  CHECK(ctx.a_entry(T("0"), T("1")) == 0);
  CHECK(sp.entry[0] != sp.entry[1]);
  // g_0 itself has eigenvalues 14 and -1
  FourierReport fr = fourier_report_field(4, 1, 2);
  CHECK(fr.truth[0] == std::vector<Rat>{14, -1});
}

TEST_CASE("fourier field report flags the printed formula") {
  FourierReport rep = fourier_report_field(4, 2, 2);
  REQUIRE(rep.truth.size() == 3);
  // g_m is the identity: all coefficients 1
  CHECK(rep.truth[2] == std::vector<Rat>{1, 1, 1});
  // trivial idempotent eigenvalue of g_0 is the number of disjoint partners
  CHECK(rep.truth[0][0] == 16);
  REQUIRE(rep.candidates.size() == 3);
  // the printed double sum matches under no candidate reading of its
  // unbound symbol; the ground truth stands
  for (const FourierCandidate& c : rep.candidates) CHECK(!c.matches);
}

TEST_CASE("trivial grassmannian of the zero object") {
  HeckeContext ctx(Instance::make_sets(4), S("0"));
  CHECK(ctx.X(S("0")).size() == 1);
  CHECK(ctx.interval().size() == 1);
  check_all(ctx.verify_cellalg());
}
