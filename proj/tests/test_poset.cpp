#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "modhecke/poset.hpp"

using namespace modhecke;

namespace {

PosetPtr chain3() {
  return std::make_shared<Poset>(
      Poset::make({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}, {"0", "2"}}, "0"));
}

// boolean lattice on {a,b,c} encoded as bit strings
PosetPtr bool3() {
  std::vector<std::string> ids = {"000", "100", "010", "001", "110", "101", "011", "111"};
  auto bits = [](const std::string& s) {
    int v = 0;
    for (int i = 0; i < 3; ++i)
      if (s[i] == '1') v |= 1 << i;
    return v;
  };
  std::vector<std::pair<std::string, std::string>> leq;
  for (const auto& a : ids)
    for (const auto& b : ids)
      if ((bits(a) & bits(b)) == bits(a)) leq.emplace_back(a, b);
  return std::make_shared<Poset>(Poset::make(ids, leq, "000"));
}

}  // namespace

TEST_CASE("moebius values on a chain") {
  auto p = chain3();
  IncidenceFunction mu = mobius(p);
  CHECK(mu.at(p->index("0"), p->index("0")) == 1);
  CHECK(mu.at(p->index("0"), p->index("1")) == -1);
  CHECK(mu.at(p->index("0"), p->index("2")) == 0);
  CHECK(euler_char(p) == 0);
}

TEST_CASE("moebius inverts zeta on the boolean lattice") {
  auto p = bool3();
  IncidenceFunction mu = mobius(p), ze = zeta(p), de = delta_fn(p);
  CHECK(convolve(mu, ze) == de);
  CHECK(convolve(ze, mu) == de);
  // mu(0, top) = (-1)^3
  CHECK(mu.at(p->index("000"), p->index("111")) == -1);
  CHECK(euler_char(p) == -1);
}

TEST_CASE("module action sums over the up-set") {
  auto p = chain3();
  PosetFunction v{p, {0, 0, 1}};  // indicator of the top
  PosetFunction w = act(zeta(p), v);
  // (zeta * v)(x) = sum over y >= x of v(y)
  CHECK(w.values == std::vector<Rat>{1, 1, 1});
}

TEST_CASE("pushforward along the size map of the boolean lattice") {
  auto p = bool3();
  std::vector<std::string> sids = {"s0", "s1", "s2", "s3"};
  std::vector<std::pair<std::string, std::string>> sleq;
  for (int i = 0; i <= 3; ++i)
    for (int j = i; j <= 3; ++j) sleq.emplace_back("s" + std::to_string(i), "s" + std::to_string(j));
  auto t = std::make_shared<Poset>(Poset::make(sids, sleq, "s0"));
  std::vector<int> map(8);
  for (int i = 0; i < 8; ++i) {
    int ones = 0;
    for (char c : p->id(i)) ones += c == '1';
    map[i] = t->index("s" + std::to_string(ones));
  }
  PosetMap tau = PosetMap::make(p, t, map);

  PosetFunction ones_fn{p, std::vector<Rat>(8, 1)};
  PosetFunction pushed = pushforward_vector(tau, ones_fn);
  CHECK(pushed.values == std::vector<Rat>{1, 3, 3, 1});

  CHECK(in_J(zeta(p), tau));
  CHECK(in_J(mobius(p), tau));
  CHECK(check_club(tau));

  // pushed zeta counts subsets of each size inside a size-j set
  IncidenceFunction zh = pushforward_incidence(tau, zeta(p));
  CHECK(zh.at(t->index("s1"), t->index("s3")) == 3);
  CHECK(zh.at(t->index("s0"), t->index("s2")) == 1);
}

TEST_CASE("interval restriction") {
  auto p = bool3();
  Poset iv = p->interval(p->index("100"), p->index("111"));
  CHECK(iv.size() == 4);
  CHECK(iv.top() >= 0);
}

TEST_CASE("json round trip") {
  auto p = bool3();
  PosetPtr q = poset_from_json(poset_to_json(*p));
  CHECK(q->size() == p->size());
  IncidenceFunction mu = mobius(p);
  IncidenceFunction mu2 = incidence_from_json(p, incidence_to_json(mu));
  CHECK(mu == mu2);
}
