#include "modhecke/counting.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "modhecke/poset.hpp"

namespace modhecke {

namespace {

std::string key_of(const Instance& inst, const std::string& op,
                   std::initializer_list<const IsoType*> types) {
  std::ostringstream os;
  os << inst.describe() << '|' << op;
  for (const IsoType* t : types) os << '|' << t->str();
  return os.str();
}

bool is_zero_meet(const Instance& inst, const Bitset& m) {
  return m.count() == (inst.kind == Kind::chain_ring ? 1 : 0);
}

bool small_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

bool CountTable::lookup(const std::string& key, Int& out) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return false;
  out = it->second.first;
  return true;
}

void CountTable::store(const std::string& key, const Int& value, const std::string& provenance) {
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    if (it->second.first != value)
      throw std::logic_error("count table conflict at " + key + ": " + it->second.first.get_str() +
                             " vs " + value.get_str());
    return;
  }
  entries_.emplace(key, std::make_pair(value, provenance));
}

std::string CountTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, entry] : entries_)
    entries.push_back({{"key", key}, {"value", entry.first.get_str()}, {"provenance", entry.second}});
  return nlohmann::json{{"entries", entries}}.dump(2) + "\n";
}

CountTable CountTable::from_json(const std::string& text) {
  CountTable t;
  nlohmann::json j = nlohmann::json::parse(text);
  for (const auto& e : j.at("entries"))
    t.entries_.emplace(e.at("key").get<std::string>(),
                       std::make_pair(Int(e.at("value").get<std::string>()),
                                      e.at("provenance").get<std::string>()));
  return t;
}

void CountTable::save(const std::string& path) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << to_json();
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot replace " + path);
}

CountTable CountTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return CountTable{};
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

Int gauss_binom(int n, int m, const Int& q) {
  if (m < 0 || m > n) return 0;
  if (q == 1) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), unsigned(n), unsigned(m));
    return b;
  }
  Int num = 1, den = 1;
  for (int i = 0; i < m; ++i) {
    num *= int_pow(q, unsigned(n - i)) - 1;
    den *= int_pow(q, unsigned(i + 1)) - 1;
  }
  return num / den;
}

Int count_sub(const Instance& inst, const IsoType& beta, const IsoType& alpha, CountTable* table) {
  if (!inst.type_leq(alpha, beta)) return 0;
  std::string key = key_of(inst, "sub", {&beta, &alpha});
  Int cached;
  if (table && table->lookup(key, cached)) return cached;
  Int c = 0;
  for (const Subobject& s : inst.enumerate_submodules(inst.reference(beta)))
    if (s.type == alpha) ++c;
  if (table) table->store(key, c, "brute-force");
  return c;
}

Int count_cont(const Instance& inst, const IsoType& alpha, const IsoType& beta, const IsoType& phi,
               CountTable* table, long verify_cap) {
  std::string key = key_of(inst, "cont", {&alpha, &beta, &phi});
  Int cached;
  if (table && table->lookup(key, cached)) return cached;
  std::vector<Subobject> subs = inst.enumerate_submodules(inst.reference(phi));
  std::vector<const Subobject*> reps, bs;
  for (const Subobject& s : subs) {
    if (s.type == alpha) reps.push_back(&s);
    if (s.type == beta) bs.push_back(&s);
  }
  Int c = 0;
  if (!reps.empty()) {
    auto count_for = [&](const Subobject& x0) {
      Int c0 = 0;
      for (const Subobject* b : bs)
        if (x0.elems.is_subset_of(b->elems)) ++c0;
      return c0;
    };
    c = count_for(*reps[0]);
    long stride = std::max<long>(1, long(reps.size()) / std::max<long>(verify_cap, 1));
    for (size_t i = size_t(stride); i < reps.size(); i += size_t(stride))
      if (count_for(*reps[i]) != c)
        throw std::runtime_error("containment count depends on the representative (phi=" +
                                 phi.str() + ")");
  }
  if (table) table->store(key, c, "brute-force");
  return c;
}

Int chi(const Instance& inst, const IsoType& alpha, CountTable* table) {
  std::string key = key_of(inst, "chi", {&alpha});
  Int cached;
  if (table && table->lookup(key, cached)) return cached;
  std::vector<Subobject> subs = inst.enumerate_submodules(inst.reference(alpha));
  // subs are sorted by size, so mu(0, x) can be filled in one ascending pass
  std::vector<Int> mu(subs.size());
  for (size_t j = 0; j < subs.size(); ++j) {
    if (j == 0) {
      mu[0] = 1;
      continue;
    }
    Int acc = 0;
    for (size_t i = 0; i < j; ++i)
      if (subs[i].elems.is_subset_of(subs[j].elems)) acc += mu[i];
    mu[j] = -acc;
  }
  Int c = subs.empty() ? Int(1) : mu.back();
  if (table) table->store(key, c, "brute-force");
  return c;
}

Int mu_hat(const Instance& inst, const IsoType& alpha, const IsoType& beta) {
  if (!inst.type_leq(alpha, beta)) return 0;
  std::vector<Subobject> subs = inst.enumerate_submodules(inst.reference(beta));
  // mu(x, top) by the dual recursion, filled descending from the top
  std::vector<Int> mu(subs.size());
  for (size_t jj = subs.size(); jj-- > 0;) {
    if (jj + 1 == subs.size()) {
      mu[jj] = 1;
      continue;
    }
    Int acc = 0;
    for (size_t i = jj + 1; i < subs.size(); ++i)
      if (subs[jj].elems.is_subset_of(subs[i].elems)) acc += mu[i];
    mu[jj] = -acc;
  }
  Int c = 0;
  for (size_t i = 0; i < subs.size(); ++i)
    if (subs[i].type == alpha) c += mu[i];
  return c;
}

Int avoid_bruteforce(const Instance& inst, const IsoType& omega, const IsoType& beta,
                     const IsoType& kappa, const IsoType& Phi, long verify_pairs_cap,
                     CountTable* table) {
  std::string key = key_of(inst, "avoid", {&omega, &beta, &kappa, &Phi});
  Int cached;
  if (table && table->lookup(key, cached)) return cached;
  std::vector<Subobject> subs = inst.enumerate_submodules(inst.reference(Phi));
  std::vector<const Subobject*> ws, ks, bs;
  for (const Subobject& s : subs) {
    if (s.type == omega) ws.push_back(&s);
    if (s.type == kappa) ks.push_back(&s);
    if (s.type == beta) bs.push_back(&s);
  }
  auto count_for = [&](const Subobject& w, const Subobject& kx) {
    Int c = 0;
    for (const Subobject* b : bs)
      if (w.elems.is_subset_of(b->elems) && is_zero_meet(inst, b->elems & kx.elems)) ++c;
    return c;
  };
  bool found = false;
  Int c = 0;
  long checked = 0;
  for (const Subobject* w : ws) {
    for (const Subobject* kx : ks) {
      if (!is_zero_meet(inst, w->elems & kx->elems)) continue;
      Int c0 = count_for(*w, *kx);
      if (!found) {
        c = c0;
        found = true;
      } else if (c0 != c) {
        throw std::runtime_error("avoidance count depends on the representatives (Phi=" +
                                 Phi.str() + ")");
      }
      if (++checked >= verify_pairs_cap) break;
    }
    if (checked >= verify_pairs_cap) break;
  }
  if (!found)
    throw std::invalid_argument("no disjoint representatives of types " + omega.str() + ", " +
                                kappa.str() + " in " + Phi.str());
  if (table) table->store(key, c, "brute-force");
  return c;
}

AvoidFormulaResult avoid_formula(const Instance& inst, const IsoType& omega, const IsoType& beta,
                                 const IsoType& kappa, const IsoType& Phi, CountTable* table) {
  AvoidFormulaResult res;
  res.value = 0;
  for (const IsoType& alpha : inst.types_leq(kappa)) {
    Int mult = count_sub(inst, kappa, alpha, table);
    if (mult == 0) continue;
    IsoType oa = inst.dsum(omega, alpha);
    Int cont = 0;
    if (count_sub(inst, Phi, oa, table) == 0)
      res.unrealized_terms.push_back(oa);  // term is an empty count, taken as 0
    else if (inst.type_leq(oa, beta))
      cont = count_cont(inst, oa, beta, Phi, table);
    if (cont == 0) continue;
    res.value += Rat(chi(inst, alpha, table)) * Rat(cont) * Rat(mult);
  }
  return res;
}

CountingPrincipleReport counting_principle_check(const Instance& inst,
                                                 const std::vector<int>& x_images,
                                                 CountTable* table) {
  CountingPrincipleReport rep;
  const std::vector<Subobject>& lat = inst.lattice();
  std::vector<Int> s(lat.size(), 0), t(lat.size(), 0);
  for (int img : x_images) {
    if (img < 0 || img >= int(lat.size())) throw std::invalid_argument("bad lattice index");
    ++s[size_t(img)];
  }
  for (size_t y = 0; y < lat.size(); ++y)
    for (int img : x_images)
      if (lat[y].elems.is_subset_of(lat[size_t(img)].elems)) ++t[y];

  if (lat.size() <= 600) {
    // independent recomputation of t as zeta * s on the explicit lattice poset
    std::vector<std::string> ids;
    std::vector<std::pair<std::string, std::string>> leq;
    for (size_t i = 0; i < lat.size(); ++i) ids.push_back(std::to_string(i));
    for (size_t i = 0; i < lat.size(); ++i)
      for (size_t j = 0; j < lat.size(); ++j)
        if (i != j && lat[i].elems.is_subset_of(lat[j].elems))
          leq.emplace_back(ids[i], ids[j]);
    auto poset = std::make_shared<Poset>(Poset::make(ids, leq, ids[0]));
    PosetFunction sf{poset, {}};
    sf.values.assign(lat.size(), Rat(0));
    for (size_t i = 0; i < lat.size(); ++i) sf.values[i] = Rat(s[i]);
    PosetFunction tf = act(zeta(poset), sf);
    rep.zeta_checked = true;
    for (size_t i = 0; i < lat.size(); ++i)
      if (tf.values[i] != Rat(t[i])) rep.zeta_consistent = false;
  }

  rep.lhs = Rat(s[0]);  // the zero subobject is first in canonical order
  rep.rhs = 0;
  std::map<std::vector<int>, Int> t_hat;
  for (size_t y = 0; y < lat.size(); ++y) t_hat[lat[y].type.parts] += t[y];
  for (const auto& [parts, val] : t_hat) {
    IsoType a;
    a.parts = parts;
    rep.rhs += Rat(chi(inst, a, table)) * Rat(val);
  }
  rep.ok = rep.lhs == rep.rhs && rep.zeta_consistent;
  return rep;
}

FieldIdentityReport check_field_identity(int n, int m, int l, int k, int q) {
  FieldIdentityReport rep;
  Int qz(q);
  if (l - m - k >= 0)
    rep.closed_form = Rat(gauss_binom(n - m - k, l - m - k, qz) * int_pow(qz, unsigned(k * (l - m - k))));
  else
    rep.closed_form = 0;
  rep.alt_sum = 0;
  for (int i = 0; i <= k; ++i) {
    Rat term = Rat(int_pow(qz, unsigned(i * (i - 1) / 2)) * gauss_binom(n - m - i, l - m - i, qz) *
                   gauss_binom(k, i, qz));
    rep.alt_sum += (i % 2 == 0) ? term : -term;
  }
  if (small_prime(q) && m + k <= n) {
    double sz = 1;
    for (int i = 0; i < n; ++i) sz *= q;
    if (sz <= 1024) {
      Instance inst = Instance::make_chain_ring(q, 1, n);
      auto dim_type = [](int d) {
        IsoType t;
        t.parts.assign(size_t(d), 1);
        return t;
      };
      rep.brute = avoid_bruteforce(inst, dim_type(m), dim_type(l), dim_type(k), dim_type(n));
      rep.has_brute = true;
      rep.sum_matches_brute = rep.alt_sum == Rat(rep.brute);
    }
  }
  rep.closed_matches_sum = rep.closed_form == rep.alt_sum;
  return rep;
}

bool check_duality(const Instance& inst, const IsoType& kappa) {
  Subobject x = inst.reference(kappa);
  std::vector<Subobject> subs = inst.enumerate_submodules(x);
  std::map<std::vector<int>, long> by_sub, by_quot;
  for (const Subobject& y : subs) {
    ++by_sub[y.type.parts];
    ++by_quot[inst.quotient_type(y, x).parts];
  }
  return by_sub == by_quot;
}

}  // namespace modhecke
