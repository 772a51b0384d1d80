// Acceptance gate: one line per criterion, exact equalities only.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "modhecke/counting.hpp"
#include "modhecke/hecke.hpp"
#include "modhecke/poset.hpp"

using namespace modhecke;

namespace {

static bool all_ok = true;

void criterion(int n, const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("criterion %d (%s): %s%s%s\n", n, name.c_str(), pass ? "PASS" : "FAIL",
              detail.empty() ? "" : " ", detail.c_str());
  if (!pass) all_ok = false;
}

IsoType T(const std::string& s) { return IsoType::parse(s, Kind::chain_ring); }
IsoType S(const std::string& s) { return IsoType::parse(s, Kind::sets); }

IsoType ones(int m) {
  IsoType t;
  t.parts.assign(size_t(m), 1);
  return t;
}

// 1. Moebius recursion reproduces the field closed forms
bool check_mobius_fields() {
  for (int q : {2, 3})
    for (int d = 1; d <= 4; ++d) {
      Instance inst = Instance::make_chain_ring(q, 1, d);
      const std::vector<Subobject>& lat = inst.lattice();
      std::vector<std::string> ids;
      std::vector<std::pair<std::string, std::string>> leq;
      for (size_t i = 0; i < lat.size(); ++i) ids.push_back("s" + std::to_string(i));
      for (size_t i = 0; i < lat.size(); ++i)
        for (size_t j = 0; j < lat.size(); ++j)
          if (inst.sub_leq(lat[i], lat[j])) leq.emplace_back(ids[i], ids[j]);
      auto p = std::make_shared<Poset>(Poset::make(ids, leq, ids[0]));
      IncidenceFunction mu = mobius(p);
      for (size_t i = 0; i < lat.size(); ++i)
        for (size_t j = 0; j < lat.size(); ++j) {
          if (!inst.sub_leq(lat[i], lat[j])) continue;
          int dd = lat[j].type.sum() - lat[i].type.sum();
          Int expect = int_pow(Int(q), unsigned(dd * (dd - 1) / 2));
          if (dd % 2) expect = -expect;
          if (mu.at(int(i), int(j)) != Rat(expect)) return false;
        }
      for (int m = 0; m <= d; ++m) {
        Int expect =
            gauss_binom(d, m, q) * int_pow(Int(q), unsigned((d - m) * (d - m - 1) / 2));
        if ((d - m) % 2) expect = -expect;
        if (mu_hat(inst, ones(m), ones(d)) != expect) return false;
      }
    }
  return true;
}

bool check_avoid_instance(const Instance& inst, long* checked) {
  IsoType Phi = inst.ambient_type();
  std::vector<IsoType> types = inst.types_leq(Phi);
  for (const IsoType& om : types)
    for (const IsoType& ka : types) {
      if (!inst.type_realizable(inst.dsum(om, ka))) continue;
      for (const IsoType& be : types) {
        if (!inst.type_leq(om, be)) continue;
        Int brute;
        try {
          brute = avoid_bruteforce(inst, om, be, ka, Phi, 8);
        } catch (const std::invalid_argument&) {
          continue;
        }
        AvoidFormulaResult f = avoid_formula(inst, om, be, ka, Phi);
        ++*checked;
        if (f.value != Rat(brute)) return false;
      }
    }
  return true;
}

// 2. the inclusion-exclusion avoidance formula equals brute force everywhere
bool check_avoid_all(std::string* detail) {
  long checked = 0;
  for (int n = 1; n <= 8; ++n)
    if (!check_avoid_instance(Instance::make_sets(n), &checked)) return false;
  for (int q : {2, 3})
    for (int n = 1; n <= 5; ++n)
      if (!check_avoid_instance(Instance::make_chain_ring(q, 1, n), &checked)) return false;
  if (!check_avoid_instance(Instance::make_chain_ring(2, 2, 2), &checked)) return false;

  FieldIdentityReport r = check_field_identity(4, 1, 2, 1, 2);
  bool flagged = r.has_brute && r.brute == 6 && r.alt_sum == 6 && r.closed_form == 1 &&
                 r.sum_matches_brute && !r.closed_matches_sum;
  std::ostringstream os;
  os << "(" << checked << " tuples; (4,1,2,1,2) brute=sum=6, printed closed form 1 flagged)";
  *detail = os.str();
  return flagged;
}

bool item_named(const std::vector<CheckItem>& items, const std::string& name) {
  for (const CheckItem& it : items)
    if (it.name == name) return it.pass;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "moebius field closed forms", check_mobius_fields());

  {
    std::string detail;
    bool ok = check_avoid_all(&detail);
    criterion(2, "avoidance formula vs brute force", ok, detail);
  }

  HeckeContext sets6(Instance::make_sets(6), S("3"));
  HeckeContext field4(Instance::make_chain_ring(2, 1, 4), T("1,1"));
  HeckeContext z42(Instance::make_chain_ring(2, 2, 2), T("2"));
  std::vector<HeckeContext*> ctxs = {&sets6, &field4, &z42};

  {
    bool ok = sets6.interval().size() == 4 && field4.interval().size() == 3 &&
              z42.interval().size() == 3;
    for (HeckeContext* c : ctxs) {
      std::vector<CheckItem> items = c->verify_cellalg();
      ok = ok && item_named(items, "g-commute") && item_named(items, "zeta-mu-round-trip") &&
           item_named(items, "ideal-closure") && item_named(items, "product-span-intersection") &&
           item_named(items, "product-span-meet");
    }
    criterion(3, "hecke algebra structure", ok, "(dims 4, 3, 3)");
  }

  {
    bool ok = true;
    for (HeckeContext* c : ctxs) {
      std::vector<CheckItem> items = c->verify_cellalg();
      ok = ok && item_named(items, "idempotents-orthogonal") &&
           item_named(items, "idempotents-sum-identity");
    }
    std::vector<int> ranks;
    for (const HeckeElement& e : sets6.idempotents()) ranks.push_back(rank(e.mat));
    ok = ok && ranks == std::vector<int>{1, 5, 9, 5};
    int total = 0;
    for (const HeckeElement& e : z42.idempotents()) total += rank(e.mat);
    ok = ok && total == 6;
    // multiplicity table equals arrow-type counts on all three instances
    for (HeckeContext* c : ctxs)
      for (const IsoType& nu : c->interval())
        for (const IsoType& lam : c->interval()) {
          long arrows = 0;
          for (const ArrowType& a : c->arrows(nu))
            if (a.source == lam) ++arrows;
          ok = ok && c->multiplicity(lam, nu) == arrows;
        }
    Instance z = Instance::make_chain_ring(2, 2, 2);
    ok = ok && z.arrow_types(T("1"), T("2,1")).size() == 2;
    criterion(4, "idempotents and multiplicities", ok,
              "(sets ranks 1,5,9,5; chain ranks sum 6; |{(1) into (2,1)}| = 2)");
  }

  {
    bool ok = true;
    for (HeckeContext* c : ctxs)
      for (const IsoType& nu : c->interval()) {
        long dim = long(c->arrows(nu).size());
        ok = ok && dim == c->oracle_orbit_count(nu);
        for (const IsoType& lam : c->interval()) {
          long arrows = 0;
          for (const ArrowType& a : c->arrows(nu))
            if (a.source == lam) ++arrows;
          ok = ok && c->multiplicity(lam, nu) == arrows;
        }
      }
    criterion(5, "cell module dimensions vs orbit counts", ok);
  }

  {
    bool ok = true;
    for (HeckeContext* c : ctxs) {
      std::vector<CheckItem> items = c->verify_cell_idem();
      for (const CheckItem& it : items) ok = ok && it.pass;
    }
    // full A-matrix equality, nothing skipped, on the two named instances
    for (HeckeContext* c : {&sets6, &z42})
      for (const CheckItem& it : c->verify_cell_idem())
        ok = ok && it.name.find("skipped") == std::string::npos;
    criterion(6, "cellular idempotent coefficients", ok);
  }

  {
    bool ok = true;
    for (HeckeContext* c : ctxs) {
      std::vector<IsoType> nus;
      for (const IsoType& nu : c->interval())
        if (nu.sum() > 0) nus.push_back(nu);
      for (const CheckItem& it : c->verify_equivariance(nus)) ok = ok && it.pass;
    }
    criterion(7, "equivariance of g and G bases", ok);
  }

  {
    Instance s3 = Instance::make_sets(3);
    PermutationAction a;
    a.degree = 3;
    for (const Automorphism& g : s3.aut_generators()) a.generators.push_back(g.perm);
    bool ok = group_order(a) == 6;
    ok = ok && Instance::make_chain_ring(2, 1, 3).aut_elements(T("1,1,1")).size() == 168;
    ok = ok && Instance::make_chain_ring(2, 2, 2).aut_elements(T("2,2")).size() == 96;
    criterion(8, "group orders by closure", ok, "(6, 168, 96)");
  }

  {
    bool ok = !cli.empty();
    std::vector<std::string> args = {
        "verify --suite all --instance sets --n 6 --m 3",
        "verify --suite all --instance chain --p 2 --k 1 --n 4 --m 1,1",
        "verify --suite all --instance chain --p 2 --k 2 --n 2 --m 2"};
    for (size_t i = 0; ok && i < args.size(); ++i) {
      std::string f1 = "det_a_" + std::to_string(i) + ".json";
      std::string f2 = "det_b_" + std::to_string(i) + ".json";
      std::string base = "\"" + cli + "\" " + args[i] + " --out ";
      if (std::system((base + f1 + " > /dev/null 2>&1").c_str()) != 0) ok = false;
      if (std::system((base + f2 + " > /dev/null 2>&1").c_str()) != 0) ok = false;
      std::ifstream a(f1, std::ios::binary), b(f2, std::ios::binary);
      std::stringstream sa, sb;
      sa << a.rdbuf();
      sb << b.rdbuf();
      ok = ok && a && b && sa.str() == sb.str() && !sa.str().empty();
      std::remove(f1.c_str());
      std::remove(f2.c_str());
    }
    criterion(9, "byte-identical verification reports", ok);
  }

  return all_ok ? 0 : 1;
}
