#include "modhecke/poset.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace modhecke {

using json = nlohmann::json;

Poset Poset::make(std::vector<std::string> ids,
                  const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                  std::optional<std::string> bottom) {
  Poset p;
  p.ids_ = std::move(ids);
  int n = int(p.ids_.size());
  for (int i = 0; i < n; ++i) {
    if (!p.index_.emplace(p.ids_[i], i).second)
      throw std::invalid_argument("duplicate element id: " + p.ids_[i]);
  }
  p.up_.assign(n, Bitset(n));
  for (int i = 0; i < n; ++i) p.up_[i].set(i);
  for (const auto& [a, b] : leq_pairs) {
    auto ia = p.index_.find(a), ib = p.index_.find(b);
    if (ia == p.index_.end() || ib == p.index_.end())
      throw std::invalid_argument("leq pair references unknown id");
    p.up_[ia->second].set(ib->second);
  }
  // antisymmetry and transitivity
  for (int i = 0; i < n; ++i)
    for (int j : p.up_[i].bits()) {
      if (j != i && p.up_[j].test(i))
        throw std::invalid_argument("antisymmetry violated: " + p.ids_[i] + ", " + p.ids_[j]);
      if (!p.up_[j].is_subset_of(p.up_[i]))
        throw std::invalid_argument("transitivity violated at " + p.ids_[i] + " <= " + p.ids_[j]);
    }
  if (bottom) {
    int b = p.index_.at(*bottom);
    for (int i = 0; i < n; ++i)
      if (!p.up_[b].test(i)) throw std::invalid_argument("declared bottom is not below every element");
    p.bottom_ = b;
  } else {
    for (int b = 0; b < n; ++b)
      if (p.up_[b].count() == n) {
        p.bottom_ = b;
        break;
      }
  }
  p.finish();
  return p;
}

void Poset::finish() {
  int n = size();
  down_.assign(n, Bitset(n));
  for (int i = 0; i < n; ++i)
    for (int j : up_[i].bits()) down_[j].set(i);
  order_.resize(n);
  for (int i = 0; i < n; ++i) order_[i] = i;
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int a, int b) { return down_[a].count() < down_[b].count(); });
  for (int x = 0; x < n; ++x)
    for (int y : up_[x].bits()) {
      pair_index_.emplace((uint64_t(x) << 32) | uint32_t(y), int(pairs_.size()));
      pairs_.emplace_back(x, y);
    }
}

int Poset::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("unknown element id: " + id);
  return it->second;
}

int Poset::top() const {
  int t = -1;
  for (int i = 0; i < size(); ++i)
    if (down_[i].count() == size()) {
      t = i;
      break;
    }
  return t;
}

int Poset::pair_index(int x, int y) const {
  auto it = pair_index_.find((uint64_t(x) << 32) | uint32_t(y));
  return it == pair_index_.end() ? -1 : it->second;
}

Poset Poset::interval(int x, int y) const {
  Bitset in = up_[x] & down_[y];
  std::vector<std::string> ids;
  for (int i : in.bits()) ids.push_back(ids_[i]);
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i : in.bits())
    for (int j : (up_[i] & in).bits()) rel.emplace_back(ids_[i], ids_[j]);
  return make(std::move(ids), rel, ids_[x]);
}

const Rat& IncidenceFunction::at(int x, int y) const {
  int i = poset->pair_index(x, y);
  if (i < 0) throw std::invalid_argument("incomparable pair");
  return values[i];
}

Rat& IncidenceFunction::at(int x, int y) {
  int i = poset->pair_index(x, y);
  if (i < 0) throw std::invalid_argument("incomparable pair");
  return values[i];
}

PosetMap PosetMap::make(PosetPtr source, PosetPtr target, std::vector<int> map) {
  if (int(map.size()) != source->size()) throw std::invalid_argument("map not total on source");
  for (int x = 0; x < source->size(); ++x)
    for (int y : source->up_set(x).bits())
      if (!target->leq(map[x], map[y])) throw std::invalid_argument("map is not order-preserving");
  return PosetMap{std::move(source), std::move(target), std::move(map)};
}

IncidenceFunction delta_fn(PosetPtr p) {
  IncidenceFunction f{p, std::vector<Rat>(p->pairs().size(), 0)};
  for (size_t i = 0; i < p->pairs().size(); ++i)
    if (p->pairs()[i].first == p->pairs()[i].second) f.values[i] = 1;
  return f;
}

IncidenceFunction zeta(PosetPtr p) {
  return IncidenceFunction{p, std::vector<Rat>(p->pairs().size(), 1)};
}

IncidenceFunction mobius(PosetPtr p) {
  IncidenceFunction f{p, std::vector<Rat>(p->pairs().size(), 0)};
  for (int x = 0; x < p->size(); ++x) {
    for (int y : p->linear_extension()) {
      if (!p->leq(x, y)) continue;
      if (y == x) {
        f.at(x, x) = 1;
        continue;
      }
      Rat s = 0;
      for (int z : (p->up_set(x) & p->down_set(y)).bits())
        if (z != y) s += f.at(x, z);
      f.at(x, y) = -s;
    }
  }
  return f;
}

IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g) {
  if (f.poset.get() != g.poset.get()) throw std::invalid_argument("convolve: mismatched posets");
  const Poset& p = *f.poset;
  IncidenceFunction h{f.poset, std::vector<Rat>(p.pairs().size(), 0)};
  for (size_t i = 0; i < p.pairs().size(); ++i) {
    auto [x, y] = p.pairs()[i];
    Rat s = 0;
    for (int z : (p.up_set(x) & p.down_set(y)).bits()) s += f.at(x, z) * g.at(z, y);
    h.values[i] = s;
  }
  return h;
}

PosetFunction act(const IncidenceFunction& f, const PosetFunction& v) {
  if (f.poset.get() != v.poset.get()) throw std::invalid_argument("act: mismatched posets");
  const Poset& p = *f.poset;
  PosetFunction w{v.poset, std::vector<Rat>(p.size(), 0)};
  for (int x = 0; x < p.size(); ++x) {
    Rat s = 0;
    for (int y : p.up_set(x).bits()) s += f.at(x, y) * v.values[y];
    w.values[x] = s;
  }
  return w;
}

PosetFunction pushforward_vector(const PosetMap& t, const PosetFunction& v) {
  if (t.source.get() != v.poset.get()) throw std::invalid_argument("pushforward: function not over source");
  PosetFunction w{t.target, std::vector<Rat>(t.target->size(), 0)};
  for (int x = 0; x < t.source->size(); ++x) w.values[t.map[x]] += v.values[x];
  return w;
}

namespace {

// fiber_sums[y][x'] = sum over x <= y with t(x) = x' of f(x, y)
std::vector<std::vector<Rat>> fiber_sums(const IncidenceFunction& f, const PosetMap& t) {
  const Poset& p = *t.source;
  std::vector<std::vector<Rat>> s(p.size(), std::vector<Rat>(t.target->size(), 0));
  for (int y = 0; y < p.size(); ++y)
    for (int x : p.down_set(y).bits()) s[y][t.map[x]] += f.at(x, y);
  return s;
}

}  // namespace

bool in_J(const IncidenceFunction& f, const PosetMap& t) {
  if (f.poset.get() != t.source.get()) throw std::invalid_argument("in_J: function not over source");
  auto s = fiber_sums(f, t);
  for (int y1 = 0; y1 < t.source->size(); ++y1)
    for (int y2 = y1 + 1; y2 < t.source->size(); ++y2)
      if (t.map[y1] == t.map[y2] && s[y1] != s[y2]) return false;
  return true;
}

IncidenceFunction pushforward_incidence(const PosetMap& t, const IncidenceFunction& f) {
  if (!in_J(f, t)) throw std::invalid_argument("pushforward_incidence: function is not in J(P)");
  auto s = fiber_sums(f, t);
  // pick a fiber representative for every target element
  std::vector<int> rep(t.target->size(), -1);
  for (int x = 0; x < t.source->size(); ++x)
    if (rep[t.map[x]] < 0) rep[t.map[x]] = x;
  for (int y = 0; y < t.target->size(); ++y)
    if (rep[y] < 0) throw std::invalid_argument("pushforward_incidence: map is not surjective");
  IncidenceFunction g{t.target, std::vector<Rat>(t.target->pairs().size(), 0)};
  for (size_t i = 0; i < t.target->pairs().size(); ++i) {
    auto [xp, yp] = t.target->pairs()[i];
    g.values[i] = s[rep[yp]][xp];
  }
  return g;
}

namespace {

bool extend_iso(const Poset& p, const std::vector<int>& a, const std::vector<int>& b,
                const std::vector<int>& tau, std::vector<int>& match, std::vector<char>& used,
                size_t k) {
  if (k == a.size()) return true;
  int x = a[k];
  for (size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    int y = b[j];
    if (tau[x] != tau[y]) continue;
    bool ok = true;
    for (size_t i = 0; i < k && ok; ++i) {
      int ym = b[match[i]];
      if (p.leq(a[i], x) != p.leq(ym, y)) ok = false;
      if (p.leq(x, a[i]) != p.leq(y, ym)) ok = false;
    }
    if (!ok) continue;
    match[k] = int(j);
    used[j] = 1;
    if (extend_iso(p, a, b, tau, match, used, k + 1)) return true;
    used[j] = 0;
  }
  return false;
}

}  // namespace

bool check_club(const PosetMap& t, int interval_cap) {
  const Poset& p = *t.source;
  if (!p.has_bottom()) throw std::invalid_argument("check_club: source has no bottom element");
  int bot = p.bottom();
  for (int y1 = 0; y1 < p.size(); ++y1)
    for (int y2 = y1 + 1; y2 < p.size(); ++y2) {
      if (t.map[y1] != t.map[y2]) continue;
      auto a = (p.up_set(bot) & p.down_set(y1)).bits();
      auto b = (p.up_set(bot) & p.down_set(y2)).bits();
      if (int(a.size()) > interval_cap || int(b.size()) > interval_cap)
        throw CapExceeded("check_club: interval exceeds element cap");
      if (a.size() != b.size()) return false;
      // order candidates by depth to prune early
      std::sort(a.begin(), a.end(),
                [&](int u, int v) { return p.down_set(u).count() < p.down_set(v).count(); });
      std::vector<int> match(a.size(), -1);
      std::vector<char> used(b.size(), 0);
      if (!extend_iso(p, a, b, t.map, match, used, 0)) return false;
    }
  return true;
}

Rat euler_char(PosetPtr p) {
  if (!p->has_bottom()) throw std::invalid_argument("euler_char: poset has no bottom");
  int t = p->top();
  if (t < 0) throw std::invalid_argument("euler_char: poset has no top");
  // chi recursion for the single needed value
  std::vector<Rat> chi(p->size(), 0);
  int bot = p->bottom();
  for (int y : p->linear_extension()) {
    if (y == bot) {
      chi[y] = 1;
      continue;
    }
    Rat s = 0;
    for (int z : p->down_set(y).bits())
      if (z != y) s += chi[z];
    chi[y] = -s;
  }
  return chi[t];
}

std::string poset_to_json(const Poset& p) {
  json j;
  j["elements"] = json::array();
  for (int i = 0; i < p.size(); ++i) j["elements"].push_back(p.id(i));
  j["leq"] = json::array();
  for (auto [x, y] : p.pairs())
    if (x != y) j["leq"].push_back({p.id(x), p.id(y)});
  if (p.has_bottom()) j["bottom"] = p.id(p.bottom());
  return j.dump();
}

PosetPtr poset_from_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<std::string> ids = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto& e : j.at("leq")) rel.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  std::optional<std::string> bottom;
  if (j.contains("bottom")) bottom = j.at("bottom").get<std::string>();
  return std::make_shared<Poset>(Poset::make(std::move(ids), rel, bottom));
}

std::string incidence_to_json(const IncidenceFunction& f) {
  json j;
  j["pairs"] = json::array();
  const Poset& p = *f.poset;
  for (size_t i = 0; i < p.pairs().size(); ++i) {
    auto [x, y] = p.pairs()[i];
    j["pairs"].push_back({p.id(x), p.id(y), rat_to_string(f.values[i])});
  }
  return j.dump();
}

IncidenceFunction incidence_from_json(PosetPtr p, const std::string& text) {
  json j = json::parse(text);
  IncidenceFunction f{p, std::vector<Rat>(p->pairs().size(), 0)};
  size_t seen = 0;
  for (const auto& e : j.at("pairs")) {
    int x = p->index(e.at(0).get<std::string>());
    int y = p->index(e.at(1).get<std::string>());
    f.at(x, y) = rat_from_string(e.at(2).get<std::string>());
    ++seen;
  }
  if (seen != p->pairs().size())
    throw std::invalid_argument("incidence function must cover every comparable pair");
  return f;
}

}  // namespace modhecke
