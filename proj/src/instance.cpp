#include "modhecke/instance.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace modhecke {

namespace {

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int val_p(int x, int p, int k) {  // p-adic valuation in Z/p^k, val(0) = k
  if (x == 0) return k;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int inv_unit(int u, int mod) {  // inverse of a unit mod p^k
  long r = 1, b = u % mod;
  for (int i = 0; i < mod; ++i) {
    if (b * r % mod == 1) return int(r);
    r = r * b % mod;
  }
  throw std::logic_error("not a unit");
}

std::vector<int> conjugate_partition(const std::vector<int>& parts) {
  std::vector<int> c;
  if (parts.empty()) return c;
  c.resize(parts[0], 0);
  for (int part : parts)
    for (int j = 0; j < part; ++j) ++c[j];
  return c;
}

}  // namespace

int IsoType::sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string IsoType::str() const {
  if (parts.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ',';
    os << parts[i];
  }
  return os.str();
}

IsoType IsoType::parse(const std::string& s, Kind kind) {
  IsoType t;
  if (s.empty() || s == "0") return t;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) t.parts.push_back(std::stoi(tok));
  for (size_t i = 0; i < t.parts.size(); ++i) {
    if (t.parts[i] < 1) throw std::invalid_argument("type parts must be positive: " + s);
    if (i && t.parts[i] > t.parts[i - 1])
      throw std::invalid_argument("type parts must be weakly decreasing: " + s);
  }
  if (kind == Kind::sets && t.parts.size() > 1)
    throw std::invalid_argument("set types are single integers: " + s);
  return t;
}

bool IsoType::operator<(const IsoType& o) const {
  if (sum() != o.sum()) return sum() < o.sum();
  return parts < o.parts;
}

Instance Instance::make_sets(int n) {
  if (n < 0 || n > 63) throw std::invalid_argument("sets instance needs 0 <= n <= 63");
  Instance inst;
  inst.kind = Kind::sets;
  inst.n = n;
  inst.num_codes = n;
  return inst;
}

Instance Instance::make_chain_ring(int p, int k, int n) {
  if (p < 2 || k < 1 || n < 1) throw std::invalid_argument("chain-ring instance needs p >= 2, k >= 1, n >= 1");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("p must be prime");
  Instance inst;
  inst.kind = Kind::chain_ring;
  inst.p = p;
  inst.k = k;
  inst.n = n;
  inst.mod = int(ipow(p, k));
  long codes = ipow(inst.mod, n);
  if (codes > 1024) throw CapExceeded("ambient module larger than 1024 elements");
  inst.num_codes = int(codes);

  inst.add_table_.assign(size_t(codes) * codes, 0);
  inst.pmul_.assign(codes, 0);
  inst.order_exp_.assign(codes, 0);
  for (int a = 0; a < codes; ++a) {
    std::vector<int> da = inst.decode(a);
    for (int b = 0; b <= a; ++b) {
      std::vector<int> d = inst.decode(b);
      for (int i = 0; i < n; ++i) d[i] = (d[i] + da[i]) % inst.mod;
      int s = inst.encode(d);
      inst.add_table_[size_t(a) * codes + b] = s;
      inst.add_table_[size_t(b) * codes + a] = s;
    }
    std::vector<int> dp = da;
    for (int i = 0; i < n; ++i) dp[i] = dp[i] * p % inst.mod;
    inst.pmul_[a] = inst.encode(dp);
  }
  for (int a = 0; a < codes; ++a) {
    int j = 0, x = a;
    while (x != 0) {
      x = inst.pmul_[x];
      ++j;
    }
    inst.order_exp_[a] = j;
  }
  return inst;
}

std::string Instance::describe() const {
  std::ostringstream os;
  if (kind == Kind::sets)
    os << "sets(n=" << n << ")";
  else
    os << "chain(p=" << p << ",k=" << k << ",n=" << n << ")";
  return os.str();
}

int Instance::add(int a, int b) const { return add_table_[size_t(a) * num_codes + b]; }

int Instance::neg(int a) const {
  std::vector<int> d = decode(a);
  for (int& x : d) x = (mod - x) % mod;
  return encode(d);
}

int Instance::smul(int c, int a) const {
  c = ((c % mod) + mod) % mod;
  int r = 0;
  while (c-- > 0) r = add(r, a);
  return r;
}

int Instance::order_exp(int a) const { return order_exp_[a]; }

std::vector<int> Instance::decode(int code) const {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = code % mod;
    code /= mod;
  }
  return d;
}

int Instance::encode(const std::vector<int>& digits) const {
  int code = 0;
  for (int i = n - 1; i >= 0; --i) code = code * mod + digits[i] % mod;
  return code;
}

// Canonical echelon generating rows from the full element set: for each
// column, the lexicographically least element supported there with minimal
// pivot valuation, then entries above later pivots reduced mod the pivot.
std::vector<std::vector<int>> Instance::howell(std::vector<std::vector<int>> rows) const {
  // close the rows to the full element set first, so canonicity depends only
  // on the span
  Bitset elems(num_codes);
  elems.set(0);
  for (const auto& r : rows) {
    int g = encode(r);
    int ord = int(ipow(p, order_exp(g)));
    std::vector<int> cur = elems.bits();
    for (int c = 1, m = g; c < ord; ++c, m = add(m, g))
      for (int s : cur) elems.set(add(s, m));
  }

  std::vector<std::vector<int>> dig;
  for (int e : elems.bits()) dig.push_back(decode(e));

  std::vector<std::vector<int>> out;
  std::vector<int> pivcol, pivval;
  for (int c = 0; c < n; ++c) {
    const std::vector<int>* best = nullptr;
    int bestv = k;
    for (const auto& d : dig) {
      bool prefix_zero = true;
      for (int i = 0; i < c; ++i)
        if (d[i] != 0) {
          prefix_zero = false;
          break;
        }
      if (!prefix_zero || d[c] == 0) continue;
      int v = val_p(d[c], p, k);
      if (v > bestv) continue;
      // normalize candidates to pivot entry p^v before comparing
      if (v < bestv) {
        bestv = v;
        best = nullptr;
      }
      if (d[c] == int(ipow(p, v)) && (!best || d < *best)) best = &d;
    }
    if (best) {
      out.push_back(*best);
      pivcol.push_back(c);
      pivval.push_back(int(ipow(p, bestv)));
    }
  }
  // reduce entries above each pivot into [0, pivot)
  for (size_t r = 0; r < out.size(); ++r)
    for (size_t s = r + 1; s < out.size(); ++s) {
      int c = pivcol[s];
      int q = out[r][c] / pivval[s];
      if (q)
        for (int i = 0; i < n; ++i) out[r][i] = (out[r][i] - q * out[s][i] % mod + mod * mod) % mod;
    }
  return out;
}

Subobject Instance::make_sub_from_elements(Bitset elems) const {
  Subobject s;
  s.elems = std::move(elems);
  if (kind == Kind::chain_ring) {
    if (!s.elems.test(0)) throw std::invalid_argument("submodule must contain 0");
    std::vector<std::vector<int>> seed;
    for (int e : s.elems.bits()) seed.push_back(decode(e));
    s.gens = howell(seed);
    // the span size is the product over echelon rows of mod / pivot
    long sz = 1;
    for (const auto& r : s.gens) {
      int c = 0;
      while (c < n && r[size_t(c)] == 0) ++c;
      sz *= mod / r[size_t(c)];
    }
    if (sz != s.elems.count()) throw std::invalid_argument("element set is not a submodule");
    // Smith normal form type of the generating matrix
    s.type = iso_type_of_gens(s.gens);
  } else {
    s.type.parts.clear();
    if (s.elems.count() > 0) s.type.parts.push_back(s.elems.count());
  }
  s.key.push_back(s.elems.count());
  for (int e : s.elems.bits()) s.key.push_back(e);
  return s;
}

IsoType Instance::iso_type_of_gens(const std::vector<std::vector<int>>& gens) const {
  // Smith normal form over Z/p^k: repeatedly move a minimal-valuation entry to
  // the pivot and clear its row and column.
  std::vector<std::vector<int>> m = gens;
  IsoType t;
  size_t top = 0;
  while (true) {
    int br = -1, bc = -1, bv = k;
    for (size_t r = top; r < m.size(); ++r)
      for (int c = 0; c < n; ++c)
        if (m[r][c] != 0) {
          int v = val_p(m[r][c], p, k);
          if (v < bv) {
            bv = v;
            br = int(r);
            bc = c;
          }
        }
    if (br < 0) break;
    std::swap(m[top], m[size_t(br)]);
    int piv = int(ipow(p, bv));
    int u = m[top][bc] / piv;  // unit part
    int ui = inv_unit(u, mod);
    for (int c = 0; c < n; ++c) m[top][c] = m[top][c] * ui % mod;
    for (size_t r = top + 1; r < m.size(); ++r) {
      int q = m[r][bc] / piv;  // divisible: bv is the minimal valuation
      if (q)
        for (int c = 0; c < n; ++c) m[r][c] = ((m[r][c] - q * m[top][c]) % mod + mod) % mod;
    }
    // clearing the pivot row's other columns does not change the remaining
    // rows, so just zero it
    for (int c = 0; c < n; ++c) m[top][c] = 0;
    m[top][bc] = piv;
    t.parts.push_back(k - bv);
    ++top;
  }
  std::sort(t.parts.begin(), t.parts.end(), std::greater<int>());
  return t;
}

Subobject Instance::make_sub_from_gens(const std::vector<std::vector<int>>& rows) const {
  if (kind == Kind::sets) throw std::logic_error("generators only apply to chain-ring instances");
  Bitset elems(num_codes);
  elems.set(0);
  for (const auto& r : rows) {
    int g = encode(r);
    int ord = int(ipow(p, order_exp(g)));
    std::vector<int> cur = elems.bits();
    for (int c = 1, m = g; c < ord; ++c, m = add(m, g))
      for (int s : cur) elems.set(add(s, m));
  }
  return make_sub_from_elements(std::move(elems));
}

Subobject Instance::zero_sub() const {
  Bitset e(num_codes);
  if (kind == Kind::chain_ring) e.set(0);
  return make_sub_from_elements(std::move(e));
}

Subobject Instance::full_sub() const {
  Bitset e(num_codes);
  for (int i = 0; i < num_codes; ++i) e.set(i);
  return make_sub_from_elements(std::move(e));
}

IsoType Instance::ambient_type() const {
  IsoType t;
  if (kind == Kind::sets) {
    if (n > 0) t.parts.push_back(n);
  } else {
    t.parts.assign(size_t(n), k);
  }
  return t;
}

IsoType Instance::iso_type(const Subobject& x) const { return x.type; }

Subobject Instance::meet(const Subobject& x, const Subobject& y) const {
  return make_sub_from_elements(x.elems & y.elems);
}

Subobject Instance::join(const Subobject& x, const Subobject& y) const {
  if (kind == Kind::sets) return make_sub_from_elements(x.elems | y.elems);
  Bitset e(num_codes);
  for (int a : x.elems.bits())
    for (int b : y.elems.bits()) e.set(add(a, b));
  return make_sub_from_elements(std::move(e));
}

IsoType Instance::type_from_counts(const std::vector<long>& counts) const {
  // counts[j] = number of elements killed by p^j in the module, j = 0..k
  std::vector<int> logs(counts.size());
  for (size_t j = 0; j < counts.size(); ++j) {
    long c = counts[j];
    int e = 0;
    while (c > 1) {
      if (c % p != 0) throw std::logic_error("annihilator count not a power of p");
      c /= p;
      ++e;
    }
    logs[j] = e;
  }
  std::vector<int> conj;
  for (size_t j = 1; j < logs.size(); ++j) conj.push_back(logs[j] - logs[j - 1]);
  for (size_t j = 1; j < conj.size(); ++j)
    if (conj[j] > conj[j - 1]) throw std::logic_error("annihilator counts not a module profile");
  IsoType t;
  t.parts = conjugate_partition(conj);
  std::sort(t.parts.begin(), t.parts.end(), std::greater<int>());
  return t;
}

IsoType Instance::quotient_type(const Subobject& x, const Subobject& y) const {
  if (!sub_leq(x, y)) throw std::invalid_argument("quotient_type needs x <= y");
  IsoType t;
  if (kind == Kind::sets) {
    int m = y.elems.count() - x.elems.count();
    if (m > 0) t.parts.push_back(m);
    return t;
  }
  std::vector<long> counts(size_t(k) + 1, 0);
  long xs = x.elems.count();
  for (int j = 0; j <= k; ++j) {
    long c = 0;
    for (int v : y.elems.bits()) {
      int w = v;
      for (int i = 0; i < j; ++i) w = pmul_[w];
      if (x.elems.test(w)) ++c;
    }
    if (c % xs != 0) throw std::logic_error("quotient count not divisible");
    counts[size_t(j)] = c / xs;
  }
  return type_from_counts(counts);
}

std::vector<Subobject> Instance::enumerate_submodules(const Subobject& ambient, long cap) const {
  std::vector<Subobject> out;
  if (kind == Kind::sets) {
    std::vector<int> pts = ambient.elems.bits();
    int m = int(pts.size());
    if (m > 30 || (1L << m) > cap) throw CapExceeded("too many subsets");
    for (long msk = 0; msk < (1L << m); ++msk) {
      Bitset e(num_codes);
      for (int i = 0; i < m; ++i)
        if ((msk >> i) & 1) e.set(pts[size_t(i)]);
      out.push_back(make_sub_from_elements(std::move(e)));
    }
  } else {
    std::unordered_map<Bitset, int, BitsetHash> seen;
    std::vector<Bitset> queue;
    Bitset zero(num_codes);
    zero.set(0);
    seen.emplace(zero, 0);
    queue.push_back(zero);
    std::vector<int> amb = ambient.elems.bits();
    for (size_t head = 0; head < queue.size(); ++head) {
      Bitset s = queue[head];
      std::vector<int> cur = s.bits();
      for (int v : amb) {
        if (s.test(v)) continue;
        Bitset t = s;
        int ord = int(ipow(p, order_exp(v)));
        for (int c = 1, m = v; c < ord; ++c, m = add(m, v))
          for (int e : cur) t.set(add(e, m));
        if (seen.emplace(t, int(queue.size())).second) {
          if (long(queue.size()) + 1 > cap) throw CapExceeded("too many submodules");
          queue.push_back(std::move(t));
        }
      }
    }
    out.reserve(queue.size());
    for (const Bitset& b : queue) out.push_back(make_sub_from_elements(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<Subobject>& Instance::lattice() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->lattice.empty()) {
    cache_->lattice = enumerate_submodules(full_sub());
    for (size_t i = 0; i < cache_->lattice.size(); ++i)
      cache_->lattice_index.emplace(cache_->lattice[i].elems, int(i));
  }
  return cache_->lattice;
}

int Instance::lattice_index(const Bitset& elems) const {
  lattice();
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->lattice_index.find(elems);
  return it == cache_->lattice_index.end() ? -1 : it->second;
}

bool Instance::type_leq(const IsoType& a, const IsoType& b) const {
  std::vector<int> ca = conjugate_partition(a.parts), cb = conjugate_partition(b.parts);
  if (ca.size() > cb.size()) return false;
  for (size_t j = 0; j < ca.size(); ++j)
    if (ca[j] > cb[j]) return false;
  return true;
}

IsoType Instance::dsum(const IsoType& a, const IsoType& b) const {
  IsoType t;
  if (kind == Kind::sets) {
    int m = a.sum() + b.sum();
    if (m > 0) t.parts.push_back(m);
    return t;
  }
  t.parts = a.parts;
  t.parts.insert(t.parts.end(), b.parts.begin(), b.parts.end());
  std::sort(t.parts.begin(), t.parts.end(), std::greater<int>());
  return t;
}

std::vector<IsoType> Instance::types_leq(const IsoType& b) const {
  std::vector<IsoType> out;
  if (kind == Kind::sets) {
    for (int m = 0; m <= b.sum(); ++m) {
      IsoType t;
      if (m > 0) t.parts.push_back(m);
      out.push_back(t);
    }
    return out;
  }
  int len = b.length(), maxpart = b.parts.empty() ? 0 : b.parts[0];
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int pos, int hi) {
    IsoType t;
    t.parts = parts;
    if (type_leq(t, b)) out.push_back(t);
    if (pos >= len) return;
    for (int v = 1; v <= hi; ++v) {
      parts.push_back(v);
      rec(pos + 1, v);
      parts.pop_back();
    }
  };
  rec(0, maxpart);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Instance::type_realizable(const IsoType& t) const {
  return type_leq(t, ambient_type());
}

Subobject Instance::reference(const IsoType& t) const {
  if (!type_realizable(t)) throw std::invalid_argument("type does not embed in the ambient object: " + t.str());
  if (kind == Kind::sets) {
    Bitset e(num_codes);
    for (int i = 0; i < t.sum(); ++i) e.set(i);
    return make_sub_from_elements(std::move(e));
  }
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < t.length(); ++i) {
    std::vector<int> r(size_t(n), 0);
    r[size_t(i)] = int(ipow(p, k - t.parts[size_t(i)]));
    rows.push_back(std::move(r));
  }
  return make_sub_from_gens(rows);
}

namespace {
std::vector<int> unit_generators(int p, int k, int mod) {
  if (p == 2) {
    if (k == 1) return {};
    if (k == 2) return {3};
    return {mod - 1, 5};
  }
  // odd p: the unit group is cyclic; find a generator
  long target = long(mod) / p * (p - 1);
  for (int g = 2; g < mod; ++g) {
    if (g % p == 0) continue;
    long o = 1, x = g;
    while (x != 1) {
      x = x * g % mod;
      ++o;
    }
    if (o == target) return {g};
  }
  throw std::logic_error("no unit group generator found");
}
}  // namespace

std::vector<Automorphism> Instance::aut_generators() const {
  std::vector<Automorphism> out;
  if (kind == Kind::sets) {
    if (n >= 2) {
      std::vector<int> tr(static_cast<size_t>(n)), cyc(static_cast<size_t>(n));
      std::iota(tr.begin(), tr.end(), 0);
      std::swap(tr[0], tr[1]);
      for (int i = 0; i < n; ++i) cyc[size_t(i)] = (i + 1) % n;
      out.push_back({{}, tr});
      out.push_back({{}, cyc});
    }
    return out;
  }
  std::vector<std::vector<std::vector<int>>> mats;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<std::vector<int>> m(size_t(n), std::vector<int>(size_t(n), 0));
      for (int d = 0; d < n; ++d) m[size_t(d)][size_t(d)] = 1;
      m[size_t(i)][size_t(j)] = 1;  // transvection x_i += x_j
      mats.push_back(std::move(m));
    }
  for (int u : unit_generators(p, k, mod)) {
    std::vector<std::vector<int>> m(size_t(n), std::vector<int>(size_t(n), 0));
    for (int d = 0; d < n; ++d) m[size_t(d)][size_t(d)] = 1;
    m[0][0] = u;
    mats.push_back(std::move(m));
  }
  for (auto& m : mats) {
    Automorphism a;
    a.matrix = m;
    a.perm.resize(size_t(num_codes));
    for (int c = 0; c < num_codes; ++c) {
      std::vector<int> d = decode(c), r(size_t(n), 0);
      for (int i = 0; i < n; ++i) {
        long acc = 0;
        for (int j = 0; j < n; ++j) acc += long(m[size_t(i)][size_t(j)]) * d[size_t(j)];
        r[size_t(i)] = int(acc % mod);
      }
      a.perm[size_t(c)] = encode(r);
    }
    out.push_back(std::move(a));
  }
  return out;
}

// Generators of Aut(reference(nu)) as element maps over codes of F (identity
// outside the reference object would be wrong in general; entries are -1
// there and callers extend by identity when a full permutation is needed).
std::vector<std::vector<int>> Instance::aut_generator_maps_of_ref(const IsoType& nu) const {
  Subobject y = reference(nu);
  std::vector<std::vector<int>> maps;
  if (kind == Kind::sets) {
    int m = nu.sum();
    if (m < 2) return maps;
    std::vector<int> tr(size_t(num_codes), -1), cyc(size_t(num_codes), -1);
    for (int i = 0; i < m; ++i) {
      tr[size_t(i)] = i;
      cyc[size_t(i)] = (i + 1) % m;
    }
    std::swap(tr[0], tr[1]);
    maps.push_back(std::move(tr));
    maps.push_back(std::move(cyc));
    return maps;
  }
  int m = nu.length();
  if (m == 0) return maps;
  bool rect = true;
  for (int part : nu.parts) rect = rect && part == nu.parts[0];
  if (rect) {
    int c = nu.parts[0];
    int cmod = int(ipow(p, c));
    int q = int(ipow(p, k - c));  // reference rows are q * e_i
    std::vector<std::vector<std::vector<int>>> mats;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        std::vector<std::vector<int>> mm(size_t(m), std::vector<int>(size_t(m), 0));
        for (int d = 0; d < m; ++d) mm[size_t(d)][size_t(d)] = 1;
        mm[size_t(i)][size_t(j)] = 1;
        mats.push_back(std::move(mm));
      }
    for (int u : unit_generators(p, c, cmod)) {
      std::vector<std::vector<int>> mm(size_t(m), std::vector<int>(size_t(m), 0));
      for (int d = 0; d < m; ++d) mm[size_t(d)][size_t(d)] = 1;
      mm[0][0] = u;
      mats.push_back(std::move(mm));
    }
    for (const auto& mm : mats) {
      std::vector<int> map(size_t(num_codes), -1);
      for (int e : y.elems.bits()) {
        std::vector<int> d = decode(e), a(static_cast<size_t>(m)), r(size_t(n), 0);
        for (int i = 0; i < m; ++i) a[size_t(i)] = d[size_t(i)] / q;
        for (int i = 0; i < m; ++i) {
          long acc = 0;
          for (int j = 0; j < m; ++j) acc += long(mm[size_t(i)][size_t(j)]) * a[size_t(j)];
          r[size_t(i)] = int(acc % cmod) * q;
        }
        map[size_t(e)] = encode(r);
      }
      maps.push_back(std::move(map));
    }
    return maps;
  }
  // non-free reference: enumerate the full automorphism group directly
  if (y.elems.count() > 4096) throw CapExceeded("automorphism search cap");
  return all_isos(y, y);
}

const Instance::ArrowTable& Instance::arrow_table(const IsoType& nu) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->arrow_tables.find(nu.parts);
    if (it != cache_->arrow_tables.end()) return it->second;
  }
  Subobject y = reference(nu);
  std::vector<Subobject> subs = enumerate_submodules(y);
  std::unordered_map<Bitset, int, BitsetHash> idx;
  for (size_t i = 0; i < subs.size(); ++i) idx.emplace(subs[i].elems, int(i));

  PermutationAction act;
  act.degree = int(subs.size());
  for (const auto& g : aut_generator_maps_of_ref(nu)) {
    std::vector<int> perm(subs.size());
    for (size_t i = 0; i < subs.size(); ++i) perm[i] = idx.at(apply_map(g, subs[i].elems));
    act.generators.push_back(std::move(perm));
  }
  std::vector<std::vector<int>> classes = orbits(act);

  ArrowTable table;
  std::vector<int> class_arrow(classes.size());
  std::vector<size_t> order(classes.size());
  std::iota(order.begin(), order.end(), size_t(0));
  // subs are sorted canonically, so the minimal index is the minimal key
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const Subobject &ra = subs[size_t(classes[a][0])], &rb = subs[size_t(classes[b][0])];
    if (!(ra.type == rb.type)) return ra.type < rb.type;
    return ra.key < rb.key;
  });
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const std::vector<int>& cls = classes[order[pos]];
    ArrowType a;
    a.source = subs[size_t(cls[0])].type;
    a.target = nu;
    a.orbit_rep = subs[size_t(cls[0])];
    a.orbit_size = long(cls.size());
    table.arrows.push_back(std::move(a));
    for (int i : cls) table.orbit_of.emplace(subs[size_t(i)].elems, int(pos));
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->arrow_tables.emplace(nu.parts, std::move(table)).first->second;
}

std::vector<ArrowType> Instance::arrow_types(const IsoType& lam, const IsoType& nu) const {
  std::vector<ArrowType> out;
  for (const ArrowType& a : arrows_into(nu))
    if (a.source == lam) out.push_back(a);
  return out;
}

const std::vector<ArrowType>& Instance::arrows_into(const IsoType& nu) const {
  return arrow_table(nu).arrows;
}

int Instance::arrow_index_in_ref(const IsoType& nu, const Bitset& sub_elems) const {
  const ArrowTable& t = arrow_table(nu);
  auto it = t.orbit_of.find(sub_elems);
  if (it == t.orbit_of.end()) throw std::invalid_argument("not a subobject of the reference object");
  return it->second;
}

int Instance::arrow_label(const Subobject& sub, const Subobject& x) const {
  Subobject ref = reference(x.type);
  std::vector<int> psi = find_iso(x, ref);
  if (psi.empty()) throw std::logic_error("no isomorphism onto the reference object");
  return arrow_index_in_ref(x.type, apply_map(psi, sub.elems));
}

Bitset Instance::apply_map(const std::vector<int>& element_map, const Bitset& s) const {
  Bitset r(s.size());
  for (int e : s.bits()) {
    int im = element_map[size_t(e)];
    if (im < 0) throw std::logic_error("element map undefined on the set");
    r.set(im);
  }
  return r;
}

std::vector<int> Instance::minimal_generators(const Subobject& x) const {
  if (kind == Kind::sets) return x.elems.bits();
  std::vector<int> gens;
  Bitset span(num_codes);
  span.set(0);
  long span_size = 1;
  for (int part : x.type.parts) {
    long want = span_size * ipow(p, part);
    bool found = false;
    for (int v : x.elems.bits()) {
      if (order_exp(v) != part || span.test(v)) continue;
      Bitset t = span;
      std::vector<int> cur = span.bits();
      int ord = int(ipow(p, part));
      for (int c = 1, m = v; c < ord; ++c, m = add(m, v))
        for (int e : cur) t.set(add(e, m));
      if (t.count() == want) {
        gens.push_back(v);
        span = std::move(t);
        span_size = want;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no minimal generator tuple found");
  }
  return gens;
}

void Instance::all_isos_impl(const Subobject& x, const Subobject& y, bool first_only,
                             std::vector<std::vector<int>>& out) const {
  if (!(x.type == y.type)) return;
  if (kind == Kind::sets) {
    std::vector<int> xs = x.elems.bits(), ys = y.elems.bits();
    std::sort(ys.begin(), ys.end());
    do {
      std::vector<int> map(size_t(num_codes), -1);
      for (size_t i = 0; i < xs.size(); ++i) map[size_t(xs[i])] = ys[i];
      out.push_back(std::move(map));
      if (first_only) return;
    } while (std::next_permutation(ys.begin(), ys.end()));
    return;
  }
  std::vector<int> gens = minimal_generators(x);
  int levels = int(gens.size());
  std::vector<std::vector<int>> cands;
  cands.resize(size_t(levels));
  for (int i = 0; i < levels; ++i)
    for (int w : y.elems.bits())
      if (order_exp(w) <= x.type.parts[size_t(i)]) cands[size_t(i)].push_back(w);

  std::vector<int> map(size_t(num_codes), -1);
  std::vector<char> image_seen(size_t(num_codes), 0);
  std::vector<int> dom_span = {0};
  map[0] = 0;
  image_seen[0] = 1;
  bool stop = false;

  std::function<void(int)> rec = [&](int level) {
    if (stop) return;
    if (level == levels) {
      out.push_back(map);
      if (first_only) stop = true;
      return;
    }
    int ord = int(ipow(p, x.type.parts[size_t(level)]));
    int g = gens[size_t(level)];
    size_t base = dom_span.size();
    for (int w : cands[size_t(level)]) {
      bool ok = true;
      std::vector<std::pair<int, int>> added;
      for (int c = 1, dg = g, iw = w; c < ord && ok; ++c, dg = add(dg, g), iw = add(iw, w))
        for (size_t s = 0; s < base; ++s) {
          int d = add(dom_span[s], dg);
          int im = add(map[size_t(dom_span[s])], iw);
          if (image_seen[size_t(im)]) {
            ok = false;
            break;
          }
          image_seen[size_t(im)] = 1;
          map[size_t(d)] = im;
          added.emplace_back(d, im);
        }
      if (ok) {
        for (const auto& a : added) dom_span.push_back(a.first);
        rec(level + 1);
        dom_span.resize(base);
      }
      for (const auto& a : added) {
        image_seen[size_t(a.second)] = 0;
        map[size_t(a.first)] = -1;
      }
      if (stop) return;
    }
  };
  rec(0);
}

std::vector<int> Instance::find_iso(const Subobject& x, const Subobject& y) const {
  std::vector<std::vector<int>> out;
  all_isos_impl(x, y, true, out);
  return out.empty() ? std::vector<int>() : std::move(out[0]);
}

std::vector<std::vector<int>> Instance::all_isos(const Subobject& x, const Subobject& y) const {
  std::vector<std::vector<int>> out;
  all_isos_impl(x, y, false, out);
  return out;
}

const std::vector<std::vector<int>>& Instance::aut_elements(const IsoType& nu, long cap) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->aut_groups.find(nu.parts);
    if (it != cache_->aut_groups.end()) return it->second;
  }
  PermutationAction act;
  act.degree = std::max(num_codes, 1);
  for (auto g : aut_generator_maps_of_ref(nu)) {
    for (int i = 0; i < act.degree; ++i)
      if (g[size_t(i)] < 0) g[size_t(i)] = i;  // extend by identity off the reference object
    act.generators.push_back(std::move(g));
  }
  std::vector<std::vector<int>> elems = group_elements(act, cap);
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->aut_groups.emplace(nu.parts, std::move(elems)).first->second;
}

bool Instance::is_symmetric_type(const IsoType& phi, long aut_cap) const {
  Subobject y = reference(phi);
  std::vector<Subobject> subs = enumerate_submodules(y);
  const std::vector<std::vector<int>>& auts = aut_elements(phi, aut_cap);
  std::unordered_map<Bitset, int, BitsetHash> idx;
  for (size_t i = 0; i < subs.size(); ++i) idx.emplace(subs[i].elems, int(i));
  int full = idx.at(y.elems);

  // bucket the automorphisms by where they send each subobject
  std::vector<std::map<int, std::vector<int>>> bucket(subs.size());
  for (size_t g = 0; g < auts.size(); ++g)
    for (size_t a = 0; a < subs.size(); ++a)
      bucket[a][idx.at(apply_map(auts[g], subs[a].elems))].push_back(int(g));

  for (size_t a = 0; a < subs.size(); ++a) {
    std::vector<int> dom = subs[a].elems.bits();
    for (size_t b = 0; b < subs.size(); ++b) {
      if (!(subs[a].type == subs[b].type)) continue;
      if (int(a) == full && int(b) == full) continue;  // automorphisms extend themselves
      auto it = bucket[a].find(int(b));
      std::vector<std::vector<int>> extendable;
      if (it != bucket[a].end())
        for (int g : it->second) {
          std::vector<int> sig(dom.size());
          for (size_t i = 0; i < dom.size(); ++i) sig[i] = auts[size_t(g)][size_t(dom[i])];
          extendable.push_back(std::move(sig));
        }
      std::sort(extendable.begin(), extendable.end());
      for (const auto& iso : all_isos(subs[a], subs[b])) {
        std::vector<int> sig(dom.size());
        for (size_t i = 0; i < dom.size(); ++i) sig[i] = iso[size_t(dom[i])];
        if (!std::binary_search(extendable.begin(), extendable.end(), sig)) return false;
      }
    }
  }
  return true;
}

SymCoupleReport Instance::is_symmetric_couple(const IsoType& Phi, const IsoType& phi,
                                              long aut_cap) const {
  SymCoupleReport rep;
  if (!type_leq(phi, Phi)) throw std::invalid_argument("need phi <= Phi");
  bool types_ok = is_symmetric_type(Phi, aut_cap) && is_symmetric_type(phi, aut_cap);

  Subobject y = reference(Phi);
  std::vector<Subobject> subs = enumerate_submodules(y);
  std::vector<const Subobject*> Xphi;
  for (const Subobject& s : subs)
    if (s.type == phi) Xphi.push_back(&s);
  std::vector<IsoType> down = types_leq(phi);

  rep.cond1 = true;
  std::vector<char> missing_any(down.size(), 0);
  for (const Subobject* f : Xphi) {
    std::vector<char> seen(down.size(), 0);
    for (const Subobject* f2 : Xphi) {
      IsoType t = make_sub_from_elements(f->elems & f2->elems).type;
      for (size_t i = 0; i < down.size(); ++i)
        if (down[i] == t) seen[i] = 1;
    }
    for (size_t i = 0; i < down.size(); ++i)
      if (!seen[i]) {
        rep.cond1 = false;
        missing_any[i] = 1;
      }
  }
  for (size_t i = 0; i < down.size(); ++i)
    if (missing_any[i]) rep.unrealized.push_back(down[i]);

  rep.cond2 = true;
  for (const Subobject* f : Xphi) {
    for (const Subobject& x : subs) {
      if (!type_leq(x.type, phi)) continue;
      IsoType lhs;
      if (kind == Kind::sets) {
        int m = x.elems.count() + f->elems.count() - (x.elems & f->elems).count();
        if (m > 0) lhs.parts.push_back(m);
      } else {
        // type of (x (+) f) / antidiagonal(x ^ f) from annihilator counts
        Bitset m = x.elems & f->elems;
        long ksz = m.count();
        std::vector<long> counts(size_t(k) + 1, 0);
        for (int j = 0; j <= k; ++j) {
          long c = 0;
          for (int a : x.elems.bits()) {
            int pa = a;
            for (int i = 0; i < j; ++i) pa = pmul_[pa];
            for (int b : f->elems.bits()) {
              int pb = b;
              for (int i = 0; i < j; ++i) pb = pmul_[pb];
              if (m.test(pa) && pb == neg(pa)) ++c;
            }
          }
          if (c % ksz != 0) throw std::logic_error("external sum count not divisible");
          counts[size_t(j)] = c / ksz;
        }
        lhs = type_from_counts(counts);
      }
      IsoType rhs = kind == Kind::sets
                        ? make_sub_from_elements(x.elems | f->elems).type
                        : join(x, *f).type;
      if (!(lhs == rhs)) {
        rep.cond2 = false;
        break;
      }
    }
    if (!rep.cond2) break;
  }
  rep.symmetric = types_ok && rep.cond1 && rep.cond2;
  return rep;
}

}  // namespace modhecke
