#include "modhecke/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_set>

#include "modhecke/kernels.hpp"

namespace modhecke {

int Bitset::count() const {
  int c = 0;
  for (uint64_t x : w_) c += std::popcount(x);
  return c;
}

bool Bitset::is_subset_of(const Bitset& o) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

Bitset Bitset::operator&(const Bitset& o) const {
  Bitset r(nbits_);
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
  return r;
}

Bitset Bitset::operator|(const Bitset& o) const {
  Bitset r(nbits_);
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
  return r;
}

size_t Bitset::hash() const {
  size_t h = 1469598103934665603ull;
  for (uint64_t x : w_) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<int> Bitset::bits() const {
  std::vector<int> out;
  for (size_t i = 0; i < w_.size(); ++i) {
    uint64_t x = w_[i];
    while (x) {
      out.push_back(int(i * 64 + std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  ExactMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  ExactMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  return matmul_serial(*this, o);
}

ExactMatrix ExactMatrix::scaled(const Rat& s) const {
  ExactMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

bool ExactMatrix::is_zero() const {
  for (const Rat& x : a_)
    if (x != 0) return false;
  return true;
}

namespace {

// In-place reduction to canonical RREF; returns pivot columns.
std::vector<int> reduce(std::vector<std::vector<Rat>>& rows, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < int(rows.size()); ++c) {
    int p = -1;
    for (int i = r; i < int(rows.size()); ++i)
      if (rows[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[r], rows[p]);
    Rat inv = 1 / rows[r][c];
    for (int j = c; j < cols; ++j) rows[r][j] *= inv;
    for (int i = 0; i < int(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<std::vector<Rat>> to_rows(const ExactMatrix& m) {
  std::vector<std::vector<Rat>> rows(m.rows(), std::vector<Rat>(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
  return rows;
}

}  // namespace

ExactMatrix rref(const ExactMatrix& m) {
  auto rows = to_rows(m);
  reduce(rows, m.cols());
  ExactMatrix out(int(rows.size()), m.cols());
  for (int r = 0; r < int(rows.size()); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(r, c) = rows[r][c];
  return out;
}

int rank(const ExactMatrix& m) {
  auto rows = to_rows(m);
  return int(reduce(rows, m.cols()).size());
}

int rank_of_rows(const std::vector<std::vector<Rat>>& rows_in) {
  if (rows_in.empty()) return 0;
  auto rows = rows_in;
  return int(reduce(rows, int(rows_in[0].size())).size());
}

bool span_equal(const std::vector<std::vector<Rat>>& a, const std::vector<std::vector<Rat>>& b) {
  if (a.empty() && b.empty()) return true;
  auto ra = a, rb = b;
  int cols = int(a.empty() ? b[0].size() : a[0].size());
  reduce(ra, cols);
  reduce(rb, cols);
  return ra == rb;
}

bool in_span(const std::vector<Rat>& v, const std::vector<std::vector<Rat>>& basis) {
  auto rows = basis;
  int cols = int(v.size());
  int r0 = int(reduce(rows, cols).size());
  rows.push_back(v);
  return int(reduce(rows, cols).size()) == r0;
}

std::vector<std::vector<Rat>> span_intersect(const std::vector<std::vector<Rat>>& a,
                                             const std::vector<std::vector<Rat>>& b) {
  // Zassenhaus: reduce [A|A; B|0], rows with zero left block carry the
  // intersection in the right block.
  if (a.empty() || b.empty()) return {};
  int n = int(a[0].size());
  std::vector<std::vector<Rat>> rows;
  for (const auto& r : a) {
    std::vector<Rat> w(2 * n);
    for (int j = 0; j < n; ++j) w[j] = w[n + j] = r[j];
    rows.push_back(std::move(w));
  }
  for (const auto& r : b) {
    std::vector<Rat> w(2 * n);
    for (int j = 0; j < n; ++j) w[j] = r[j];
    rows.push_back(std::move(w));
  }
  reduce(rows, 2 * n);
  std::vector<std::vector<Rat>> inter;
  for (const auto& r : rows) {
    bool left_zero = true;
    for (int j = 0; j < n; ++j)
      if (r[j] != 0) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    std::vector<Rat> w(r.begin() + n, r.end());
    bool zero = std::all_of(w.begin(), w.end(), [](const Rat& x) { return x == 0; });
    if (!zero) inter.push_back(std::move(w));
  }
  reduce(inter, n);
  return inter;
}

SolveResult solve_in_span(const std::vector<std::vector<Rat>>& rows, const std::vector<Rat>& target) {
  SolveResult res;
  int k = int(rows.size());
  if (k == 0) {
    res.ok = std::all_of(target.begin(), target.end(), [](const Rat& x) { return x == 0; });
    return res;
  }
  int n = int(target.size());
  // Augment each row with coefficient bookkeeping, then eliminate.
  std::vector<std::vector<Rat>> work(k, std::vector<Rat>(n + k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) work[i][j] = rows[i][j];
    work[i][n + i] = 1;
  }
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < n && r < k; ++c) {
    int p = -1;
    for (int i = r; i < k; ++i)
      if (work[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(work[r], work[p]);
    Rat inv = 1 / work[r][c];
    for (int j = 0; j < n + k; ++j) work[r][j] *= inv;
    for (int i = 0; i < k; ++i) {
      if (i == r || work[i][c] == 0) continue;
      Rat f = work[i][c];
      for (int j = 0; j < n + k; ++j) work[i][j] -= f * work[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Rat> t = target;
  std::vector<Rat> coeffs(k, 0);
  for (int i = 0; i < int(pivots.size()); ++i) {
    Rat f = t[pivots[i]];
    if (f == 0) continue;
    for (int j = 0; j < n; ++j) t[j] -= f * work[i][j];
    for (int j = 0; j < k; ++j) coeffs[j] += f * work[i][n + j];
  }
  for (const Rat& x : t)
    if (x != 0) return res;
  res.ok = true;
  res.coeffs = std::move(coeffs);
  return res;
}

std::vector<std::vector<int>> orbits(const PermutationAction& action) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(action.degree, 0);
  for (int s = 0; s < action.degree; ++s) {
    if (seen[s]) continue;
    std::vector<int> orb;
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      orb.push_back(x);
      for (const auto& g : action.generators) {
        int y = g[x];
        if (!seen[y]) {
          seen[y] = 1;
          q.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<int> orbit_ids(const PermutationAction& action) {
  auto cls = orbits(action);
  std::vector<int> id(action.degree, -1);
  for (int i = 0; i < int(cls.size()); ++i)
    for (int x : cls[i]) id[x] = i;
  return id;
}

ExactMatrix permutation_matrix(const std::vector<int>& perm) {
  int n = int(perm.size());
  ExactMatrix m(n, n);
  for (int x = 0; x < n; ++x) m.at(perm[x], x) = 1;
  return m;
}

namespace {
struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= size_t(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};
}  // namespace

std::vector<std::vector<int>> group_elements(const PermutationAction& action, long cap) {
  std::vector<int> id(action.degree);
  for (int i = 0; i < action.degree; ++i) id[i] = i;
  std::unordered_set<std::vector<int>, VecHash> seen{id};
  std::deque<std::vector<int>> q{id};
  std::vector<std::vector<int>> out;
  while (!q.empty()) {
    auto e = q.front();
    q.pop_front();
    out.push_back(e);
    for (const auto& g : action.generators) {
      std::vector<int> h(action.degree);
      for (int i = 0; i < action.degree; ++i) h[i] = g[e[i]];
      if (seen.insert(h).second) {
        if (long(seen.size()) > cap) throw CapExceeded("group closure cap exceeded");
        q.push_back(std::move(h));
      }
    }
  }
  return out;
}

long group_order(const PermutationAction& action, long cap) {
  return long(group_elements(action, cap).size());
}

}  // namespace modhecke
