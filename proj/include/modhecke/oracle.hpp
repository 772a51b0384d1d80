#pragma once

// Independent ground-truth machinery: exact rational linear algebra with
// deterministic pivoting, orbit enumeration driven by permutation generators,
// and group-order computation by closure.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "modhecke/rational.hpp"

namespace modhecke {

/// Thrown when a configurable resource cap is exceeded (CLI exit code 3).
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fixed-universe bit set used for element sets of subobjects.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  int size() const { return nbits_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  int count() const;
  bool is_subset_of(const Bitset& o) const;
  Bitset operator&(const Bitset& o) const;
  Bitset operator|(const Bitset& o) const;
  bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
  bool operator<(const Bitset& o) const { return w_ < o.w_; }
  size_t hash() const;

  /// Indices of set bits, ascending.
  std::vector<int> bits() const;

 private:
  int nbits_ = 0;
  std::vector<uint64_t> w_;
};

struct BitsetHash {
  size_t operator()(const Bitset& b) const { return b.hash(); }
};

/// Dense exact-rational matrix.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static ExactMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  ExactMatrix transpose() const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;  // serial reference product
  ExactMatrix scaled(const Rat& s) const;
  bool operator==(const ExactMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool is_zero() const;

  /// Row-major flattening, used when treating operators as vectors of a span.
  std::vector<Rat> flatten() const { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

// Exact elimination. Canonical reduced row echelon form: first-nonzero
// pivoting, pivots normalized to 1, zeros above and below, zero rows dropped.
ExactMatrix rref(const ExactMatrix& m);
int rank(const ExactMatrix& m);
int rank_of_rows(const std::vector<std::vector<Rat>>& rows);
bool span_equal(const std::vector<std::vector<Rat>>& a, const std::vector<std::vector<Rat>>& b);
bool in_span(const std::vector<Rat>& v, const std::vector<std::vector<Rat>>& basis);

/// Canonical reduced basis of the intersection of two row spans.
std::vector<std::vector<Rat>> span_intersect(const std::vector<std::vector<Rat>>& a,
                                             const std::vector<std::vector<Rat>>& b);

/// Solve x * rows = target in the row span; returns coefficients or empty if
/// inconsistent.
struct SolveResult {
  bool ok = false;
  std::vector<Rat> coeffs;
};
SolveResult solve_in_span(const std::vector<std::vector<Rat>>& rows, const std::vector<Rat>& target);

/// A permutation group acting on {0..n-1} by explicit generator permutations.
struct PermutationAction {
  int degree = 0;
  std::vector<std::vector<int>> generators;  // each a bijection on 0..degree-1
};

/// Orbit partition; classes ordered by minimal element, elements ascending.
std::vector<std::vector<int>> orbits(const PermutationAction& action);

/// Orbit id per point (ids follow the class order of orbits()).
std::vector<int> orbit_ids(const PermutationAction& action);

/// 0/1 permutation matrix P with P[g(x)][x] = 1.
ExactMatrix permutation_matrix(const std::vector<int>& perm);

/// Order of the generated group by closure; throws CapExceeded past the cap.
long group_order(const PermutationAction& action, long cap = 1000000);

/// All elements of the generated group (closure), for Burnside cross-checks.
std::vector<std::vector<int>> group_elements(const PermutationAction& action, long cap = 1000000);

}  // namespace modhecke
