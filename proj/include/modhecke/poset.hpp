#pragma once

// Finite posets, incidence algebras, zeta/Moebius, the module action on
// functions, and pushforwards along type maps. One engine serves type posets,
// subobject lattices and arrow-type posets; elements are opaque ids with an
// explicit relation set.

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "modhecke/oracle.hpp"
#include "modhecke/rational.hpp"

namespace modhecke {

class Poset {
 public:
  /// Builds from element ids and the set of related pairs (given by id).
  /// Reflexivity is added implicitly; antisymmetry and transitivity are
  /// checked and violations throw std::invalid_argument.
  static Poset make(std::vector<std::string> ids,
                    const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                    std::optional<std::string> bottom = std::nullopt);

  int size() const { return int(ids_.size()); }
  const std::string& id(int i) const { return ids_[i]; }
  int index(const std::string& id) const;
  bool leq(int x, int y) const { return up_[x].test(y); }
  const Bitset& up_set(int x) const { return up_[x]; }
  const Bitset& down_set(int x) const { return down_[x]; }

  bool has_bottom() const { return bottom_ >= 0; }
  int bottom() const { return bottom_; }
  /// Unique maximal element, or -1.
  int top() const;

  /// All comparable pairs (x,y), x <= y, in a fixed order.
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int pair_index(int x, int y) const;  // -1 when incomparable

  /// Indices sorted so every element comes after everything below it.
  const std::vector<int>& linear_extension() const { return order_; }

  /// Restriction to the interval [x, y], element ids preserved.
  Poset interval(int x, int y) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<Bitset> up_, down_;
  std::vector<std::pair<int, int>> pairs_;
  std::unordered_map<uint64_t, int> pair_index_;
  std::vector<int> order_;
  int bottom_ = -1;

  void finish();
};

using PosetPtr = std::shared_ptr<const Poset>;

/// Rational-valued function on the comparable pairs of a poset.
struct IncidenceFunction {
  PosetPtr poset;
  std::vector<Rat> values;  // parallel to poset->pairs()

  const Rat& at(int x, int y) const;
  Rat& at(int x, int y);
  bool operator==(const IncidenceFunction& o) const { return values == o.values; }
};

/// Total rational-valued function on the elements.
struct PosetFunction {
  PosetPtr poset;
  std::vector<Rat> values;
  bool operator==(const PosetFunction& o) const { return values == o.values; }
};

/// Order-preserving map between posets (validated on construction).
struct PosetMap {
  PosetPtr source, target;
  std::vector<int> map;  // source index -> target index

  static PosetMap make(PosetPtr source, PosetPtr target, std::vector<int> map);
};

IncidenceFunction delta_fn(PosetPtr p);
IncidenceFunction zeta(PosetPtr p);
IncidenceFunction mobius(PosetPtr p);
IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g);
PosetFunction act(const IncidenceFunction& f, const PosetFunction& v);
PosetFunction pushforward_vector(const PosetMap& t, const PosetFunction& v);
bool in_J(const IncidenceFunction& f, const PosetMap& t);
IncidenceFunction pushforward_incidence(const PosetMap& t, const IncidenceFunction& f);
bool check_club(const PosetMap& t, int interval_cap = 64);
Rat euler_char(PosetPtr p);

// JSON serialization: {"elements": [...], "leq": [[a,b],...], "bottom": id?}
// and incidence functions as {"pairs": [[a,b,"p/q"],...]}.
std::string poset_to_json(const Poset& p);
PosetPtr poset_from_json(const std::string& text);
std::string incidence_to_json(const IncidenceFunction& f);
IncidenceFunction incidence_from_json(PosetPtr p, const std::string& text);

}  // namespace modhecke
