#pragma once

// Concrete subobject-lattice instances: finite sets, and free modules over the
// chain rings Z/p^k (k = 1 gives F_p vector spaces). Subobjects carry a unique
// canonical form, so equality is key comparison and orbit-minimal
// representatives are well defined.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "modhecke/oracle.hpp"

namespace modhecke {

enum class Kind { sets, chain_ring };

/// Isomorphism type: a partition with parts <= k for chain rings, a single
/// nonnegative integer {m} for sets (empty = the zero object / empty set).
struct IsoType {
  std::vector<int> parts;  // weakly decreasing, each >= 1

  int sum() const;
  int length() const { return int(parts.size()); }
  std::string str() const;  // "0", "2,1", "3"
  static IsoType parse(const std::string& s, Kind kind);

  bool operator==(const IsoType& o) const { return parts == o.parts; }
  bool operator!=(const IsoType& o) const { return parts != o.parts; }
  /// Graded lexicographic order, used for all canonical orderings.
  bool operator<(const IsoType& o) const;
};

/// Canonical-form subobject of the fixed ambient object F.
struct Subobject {
  Bitset elems;  // chain-ring: element codes of F in the submodule; sets: point mask
  std::vector<std::vector<int>> gens;  // canonical echelon generating matrix (chain-ring)
  IsoType type;
  std::vector<int> key;  // canonical total-order key

  bool operator==(const Subobject& o) const { return key == o.key; }
  bool operator<(const Subobject& o) const { return key < o.key; }
};

/// One Aut(y)-orbit of type-`source` subobjects of the reference object of
/// type `target`, labeled by its minimal canonical representative.
struct ArrowType {
  IsoType source, target;
  Subobject orbit_rep;
  long orbit_size = 0;
};

struct Automorphism {
  std::vector<std::vector<int>> matrix;  // chain-ring: n x n over Z/p^k
  std::vector<int> perm;                 // action on element codes (sets: on points)
};

struct SymCoupleReport {
  bool symmetric = false;
  bool cond1 = false, cond2 = false;
  std::vector<IsoType> unrealized;  // lambda <= phi never seen as tau(f ^ f')
};

class Instance {
 public:
  static Instance make_sets(int n);
  static Instance make_chain_ring(int p, int k, int n);

  Kind kind = Kind::sets;
  int p = 0, k = 0, n = 0;
  int mod = 1;        // p^k
  int num_codes = 0;  // |F| for chain-ring, n for sets

  std::string describe() const;

  // chain-ring element arithmetic on codes
  int add(int a, int b) const;
  int neg(int a) const;
  int smul(int c, int a) const;
  int order_exp(int a) const;  // least j with p^j * a = 0
  std::vector<int> decode(int code) const;
  int encode(const std::vector<int>& digits) const;

  Subobject make_sub_from_elements(Bitset elems) const;
  Subobject make_sub_from_gens(const std::vector<std::vector<int>>& rows) const;
  Subobject zero_sub() const;
  Subobject full_sub() const;
  IsoType ambient_type() const;

  /// Isomorphism type from the canonical generating matrix via Smith normal
  /// form over Z/p^k (sets: the subset size).
  IsoType iso_type(const Subobject& x) const;
  IsoType iso_type_of_gens(const std::vector<std::vector<int>>& gens) const;
  /// Partition with annihilator profile counts[j] = |{v : p^j v = 0}|.
  IsoType type_from_counts(const std::vector<long>& counts) const;

  bool sub_leq(const Subobject& x, const Subobject& y) const { return x.elems.is_subset_of(y.elems); }
  Subobject meet(const Subobject& x, const Subobject& y) const;
  Subobject join(const Subobject& x, const Subobject& y) const;
  IsoType quotient_type(const Subobject& x, const Subobject& y) const;

  /// Complete, duplicate-free, canonically ordered list of subobjects.
  std::vector<Subobject> enumerate_submodules(const Subobject& ambient, long cap = 1000000) const;
  /// Subobject lattice of F (cached).
  const std::vector<Subobject>& lattice() const;
  /// Index of a subobject of F in lattice(), by element set.
  int lattice_index(const Bitset& elems) const;

  // type utilities (embedding order)
  bool type_leq(const IsoType& a, const IsoType& b) const;
  IsoType dsum(const IsoType& a, const IsoType& b) const;
  /// Abstract down-set of b in the type poset, sorted graded-lex.
  std::vector<IsoType> types_leq(const IsoType& b) const;
  bool type_realizable(const IsoType& t) const;  // fits inside F
  /// Canonical reference subobject of F of the given type.
  Subobject reference(const IsoType& t) const;

  std::vector<Automorphism> aut_generators() const;

  /// Aut(y)-orbits of type-lam subobjects of the reference object of type nu.
  std::vector<ArrowType> arrow_types(const IsoType& lam, const IsoType& nu) const;
  /// All arrow types into nu (every lam <= nu), canonically ordered.
  const std::vector<ArrowType>& arrows_into(const IsoType& nu) const;
  /// Arrow index (into arrows_into(nu)) of a subobject of reference(nu).
  int arrow_index_in_ref(const IsoType& nu, const Bitset& sub_elems) const;
  /// Arrow label of sub inside an arbitrary x via an isomorphism x -> reference.
  int arrow_label(const Subobject& sub, const Subobject& x) const;

  /// First isomorphism x -> y as an element map over codes (-1 outside x), or
  /// empty if none exists.
  std::vector<int> find_iso(const Subobject& x, const Subobject& y) const;
  /// All isomorphisms x -> y.
  std::vector<std::vector<int>> all_isos(const Subobject& x, const Subobject& y) const;
  /// Minimal generator tuple realizing the type partition (chain-ring).
  std::vector<int> minimal_generators(const Subobject& x) const;

  /// Full automorphism group of reference(nu), as element maps (cached).
  const std::vector<std::vector<int>>& aut_elements(const IsoType& nu, long cap = 250000) const;

  bool is_symmetric_type(const IsoType& phi, long aut_cap = 250000) const;
  SymCoupleReport is_symmetric_couple(const IsoType& Phi, const IsoType& phi,
                                      long aut_cap = 250000) const;

  Bitset apply_map(const std::vector<int>& element_map, const Bitset& s) const;

 private:
  struct ArrowTable {
    std::vector<ArrowType> arrows;
    std::unordered_map<Bitset, int, BitsetHash> orbit_of;  // sub of reference(nu) -> arrow idx
  };
  struct Cache {
    std::mutex mu;
    std::vector<Subobject> lattice;
    std::unordered_map<Bitset, int, BitsetHash> lattice_index;
    std::map<std::vector<int>, ArrowTable> arrow_tables;  // key: nu.parts
    std::map<std::vector<int>, std::vector<std::vector<int>>> aut_groups;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  std::vector<int> add_table_;  // num_codes^2 when small enough
  std::vector<int> pmul_;
  std::vector<int> order_exp_;

  const ArrowTable& arrow_table(const IsoType& nu) const;
  std::vector<std::vector<int>> aut_generator_maps_of_ref(const IsoType& nu) const;
  std::vector<std::vector<int>> howell(std::vector<std::vector<int>> rows) const;
  void all_isos_impl(const Subobject& x, const Subobject& y, bool first_only,
                     std::vector<std::vector<int>>& out) const;
};

}  // namespace modhecke
