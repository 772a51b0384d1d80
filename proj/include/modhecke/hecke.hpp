#pragma once

// The Hecke algebra of the automorphism group acting on a Grassmannian of
// subobjects: geometric and cellular bases, ideal units and idempotents,
// spectral data, intertwiner modules with their G/C bases, and the
// verification routines for the cellular structure theorems.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modhecke/counting.hpp"
#include "modhecke/instance.hpp"
#include "modhecke/oracle.hpp"

namespace modhecke {

struct Grassmannian {
  IsoType lam;
  std::vector<Subobject> points;             // canonical order, complete, duplicate-free
  std::vector<Bitset> elem_sets;             // parallel to points
  std::vector<std::vector<int>> iso_to_ref;  // element map point -> reference(lam), per point
  std::unordered_map<Bitset, int, BitsetHash> index;

  int size() const { return int(points.size()); }
  int index_of(const Bitset& elems) const;
};

/// Element of H_phi: a matrix over X_phi, plus compact coordinates in the
/// geometric basis whenever the matrix is constant on pair-invariant classes.
struct HeckeElement {
  ExactMatrix mat;
  bool has_compact = false;
  std::vector<Rat> compact;  // indexed like HeckeContext::interval()
};

struct Intertwiner {
  ExactMatrix mat;  // rows X_phi, cols X_nu
  IsoType nu;
};

/// entry[lam][mu] = the scalar by which c_mu acts on the irreducible K_lam.
struct SpectralTable {
  std::vector<IsoType> types;
  std::vector<std::vector<Rat>> entry;
};

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

class HeckeContext {
 public:
  HeckeContext(Instance inst, IsoType phi, CountTable* table = nullptr,
               long max_lattice = 1000000, long max_group = 1000000);

  const Instance& inst() const { return inst_; }
  const IsoType& phi() const { return phi_; }
  const SymCoupleReport& couple_report() const { return couple_; }
  bool all_types_realized() const { return all_realized_; }

  /// Pair-invariant classes of X_phi x X_phi, canonically ordered; equals
  /// the abstract interval [0,phi] when every type is realized as a meet.
  const std::vector<IsoType>& interval() const { return interval_; }
  int type_index(const IsoType& t) const;

  const Grassmannian& X(const IsoType& nu) const;  // cached
  /// Row-major |X_phi|^2 table of interval indices of tau(x ^ y).
  const std::vector<int>& pair_types() const;

  const std::vector<HeckeElement>& geometric_basis() const;
  /// Built from the zeta-hat coefficients and cross-checked against the
  /// averaging composition; the two constructions must agree exactly.
  const std::vector<HeckeElement>& cellular_basis() const;

  HeckeElement from_compact(std::vector<Rat> coeffs) const;
  /// Exact expansion in the geometric basis, or nullopt if the matrix is not
  /// constant on pair classes.
  std::optional<std::vector<Rat>> to_compact(const ExactMatrix& m) const;
  std::vector<Rat> mul_compact(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
  HeckeElement mul(const HeckeElement& a, const HeckeElement& b) const;

  /// 0/1 matrix of T-up from X_lam to X_mu (rows X_mu); with an arrow index,
  /// only embeddings of that class contribute.
  ExactMatrix averaging(const IsoType& lam, const IsoType& mu, int arrow = -1) const;

  /// Unit of the span of {c_{lam'} : lam' in downset}; throws on a singular
  /// system (which would contradict the ideal structure theorem).
  std::vector<Rat> ideal_unit_of(const std::vector<int>& downset_indices) const;
  HeckeElement ideal_unit(const IsoType& lam) const;
  const std::vector<HeckeElement>& idempotents() const;
  const SpectralTable& spectral_table() const;
  /// a(omega, kappa) with c_omega = sum over kappa of a * e_kappa.
  Rat a_entry(const IsoType& omega, const IsoType& kappa) const;

  // intertwiner module N_{phi,nu}
  const std::vector<ArrowType>& arrows(const IsoType& nu) const;
  /// Row-major |X_phi| x |X_nu| table of arrow indices of (x ^ y inside y).
  std::vector<int> pair_arrow_labels(const IsoType& nu) const;
  std::vector<Intertwiner> intertwiner_G(const IsoType& nu) const;
  /// Cellular basis via averaging with a fixed arrow; equals arrow_zeta * G.
  std::vector<Intertwiner> intertwiner_C(const IsoType& nu) const;
  /// zeta-hat over the arrow poset: entry (i,j) counts type-preserving
  /// subobjects of class i inside a representative of class j.
  ExactMatrix arrow_zeta(const IsoType& nu) const;

  int multiplicity(const IsoType& lam, const IsoType& nu) const;
  long oracle_orbit_count(const IsoType& nu) const;  // G-orbits on X_phi x X_nu by BFS

  std::vector<CheckItem> verify_cellalg() const;
  std::vector<CheckItem> verify_cellmod(const IsoType& nu) const;
  std::vector<CheckItem> verify_equivariance(const std::vector<IsoType>& nus) const;
  std::vector<CheckItem> verify_cell_idem() const;

  std::vector<int> downset_indices(const IsoType& lam, bool strict) const;
  CountTable* table() const { return table_; }

 private:
  Instance inst_;
  IsoType phi_;
  CountTable* table_ = nullptr;
  long max_lattice_, max_group_;
  SymCoupleReport couple_;
  bool all_realized_ = true;
  std::vector<IsoType> interval_;

  mutable std::map<std::vector<int>, Grassmannian> xs_;
  mutable std::vector<int> pair_types_;
  mutable std::vector<HeckeElement> geo_, cell_, idem_;
  mutable std::vector<std::vector<std::vector<Rat>>> structure_;  // [a][b] -> coeffs
  mutable SpectralTable spectral_;

  const std::vector<std::vector<std::vector<Rat>>>& structure_constants() const;
  Grassmannian build_x(const IsoType& nu) const;
};

struct FourierCandidate {
  std::string reading;  // which symbol is substituted for the unbound "l"
  std::vector<std::vector<Rat>> value;
  bool matches = false;
};

struct FourierReport {
  int n = 0, m = 0, q = 0;
  std::vector<std::vector<Rat>> truth;  // truth[k][j]: coefficient of e_j in g_k
  std::vector<FourierCandidate> candidates;
};

/// Field-case Fourier expansion of g_k in the idempotents: ground truth from
/// the spectral table, compared against the paper's displayed double sum
/// under each candidate reading of its unbound symbol.
FourierReport fourier_report_field(int n, int m, int q);

}  // namespace modhecke
