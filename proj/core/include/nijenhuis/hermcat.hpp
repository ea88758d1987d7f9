#pragma once

#include "nijenhuis/rootsys.hpp"

#include <string>
#include <vector>

namespace nijenhuis {

enum class SpaceKind { AIII, BDI, DIII, CI, EIII, EVII };

struct SpaceTag {
  SpaceKind kind = SpaceKind::AIII;
  int n = 0;
  int k = 0;

  std::string to_string() const;
  bool is_classical() const { return kind != SpaceKind::EIII && kind != SpaceKind::EVII; }
  friend bool operator==(const SpaceTag&, const SpaceTag&) = default;
};

std::string to_string(SpaceKind kind);
/// Accepts AIII, BDI, DIII, CI, EIII, EVII in any letter case.
SpaceKind parse_space_kind(const std::string& text);

/// Root-subset subalgebra containing the Cartan subalgebra.
struct SubalgebraSpec {
  std::string label;
  /// Sorted root indices, closed under negation.
  std::vector<std::size_t> roots;
  /// Central generators rho_1..rho_i as torus vectors (lambda(h) = lambda . h).
  std::vector<RatVec> gradings;
};

struct ThimmChain {
  std::vector<SubalgebraSpec> levels;
  /// True for EIII/EVII where only k_phi is produced.
  bool truncated = false;
};

struct OrthogonalSet {
  /// Indices of the chosen noncompact positive roots, in selection order.
  std::vector<std::size_t> roots;
  /// Coroot torus vectors h_alpha for each chosen root.
  std::vector<RatVec> coroots;
  /// Dimension of the complement of span{h_alpha} in the Cartan subalgebra.
  std::size_t cartan_complement_dim = 0;
};

struct CompatCertificate {
  bool is_subalgebra = false;
  bool compatible = false;
  std::string detail;
  /// Offending roots when a check fails.
  std::vector<std::size_t> witness;
};

class SpaceDescriptor {
 public:
  const SpaceTag& tag() const { return tag_; }
  std::string name() const { return tag_.to_string(); }
  const RootSystem& system() const { return system_; }
  std::size_t phi_index() const { return phi_index_; }
  const Root& phi() const { return system_.simple_roots()[phi_index_]; }
  int rank() const { return rank_; }
  /// Real vector omega with rho_phi = i omega: (omega, alpha) = 0 on compact simple roots, (omega, phi) = 1.
  const RatVec& rho_phi_coords() const { return omega_; }
  /// Torus vector h of rho_phi, so that alpha(rho_phi) = i alpha . h.
  const RatVec& rho_phi_coweight() const { return h_; }

  int phi_coefficient(std::size_t root) const;
  bool is_compact_root(std::size_t root) const { return phi_coefficient(root) == 0; }
  const std::vector<std::size_t>& compact_positive() const { return compact_pos_; }
  const std::vector<std::size_t>& noncompact_positive() const { return noncompact_pos_; }
  /// Roots with compactness flags filled in.
  std::vector<Root> classified_roots() const;

  const std::string& algebra() const { return algebra_; }
  const std::string& k_phi_label() const { return k_phi_label_; }
  SubalgebraSpec k_phi() const;

 private:
  friend SpaceDescriptor build_space(const SpaceTag& tag);

  SpaceTag tag_;
  RootSystem system_;
  std::size_t phi_index_ = 0;
  int rank_ = 0;
  RatVec omega_;
  RatVec h_;
  std::vector<std::size_t> compact_pos_;
  std::vector<std::size_t> noncompact_pos_;
  std::string algebra_;
  std::string k_phi_label_;
};

/// Throws ConfigError for invalid parameters.
SpaceDescriptor build_space(const SpaceTag& tag);
/// The six default instances used by the catalog listing.
std::vector<SpaceTag> default_catalog();
/// Rank from the classification table, independent of root data.
int table_rank(const SpaceTag& tag);

RatVec rho_phi(const SpaceDescriptor& space);
/// (rho_phi, rho_phi) = -(omega, omega).
Rational rho_phi_norm(const SpaceDescriptor& space);

OrthogonalSet maximal_orthogonal_set(const SpaceDescriptor& space);
ThimmChain thimm_chain(const SpaceDescriptor& space);
/// Subalgebra whose roots vanish on every given grading.
SubalgebraSpec subalgebra_from_gradings(const RootSystem& system, std::vector<RatVec> gradings,
                                        std::string label);
CompatCertificate check_compat(const std::vector<std::size_t>& roots, const SpaceDescriptor& space);

}  // namespace nijenhuis
