#pragma once

#include "nijenhuis/hermcat.hpp"
#include "nijenhuis/repforge.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nijenhuis {

/// Eigenspaces of R(rho_phi). rho_phi acts on level l as i(q_top - l).
struct PhiGrading {
  /// Lambda_phi = i * lambda_phi_im.
  Rational lambda_phi_im;
  /// levels[l] lists weight-basis indices of V_l.
  std::vector<std::vector<int>> levels;
  /// Level of each weight-basis vector.
  std::vector<int> level_of;

  Complex lambda_phi() const { return {0.0, to_double(lambda_phi_im)}; }
};

struct MinimalityVerdict {
  bool is_minimal = false;
  Rational lambda_phi_im;
  std::size_t num_levels = 0;
  std::size_t dim_plus = 0;
  std::size_t dim_minus = 0;
  /// Number of highest-weight vectors of k_phi on V_0.
  std::size_t top_components = 0;
  /// Empty when minimal; otherwise why not.
  std::string witness;
  /// Imaginary parts of the distinct R(rho_phi) eigenvalues, top first.
  std::vector<Rational> eigenvalues_im;
  /// Residual of (R - Lambda)(R - Lambda + i) at R = R(rho_phi); only meaningful when minimal.
  double quadratic_residual = 0.0;
};

struct ChainLevelMinimality {
  std::string label;
  std::vector<int> w_plus;
  std::vector<int> w_minus;
  /// Imaginary parts of the central eigenvalues rho_1..rho_i on W^i_+.
  std::vector<Rational> center_eigenvalues_im;
  bool invariant = false;
  bool block_shape = false;
  bool minimal = false;
  std::string detail;
};

struct ChainMinimality {
  /// Level 0: V_+ of the phi-grading.
  std::vector<int> v_plus;
  std::vector<ChainLevelMinimality> levels;
  bool all_minimal = false;
  /// Index of the first failing level, if any.
  std::optional<std::size_t> first_failure;
};

PhiGrading grade_by_rho(const MatrixRep& rep, const SpaceDescriptor& space);
MinimalityVerdict is_phi_minimal(const MatrixRep& rep, const SpaceDescriptor& space);
ChainMinimality chain_minimality(const MatrixRep& rep, const SpaceDescriptor& space, const ThimmChain& chain);
/// Recursive top eigenspace of the gradings, as weight-basis indices.
std::vector<int> top_eigenspace(const MatrixRep& rep, const std::vector<RatVec>& gradings);

struct ScanSurvivor {
  DominantLabels labels;
  RatVec weight;
  bool trivial = false;
};

struct ScanResult {
  std::vector<long> bounds;
  /// For each simple root, the noncompact positive root certifying its bound.
  std::vector<std::size_t> bound_witness;
  std::size_t candidates = 0;
  std::vector<ScanSurvivor> survivors;
};

/// Exhaustive search of dominant weights with (Lambda, alpha) in {0, 1} for every noncompact positive alpha.
/// EIII and EVII only; `bound_override` widens the search box.
ScanResult weight_condition_scan(const SpaceDescriptor& space, std::optional<long> bound_override = std::nullopt,
                                 unsigned threads = 1);

/// First pair (alpha, beta) of noncompact positive roots, in lexicographic order,
/// with (Lambda, alpha) = (Lambda, beta) = 1 and (alpha, beta) = 0.
std::optional<std::pair<std::size_t, std::size_t>> second_order_witness(const RatVec& lambda,
                                                                         const SpaceDescriptor& space);
bool validate_witness(const RatVec& lambda, const RatVec& alpha, const RatVec& beta, const SpaceDescriptor& space);

struct NogoEntry {
  ScanSurvivor survivor;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

struct NogoCertificate {
  std::string system;
  std::string space;
  ScanResult scan;
  std::vector<NogoEntry> entries;
  /// True when every nontrivial survivor carries a valid witness.
  bool no_minimal_rep = false;
};

/// E6 or E7; a classical family raises UsageError.
NogoCertificate nogo_report(Family family, unsigned threads = 1);

}  // namespace nijenhuis
