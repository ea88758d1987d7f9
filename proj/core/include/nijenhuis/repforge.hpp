#pragma once

#include "nijenhuis/hermcat.hpp"
#include "nijenhuis/rootsys.hpp"

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nijenhuis {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using IMatrix = Eigen::MatrixXi;

enum class RepKind { Fundamental, Spin };
enum class ClassicalAlgebra { SU, SO, SP };
/// Spin module of so(2m): the whole Fock space or the half-spin summand holding the highest weight.
enum class SpinSummand { Full, HighestWeight };

std::string to_string(RepKind kind);

inline constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();

/// Real basis of the compact form: torus slots i h_{alpha_j} for simple roots,
/// then x_alpha = e_alpha - e_{-alpha}, y_alpha = i(e_alpha + e_{-alpha}) per positive root.
struct CompactBasis {
  enum class Kind { Torus, X, Y };
  std::vector<CMatrix> elements;
  std::vector<Kind> kind;
  /// Simple-root index for torus slots, root index for X/Y slots.
  std::vector<std::size_t> source;
  /// Indexed by root; kNoSlot for negative roots.
  std::vector<std::size_t> x_slot;
  std::vector<std::size_t> y_slot;
  std::size_t torus_dim = 0;

  std::size_t size() const { return elements.size(); }
};

struct LieElement {
  Eigen::VectorXd coeffs;
};

/// Exact normalization record for one positive root.
struct NormalizationCertificate {
  std::size_t root = 0;
  /// lambda with [E, E^T] = lambda diag(w . h_alpha) for the integer root matrix E.
  Rational raw_scale;
  /// (e_alpha, e_{-alpha}) (alpha, alpha); equals 2.
  Rational pairing;
};

/// Structure constants [b_i, b_j] = sum_k c(i, j, k) b_k.
struct StructureConstants {
  std::size_t n = 0;
  std::vector<double> c;
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * n + j) * n + k]; }
};

/// Immutable matrix representation of a compact classical algebra in a weight basis.
class MatrixRep {
 public:
  int dim() const;
  RepKind kind() const;
  const std::string& label() const;
  const RootSystem& system() const;
  const std::vector<RatVec>& weights() const;

  /// Normalized root vector e_alpha for any root index; e_{-alpha} = e_alpha^dagger.
  const CMatrix& root_vector(std::size_t root) const;
  /// Integer matrix before normalization.
  const IMatrix& raw_root_vector(std::size_t root) const;
  const CompactBasis& basis() const;
  /// kappa with (X, Y) = kappa tr(XY).
  const Rational& trace_scale() const;
  const std::vector<NormalizationCertificate>& certificates() const;

  /// i diag(w . h).
  CMatrix torus_matrix(const RatVec& h) const;
  double form(const CMatrix& x, const CMatrix& y) const;
  Complex form_complex(const CMatrix& x, const CMatrix& y) const;

  CMatrix to_matrix(const LieElement& x) const;
  /// Coordinates of the orthogonal projection of m onto the compact form.
  LieElement to_element(const CMatrix& m) const;
  LieElement bracket(const LieElement& a, const LieElement& b) const;
  /// Computed on first use, then cached.
  const StructureConstants& structure_constants() const;
  /// tr(ad_i ad_j) over the compact basis.
  Eigen::MatrixXd killing_matrix() const;
  const Eigen::MatrixXd& basis_gram() const;

  /// Root index of w_a - w_b; -1 if not a root, -2 if zero.
  const IMatrix& weight_difference_roots() const;
  /// +1 / -1 where w_a - w_b is a positive / negative root, 0 elsewhere.
  const Eigen::MatrixXd& complex_structure_signs() const;

  struct Impl;
  explicit MatrixRep(std::shared_ptr<const Impl> impl) : d_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> d_;
};

/// Build a representation from weights and integer positive root vectors.
/// Verifies the weight action and normalization exactly; throws StructuralError on failure.
MatrixRep make_rep(const RootSystem& system, RepKind kind, std::string label,
                   std::vector<RatVec> weights, const std::map<std::size_t, IMatrix>& positive_raw);

MatrixRep fundamental_rep(const RootSystem& system);
MatrixRep fundamental_rep(ClassicalAlgebra algebra, int size);
/// Spin representation of so(N), N >= 5, on exterior powers of C^m.
MatrixRep spin_rep(const RootSystem& system, SpinSummand summand = SpinSummand::HighestWeight);
MatrixRep spin_rep(int N, SpinSummand summand = SpinSummand::HighestWeight);
/// Default representation for a classical space; spin is accepted for BDI only.
MatrixRep rep_for_space(const SpaceDescriptor& space, RepKind kind);

/// Real Clifford generators on the Fock space of C^m, m = floor(N/2).
struct CliffordModule {
  int N = 0;
  int m = 0;
  std::vector<CMatrix> gammas;
  /// (-1)^deg on the Fock space.
  Eigen::MatrixXd parity;
  /// S(X) = 1/8 sum X_ab [gamma_a, gamma_b] for a real antisymmetric N x N matrix X.
  CMatrix spin_of(const Eigen::MatrixXd& x) const;
};
CliffordModule clifford_module(int N);

std::vector<CMatrix> root_vectors(const MatrixRep& rep);
CMatrix rho_phi_matrix(const MatrixRep& rep, const SpaceDescriptor& space);

LieElement J_apply(const LieElement& x, const MatrixRep& rep);
LieElement project(const LieElement& x, const MatrixRep& rep, const SubalgebraSpec& sub);

/// 0/1 mask of matrix entries belonging to a root-subset subalgebra.
Eigen::MatrixXd subalgebra_mask(const MatrixRep& rep, const SubalgebraSpec& sub);
/// J acting entrywise: (JX)_ab = i sign(w_a - w_b) X_ab.
CMatrix apply_J(const MatrixRep& rep, const CMatrix& x);
inline CMatrix apply_mask(const Eigen::MatrixXd& mask, const CMatrix& x) {
  return x.cwiseProduct(mask.cast<Complex>());
}

double max_abs(const CMatrix& m);
inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

}  // namespace nijenhuis
