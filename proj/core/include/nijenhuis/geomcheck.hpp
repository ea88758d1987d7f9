#pragma once

#include "nijenhuis/hermcat.hpp"
#include "nijenhuis/repforge.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nijenhuis {

/// Deliberate formula corruptions used to show the suites are not vacuous.
enum class Mutation { None, DropHalf, FlipSign, LambdaZero };
std::string to_string(Mutation m);
Mutation parse_mutation(const std::string& text);

/// One subalgebra level prepared for fast matrix evaluation.
struct GeomLevel {
  SubalgebraSpec spec;
  Eigen::MatrixXd mask;
  std::vector<int> w_plus;
  bool is_k_phi = false;
};

/// Orbit data for the slice through rho_phi along the orthogonal set.
struct SliceData {
  OrthogonalSet pset;
  std::vector<CMatrix> x;   // x_{alpha_j}
  std::vector<CMatrix> y;   // y_{alpha_j}
  std::vector<CMatrix> ih;  // i h_{alpha_j}
  /// c_j = -2/(alpha_j, alpha_j).
  std::vector<Rational> c;
};

class GeomContext {
 public:
  GeomContext(SpaceDescriptor space, MatrixRep rep, Mutation mutation = Mutation::None);

  const SpaceDescriptor& space() const { return space_; }
  const MatrixRep& rep() const { return rep_; }
  Mutation mutation() const { return mutation_; }
  const CMatrix& rho() const { return rho_; }
  Complex lambda_phi() const { return lambda_; }
  const Rational& lambda_phi_im() const { return lambda_im_; }
  /// levels()[0] is k_phi; chain levels follow, skipping a duplicate of k_phi.
  const std::vector<GeomLevel>& levels() const { return levels_; }
  const GeomLevel& k_phi_level() const { return levels_.front(); }
  const SliceData& slice() const { return slice_; }
  int dim() const { return rep_.dim(); }

  CMatrix J(const CMatrix& x) const { return apply_J(rep_, x); }
  CMatrix project(const CMatrix& x, const GeomLevel& l) const { return apply_mask(l.mask, x); }
  CMatrix perp(const CMatrix& x, const GeomLevel& l) const { return x - project(x, l); }

  /// A = 1/2 pr[J mu_perp, mu_perp].
  CMatrix A(const CMatrix& mu, const GeomLevel& l) const;
  /// Directional derivative of A along delta.
  CMatrix dA(const CMatrix& mu, const CMatrix& delta, const GeomLevel& l) const;
  /// I_r = (i^r / r) tr((pr mu)|_{W_+})^r; I_0 = 1.
  Complex trace_poly(const CMatrix& mu, const GeomLevel& l, int r) const;
  /// Directional derivative of I_r along delta.
  Complex dtrace_poly(const CMatrix& mu, const CMatrix& delta, const GeomLevel& l, int r) const;
  /// d_N mu along X^# : [X, mu] - [J[X, mu], mu].
  CMatrix dN_mu(const CMatrix& mu, const CMatrix& x) const;

  /// Gaussian element of k (or of a level subalgebra) in the compact basis.
  CMatrix random_k(std::mt19937_64& rng) const;
  CMatrix random_in(std::mt19937_64& rng, const GeomLevel& l) const;
  /// Compact basis elements spanning a level subalgebra.
  std::vector<std::size_t> level_slots(const GeomLevel& l) const;

 private:
  SpaceDescriptor space_;
  MatrixRep rep_;
  Mutation mutation_;
  CMatrix rho_;
  Rational lambda_im_;
  Complex lambda_;
  std::vector<GeomLevel> levels_;
  SliceData slice_;
};

struct SkewExp {
  CMatrix u;
  double backward_error = 0;
};
/// exp of an anti-Hermitian matrix through a Hermitian eigendecomposition.
SkewExp exp_skew(const CMatrix& x);

struct OrbitSample {
  CMatrix mu;
  CMatrix generator;
  std::vector<double> slice;
  std::uint64_t seed = 0;
  double backward_error = 0;
};

enum class SampleMode { Generic, Slice };

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);
OrbitSample orbit_point(const GeomContext& ctx, const CMatrix& generator);
/// mu = Ad_k Ad_{exp(sum a_j y_j)} rho_phi, with k = exp(k_phi_generator) when given.
OrbitSample slice_point(const GeomContext& ctx, const std::vector<double>& a, const CMatrix* k_phi_generator = nullptr);
OrbitSample random_orbit_point(const GeomContext& ctx, std::uint64_t seed, SampleMode mode);

/// Closed forms along the slice.
double slice_f(double a);
double slice_g(double a);
CMatrix slice_mu_closed_form(const GeomContext& ctx, const std::vector<double>& a);

CMatrix dN_mu(const GeomContext& ctx, const OrbitSample& sample, const CMatrix& probe);
CMatrix compute_A(const GeomContext& ctx, const OrbitSample& sample, const GeomLevel& level);

enum class Route { Mother, ARoute };

/// d_N I_r(X^#) at a level. The A route is cross-checked against central finite differences
/// (step 1e-5, tolerance 1e-6) and throws NumericError on disagreement.
Complex eval_dN_poly(const GeomContext& ctx, const OrbitSample& sample, const CMatrix& probe, const GeomLevel& level,
                     int r, Route route = Route::ARoute);

/// Largest relative disagreement between analytic and finite-difference derivatives of A and I_1..I_max_r.
/// Throws NumericError above 1e-6.
double finite_difference_check(const GeomContext& ctx, const CMatrix& mu, const CMatrix& probe, const GeomLevel& level,
                               int max_r);

/// |a - b| / max(1, |a|, |b|).
double rel_residual(Complex a, Complex b);
double rel_residual(const CMatrix& a, const CMatrix& b);

struct IdentityResidual {
  std::string identity;
  std::string level;
  double residual = 0;
};

struct SuiteReport {
  std::string suite;
  std::string space;
  std::string rep;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0;
  double max_residual = 0;
  bool pass = false;
  std::string mutation = "none";
  /// Worst analytic vs finite-difference disagreement; reported separately from residuals.
  std::optional<double> fd_max_disagreement;
  std::vector<IdentityResidual> breakdown;
  std::vector<std::string> notes;
};

struct SuiteConfig {
  std::size_t trials = 100;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Highest trace-polynomial degree r.
  int max_degree = 4;
};

SuiteReport suite_explicit_formula(const GeomContext& ctx, const SuiteConfig& cfg);
SuiteReport suite_basic_forms(const GeomContext& ctx, const SuiteConfig& cfg);
SuiteReport suite_commutation(const GeomContext& ctx, const SuiteConfig& cfg);
/// 5x5 grid in (a_1, a_2) plus cfg.trials random slice points.
SuiteReport suite_slice(const GeomContext& ctx, const SuiteConfig& cfg);
SuiteReport suite_kphi(const GeomContext& ctx, const SuiteConfig& cfg);
SuiteReport suite_quadratic(const GeomContext& ctx, const SuiteConfig& cfg);

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const GeomContext& ctx, const SuiteConfig& cfg);

struct SpectrumReport {
  /// lambda~ = 2i(lambda - Lambda_phi) for the eigenvalues of R_{V_+}(mu_{k_phi}), ascending by real part.
  std::vector<Complex> eigenvalues;
  /// -2 sum_j f_j (w . h_j) over V_+ weights; empty when the sample has no slice data.
  std::vector<double> predicted;
  /// -2 f_j per orthogonal root.
  std::vector<double> minus_two_f;
  double max_mismatch = 0;
  bool contains_minus_two_f = true;
};
SpectrumReport nijenhuis_spectrum(const GeomContext& ctx, const OrbitSample& sample);

}  // namespace nijenhuis
