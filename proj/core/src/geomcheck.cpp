#include "nijenhuis/geomcheck.hpp"

#include "nijenhuis/errors.hpp"
#include "nijenhuis/minimality.hpp"
#include "nijenhuis/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nijenhuis {

namespace {

const Complex kI(0.0, 1.0);
constexpr double kFdStep = 1e-5;
constexpr double kFdTol = 1e-6;
constexpr double kExpTol = 1e-10;

Complex ipow(int r) {
  switch (((r % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

CMatrix block(const CMatrix& m, const std::vector<int>& idx) { return m(idx, idx); }

// Worst residual per (identity, level), in first-seen order.
class Accumulator {
 public:
  void add(const std::string& identity, const std::string& level, double residual) {
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    for (auto& item : items_) {
      if (item.identity == identity && item.level == level) {
        item.residual = std::max(item.residual, residual);
        return;
      }
    }
    items_.push_back({identity, level, residual});
  }
  void merge(const Accumulator& other) {
    for (const auto& item : other.items_) add(item.identity, item.level, item.residual);
  }
  const std::vector<IdentityResidual>& items() const { return items_; }

 private:
  std::vector<IdentityResidual> items_;
};

struct TrialResult {
  Accumulator acc;
  double fd = 0;
  bool fd_used = false;
};

SuiteReport finish(const std::string& suite, const GeomContext& ctx, const SuiteConfig& cfg,
                   const std::vector<TrialResult>& trials) {
  SuiteReport rep;
  rep.suite = suite;
  rep.space = ctx.space().name();
  rep.rep = ctx.rep().label();
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.tolerance = cfg.tolerance;
  rep.mutation = to_string(ctx.mutation());
  Accumulator all;
  for (const auto& t : trials) {
    all.merge(t.acc);
    if (t.fd_used) rep.fd_max_disagreement = std::max(rep.fd_max_disagreement.value_or(0.0), t.fd);
  }
  rep.breakdown = all.items();
  rep.max_residual = 0;
  for (const auto& item : rep.breakdown) rep.max_residual = std::max(rep.max_residual, item.residual);
  rep.pass = rep.max_residual <= cfg.tolerance;
  return rep;
}

template <class Body>
std::vector<TrialResult> run_trials(std::size_t count, unsigned threads, Body&& body) {
  std::vector<TrialResult> out(count);
  parallel_for(count, threads, [&](std::size_t t) { body(t, out[t]); });
  return out;
}

double commutator_residual(const CMatrix& a, const CMatrix& b) {
  const CMatrix ab = a * b;
  const CMatrix ba = b * a;
  return max_abs(ab - ba) / std::max({1.0, max_abs(ab), max_abs(ba)});
}

CMatrix nondegenerate_probe(const GeomContext& ctx, std::mt19937_64& rng, const CMatrix& mu) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    CMatrix x = ctx.random_k(rng);
    if (max_abs(commutator(x, mu)) > 1e-8) return x;
  }
  throw NumericError("could not sample a probe with nonzero tangent vector");
}

}  // namespace

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::DropHalf: return "drop-half";
    case Mutation::FlipSign: return "flip-sign";
    case Mutation::LambdaZero: return "lambda-zero";
  }
  return "?";
}

Mutation parse_mutation(const std::string& text) {
  for (auto m : {Mutation::None, Mutation::DropHalf, Mutation::FlipSign, Mutation::LambdaZero})
    if (text == to_string(m)) return m;
  throw UsageError("unknown mutation '" + text + "' (expected none, drop-half, flip-sign or lambda-zero)");
}

GeomContext::GeomContext(SpaceDescriptor space, MatrixRep rep, Mutation mutation)
    : space_(std::move(space)), rep_(std::move(rep)), mutation_(mutation) {
  if (!space_.tag().is_classical()) throw UsageError("geometric checks need a classical space");
  if (rep_.system().name() != space_.system().name())
    throw UsageError("representation does not belong to " + space_.name());
  rho_ = rho_phi_matrix(rep_, space_);
  const auto& h = space_.rho_phi_coweight();
  lambda_im_ = rep_.weights().front().dot(h);
  for (const auto& w : rep_.weights()) lambda_im_ = std::max(lambda_im_, w.dot(h));
  lambda_ = Complex(0.0, to_double(lambda_im_));

  auto make_level = [&](SubalgebraSpec spec, bool is_k_phi) {
    GeomLevel l;
    l.mask = subalgebra_mask(rep_, spec);
    l.w_plus = top_eigenspace(rep_, spec.gradings);
    l.is_k_phi = is_k_phi;
    l.spec = std::move(spec);
    return l;
  };
  levels_.push_back(make_level(space_.k_phi(), true));
  for (auto& spec : thimm_chain(space_).levels) {
    GeomLevel l = make_level(std::move(spec), false);
    if (l.spec.roots == levels_.front().spec.roots && l.w_plus == levels_.front().w_plus) continue;
    levels_.push_back(std::move(l));
  }

  slice_.pset = maximal_orthogonal_set(space_);
  const auto& sys = space_.system();
  for (std::size_t j = 0; j < slice_.pset.roots.size(); ++j) {
    const auto r = slice_.pset.roots[j];
    slice_.x.push_back(rep_.basis().elements[rep_.basis().x_slot[r]]);
    slice_.y.push_back(rep_.basis().elements[rep_.basis().y_slot[r]]);
    slice_.ih.push_back(rep_.torus_matrix(slice_.pset.coroots[j]));
    const auto& v = sys.roots()[r].vec;
    slice_.c.push_back(Rational(-2) / sys.inner(v, v));
  }
}

CMatrix GeomContext::A(const CMatrix& mu, const GeomLevel& l) const {
  const double half = mutation_ == Mutation::DropHalf ? 1.0 : 0.5;
  const CMatrix mp = perp(mu, l);
  return half * project(commutator(J(mp), mp), l);
}

CMatrix GeomContext::dA(const CMatrix& mu, const CMatrix& delta, const GeomLevel& l) const {
  const double half = mutation_ == Mutation::DropHalf ? 1.0 : 0.5;
  const CMatrix mp = perp(mu, l);
  const CMatrix dp = perp(delta, l);
  return half * project(commutator(J(dp), mp) + commutator(J(mp), dp), l);
}

Complex GeomContext::trace_poly(const CMatrix& mu, const GeomLevel& l, int r) const {
  if (r < 0) throw UsageError("trace polynomial degree must be >= 0");
  if (r == 0) return {1.0, 0.0};
  const CMatrix m = block(project(mu, l), l.w_plus);
  CMatrix p = m;
  for (int k = 1; k < r; ++k) p = p * m;
  return ipow(r) * p.trace() / static_cast<double>(r);
}

Complex GeomContext::dtrace_poly(const CMatrix& mu, const CMatrix& delta, const GeomLevel& l, int r) const {
  if (r < 0) throw UsageError("trace polynomial degree must be >= 0");
  if (r == 0) return {0.0, 0.0};
  const CMatrix m = block(project(mu, l), l.w_plus);
  const CMatrix d = block(project(delta, l), l.w_plus);
  CMatrix p = CMatrix::Identity(m.rows(), m.cols());
  for (int k = 1; k < r; ++k) p = p * m;
  return ipow(r) * (p * d).trace();
}

CMatrix GeomContext::dN_mu(const CMatrix& mu, const CMatrix& x) const {
  const CMatrix t = commutator(x, mu);
  const double sign = mutation_ == Mutation::FlipSign ? 1.0 : -1.0;
  return t + sign * commutator(J(t), mu);
}

std::vector<std::size_t> GeomContext::level_slots(const GeomLevel& l) const {
  const auto& b = rep_.basis();
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < b.torus_dim; ++i) slots.push_back(i);
  for (auto r : l.spec.roots) {
    if (b.x_slot[r] == kNoSlot) continue;
    slots.push_back(b.x_slot[r]);
    slots.push_back(b.y_slot[r]);
  }
  std::sort(slots.begin(), slots.end());
  return slots;
}

CMatrix GeomContext::random_k(std::mt19937_64& rng) const {
  const auto& b = rep_.basis();
  std::normal_distribution<double> gauss(0.0, 2.0 / std::sqrt(static_cast<double>(b.size())));
  CMatrix x = CMatrix::Zero(dim(), dim());
  for (const auto& e : b.elements) x += gauss(rng) * e;
  return x;
}

CMatrix GeomContext::random_in(std::mt19937_64& rng, const GeomLevel& l) const {
  const auto& b = rep_.basis();
  const auto slots = level_slots(l);
  std::normal_distribution<double> gauss(0.0, 2.0 / std::sqrt(static_cast<double>(slots.size())));
  CMatrix x = CMatrix::Zero(dim(), dim());
  for (auto s : slots) x += gauss(rng) * b.elements[s];
  return x;
}

SkewExp exp_skew(const CMatrix& x) {
  CMatrix h = Complex(0, -1) * x;
  h = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed in matrix exponential");
  const CMatrix& v = es.eigenvectors();
  const Eigen::VectorXd& d = es.eigenvalues();
  Eigen::VectorXcd phase(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) phase[i] = std::exp(kI * d[i]);
  SkewExp out;
  out.u = v * phase.asDiagonal() * v.adjoint();
  const double scale = std::max(1.0, max_abs(h));
  const double eig_res = max_abs(h * v - v * d.cast<Complex>().asDiagonal()) / scale;
  const double orth = max_abs(v.adjoint() * v - CMatrix::Identity(v.rows(), v.cols()));
  const double herm = max_abs(x + x.adjoint()) / scale;
  out.backward_error = std::max({eig_res, orth, herm});
  if (out.backward_error > kExpTol)
    throw NumericError("matrix exponential backward error " + std::to_string(out.backward_error) +
                       " (norm " + std::to_string(scale) + ")");
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

OrbitSample orbit_point(const GeomContext& ctx, const CMatrix& generator) {
  const SkewExp e = exp_skew(generator);
  OrbitSample s;
  s.generator = generator;
  s.mu = e.u * ctx.rho() * e.u.adjoint();
  s.backward_error = e.backward_error;
  return s;
}

OrbitSample slice_point(const GeomContext& ctx, const std::vector<double>& a, const CMatrix* k_phi_generator) {
  const auto& sl = ctx.slice();
  if (a.size() != sl.y.size())
    throw UsageError("slice point needs " + std::to_string(sl.y.size()) + " coordinates");
  CMatrix y = CMatrix::Zero(ctx.dim(), ctx.dim());
  for (std::size_t j = 0; j < a.size(); ++j) y += a[j] * sl.y[j];
  OrbitSample s = orbit_point(ctx, y);
  if (k_phi_generator) {
    const SkewExp k = exp_skew(*k_phi_generator);
    s.mu = k.u * s.mu * k.u.adjoint();
    s.backward_error = std::max(s.backward_error, k.backward_error);
  }
  s.slice = a;
  return s;
}

OrbitSample random_orbit_point(const GeomContext& ctx, std::uint64_t seed, SampleMode mode) {
  std::mt19937_64 rng(seed);
  if (mode == SampleMode::Generic) {
    OrbitSample s = orbit_point(ctx, ctx.random_k(rng));
    s.seed = seed;
    return s;
  }
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<double> a(ctx.slice().y.size());
  for (auto& v : a) v = angle(rng);
  const CMatrix k = ctx.random_in(rng, ctx.k_phi_level());
  OrbitSample s = slice_point(ctx, a, &k);
  s.seed = seed;
  return s;
}

double slice_f(double a) { return 0.5 * (std::cos(2 * a) - 1.0); }
double slice_g(double a) { return -0.5 * std::sin(2 * a); }

CMatrix slice_mu_closed_form(const GeomContext& ctx, const std::vector<double>& a) {
  const auto& sl = ctx.slice();
  CMatrix mu = ctx.rho();
  for (std::size_t j = 0; j < a.size(); ++j) mu += slice_f(a[j]) * sl.ih[j] - slice_g(a[j]) * sl.x[j];
  return mu;
}

CMatrix dN_mu(const GeomContext& ctx, const OrbitSample& sample, const CMatrix& probe) {
  return ctx.dN_mu(sample.mu, probe);
}

CMatrix compute_A(const GeomContext& ctx, const OrbitSample& sample, const GeomLevel& level) {
  return ctx.A(sample.mu, level);
}

double rel_residual(Complex a, Complex b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double rel_residual(const CMatrix& a, const CMatrix& b) {
  return max_abs(a - b) / std::max({1.0, max_abs(a), max_abs(b)});
}

double finite_difference_check(const GeomContext& ctx, const CMatrix& mu, const CMatrix& probe, const GeomLevel& level,
                               int max_r) {
  const SkewExp plus = exp_skew(kFdStep * probe);
  const CMatrix mu_p = plus.u * mu * plus.u.adjoint();
  const CMatrix mu_m = plus.u.adjoint() * mu * plus.u;
  const CMatrix tangent = commutator(probe, mu);
  double worst = 0;
  const CMatrix fd_a = (ctx.A(mu_p, level) - ctx.A(mu_m, level)) / (2 * kFdStep);
  worst = std::max(worst, rel_residual(fd_a, ctx.dA(mu, tangent, level)));
  for (int r = 1; r <= max_r; ++r) {
    const Complex fd = (ctx.trace_poly(mu_p, level, r) - ctx.trace_poly(mu_m, level, r)) / (2 * kFdStep);
    worst = std::max(worst, rel_residual(fd, ctx.dtrace_poly(mu, tangent, level, r)));
  }
  if (!(worst <= kFdTol))
    throw NumericError("analytic derivative disagrees with finite differences by " + std::to_string(worst) +
                       " at level " + level.spec.label);
  return worst;
}

Complex eval_dN_poly(const GeomContext& ctx, const OrbitSample& sample, const CMatrix& probe, const GeomLevel& level,
                     int r, Route route) {
  if (r == 0) return {0.0, 0.0};
  const CMatrix& mu = sample.mu;
  if (route == Route::Mother) return ctx.dtrace_poly(mu, ctx.dN_mu(mu, probe), level, r);
  finite_difference_check(ctx, mu, probe, level, r);
  const CMatrix tangent = commutator(probe, mu);
  return ctx.dtrace_poly(mu, tangent, level, r) - ctx.dtrace_poly(mu, ctx.dA(mu, tangent, level), level, r);
}

SuiteReport suite_explicit_formula(const GeomContext& ctx, const SuiteConfig& cfg) {
  const Complex lambda = ctx.mutation() == Mutation::LambdaZero ? Complex(0, 0) : ctx.lambda_phi();
  const Complex lam_true = ctx.lambda_phi();
  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t, TrialResult& out) {
    const auto seed = trial_seed(cfg.seed, t);
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    const OrbitSample s = random_orbit_point(ctx, seed, SampleMode::Generic);
    const CMatrix& mu = s.mu;
    const CMatrix x = nondegenerate_probe(ctx, rng, mu);
    const CMatrix tangent = commutator(x, mu);
    const CMatrix dn = ctx.dN_mu(mu, x);
    out.acc.add("orbit_sample", "", s.backward_error);
    for (const auto& l : ctx.levels()) {
      out.fd = std::max(out.fd, finite_difference_check(ctx, mu, x, l, cfg.max_degree + 1));
      out.fd_used = true;
      const CMatrix da = ctx.dA(mu, tangent, l);
      for (int r = 1; r <= cfg.max_degree; ++r) {
        const Complex di = ctx.dtrace_poly(mu, tangent, l, r);
        const Complex di1 = ctx.dtrace_poly(mu, tangent, l, r + 1);
        const Complex rhs = -2.0 * kI * lambda * di + 2.0 * di1;
        const Complex mother = ctx.dtrace_poly(mu, dn, l, r);
        const Complex aroute = di - ctx.dtrace_poly(mu, da, l, r);
        out.acc.add("explicit_formula.mother", l.spec.label, rel_residual(mother, rhs));
        out.acc.add("explicit_formula.a_route", l.spec.label, rel_residual(aroute, rhs));
      }
      const CMatrix m = block(ctx.project(mu, l), l.w_plus);
      const CMatrix id = CMatrix::Identity(m.rows(), m.cols());
      const CMatrix expected = -kI * m * m + (2.0 * kI * lam_true + 1.0) * m - lam_true * (1.0 + kI * lam_true) * id;
      out.acc.add("fundamental_from_quadratic", l.spec.label, rel_residual(block(ctx.A(mu, l), l.w_plus), expected));
      if (t == 0) {
        // Zero probe: every derivative vanishes identically.
        const CMatrix zero = CMatrix::Zero(ctx.dim(), ctx.dim());
        double z = 0;
        for (int r = 1; r <= cfg.max_degree; ++r)
          z = std::max(z, std::abs(ctx.dtrace_poly(mu, ctx.dN_mu(mu, zero), l, r)));
        out.acc.add("zero_probe", l.spec.label, z);
      }
    }
  });
  return finish("explicit-formula", ctx, cfg, trials);
}

SuiteReport suite_basic_forms(const GeomContext& ctx, const SuiteConfig& cfg) {
  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t, TrialResult& out) {
    const auto seed = trial_seed(cfg.seed, t);
    std::mt19937_64 rng(seed ^ 0x27d4eb2fULL);
    const OrbitSample s = random_orbit_point(ctx, seed, SampleMode::Generic);
    const CMatrix& mu = s.mu;
    const CMatrix x = nondegenerate_probe(ctx, rng, mu);
    for (const auto& l : ctx.levels()) {
      const std::string& label = l.spec.label;
      out.acc.add("sufficient_condition", label, commutator_residual(ctx.A(mu, l), ctx.project(mu, l)));

      const CMatrix xk = ctx.random_in(rng, l);
      const CMatrix tk = commutator(xk, mu);
      const CMatrix dnk = ctx.dN_mu(mu, xk);
      const SkewExp g = exp_skew(ctx.random_in(rng, l));
      const CMatrix mu_g = g.u * mu * g.u.adjoint();
      const CMatrix x_g = g.u * x * g.u.adjoint();
      const CMatrix dn = ctx.dN_mu(mu, x);
      const CMatrix dn_g = ctx.dN_mu(mu_g, x_g);
      const CMatrix tangent = commutator(x, mu);
      const CMatrix da = ctx.dA(mu, tangent, l);
      for (int r = 1; r <= cfg.max_degree; ++r) {
        const Complex v = ctx.dtrace_poly(mu, dnk, l, r);
        const double scale = std::max({1.0, std::abs(ctx.dtrace_poly(mu, tk, l, r)),
                                       std::abs(ctx.dtrace_poly(mu, commutator(ctx.J(tk), mu), l, r))});
        out.acc.add("basic_form", label, std::abs(v) / scale);
        out.acc.add("equivariance", label,
                    rel_residual(ctx.dtrace_poly(mu, dn, l, r), ctx.dtrace_poly(mu_g, dn_g, l, r)));
        const Complex aroute = ctx.dtrace_poly(mu, tangent, l, r) - ctx.dtrace_poly(mu, da, l, r);
        out.acc.add("route_agreement", label, rel_residual(ctx.dtrace_poly(mu, dn, l, r), aroute));
      }
    }
  });
  return finish("basic-forms", ctx, cfg, trials);
}

SuiteReport suite_commutation(const GeomContext& ctx, const SuiteConfig& cfg) {
  const auto& levels = ctx.levels();
  const auto& b = ctx.rep().basis();
  struct Solver {
    std::vector<std::size_t> slots;
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
  };
  std::vector<Solver> solvers;
  for (const auto& l : levels) {
    Solver sv;
    sv.slots = ctx.level_slots(l);
    const auto n = static_cast<Eigen::Index>(sv.slots.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        gram(i, j) = ctx.rep().form(b.elements[sv.slots[static_cast<std::size_t>(i)]],
                                    b.elements[sv.slots[static_cast<std::size_t>(j)]]);
    sv.ldlt.compute(gram);
    if (sv.ldlt.info() != Eigen::Success || sv.ldlt.vectorD().cwiseAbs().minCoeff() < 1e-12)
      throw StructuralError("singular invariant form on " + l.spec.label);
    solvers.push_back(std::move(sv));
  }
  // Pairs (i, j) with k_j contained in k_i.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = 0; j < levels.size(); ++j)
      if (std::includes(levels[i].spec.roots.begin(), levels[i].spec.roots.end(), levels[j].spec.roots.begin(),
                        levels[j].spec.roots.end()))
        pairs.emplace_back(i, j);
  const int max_deg = std::min(cfg.max_degree, 3);

  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t, TrialResult& out) {
    const auto seed = trial_seed(cfg.seed, t);
    const OrbitSample s = random_orbit_point(ctx, seed, SampleMode::Generic);
    const CMatrix& mu = s.mu;
    // grads[l][s-1]: gradient in k_l of the level-l invariant of degree s.
    std::vector<std::vector<CMatrix>> grads(levels.size());
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const auto& sv = solvers[l];
      for (int sdeg = 1; sdeg <= max_deg; ++sdeg) {
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(sv.slots.size()));
        double imag = 0;
        for (std::size_t k = 0; k < sv.slots.size(); ++k) {
          const Complex v = ctx.dtrace_poly(mu, b.elements[sv.slots[k]], levels[l], sdeg);
          rhs[static_cast<Eigen::Index>(k)] = v.real();
          imag = std::max(imag, std::abs(v.imag()));
        }
        out.acc.add("real_invariant", levels[l].spec.label, imag / std::max(1.0, rhs.cwiseAbs().maxCoeff()));
        const Eigen::VectorXd coeff = sv.ldlt.solve(rhs);
        CMatrix g = CMatrix::Zero(ctx.dim(), ctx.dim());
        for (std::size_t k = 0; k < sv.slots.size(); ++k) g += coeff[static_cast<Eigen::Index>(k)] * b.elements[sv.slots[k]];
        grads[l].push_back(std::move(g));
      }
    }
    for (auto [i, j] : pairs) {
      const auto& li = levels[i];
      const std::string label = li.spec.label + " <- " + levels[j].spec.label;
      for (int sdeg = 1; sdeg <= max_deg; ++sdeg) {
        const CMatrix& xq = grads[j][static_cast<std::size_t>(sdeg - 1)];
        // KKS bracket of the two collective functions: (mu, [grad p, grad q]).
        for (int r = 1; r <= max_deg; ++r) {
          const CMatrix& xp = grads[i][static_cast<std::size_t>(r - 1)];
          const double kks = ctx.rep().form(mu, commutator(xp, xq));
          const double scale = std::max(1.0, max_abs(mu) * max_abs(xp) * max_abs(xq));
          out.acc.add("kks_bracket", label, std::abs(kks) / scale);
        }
        const CMatrix tq = commutator(xq, mu);
        const CMatrix dn = ctx.dN_mu(mu, xq);
        for (int r = 1; r <= max_deg; ++r) {
          const Complex v = ctx.dtrace_poly(mu, dn, li, r);
          const double scale = std::max({1.0, std::abs(ctx.dtrace_poly(mu, tq, li, r)),
                                         std::abs(ctx.dtrace_poly(mu, commutator(ctx.J(tq), mu), li, r))});
          out.acc.add("poisson_commutation", label, std::abs(v) / scale);
        }
      }
    }
  });
  return finish("commutation", ctx, cfg, trials);
}

SuiteReport suite_slice(const GeomContext& ctx, const SuiteConfig& cfg) {
  const auto& sl = ctx.slice();
  const std::size_t m = sl.y.size();
  std::vector<std::vector<double>> points;
  const double grid[5] = {0.0, std::numbers::pi / 8, std::numbers::pi / 4, 3 * std::numbers::pi / 8,
                          std::numbers::pi / 2};
  auto base_point = [&] {
    std::vector<double> a(m);
    for (std::size_t j = 0; j < m; ++j) a[j] = 0.1 * static_cast<double>(j + 1);
    return a;
  };
  if (m == 1) {
    for (double g : grid) points.push_back({g});
  } else {
    for (double g1 : grid)
      for (double g2 : grid) {
        auto a = base_point();
        a[0] = g1;
        a[1] = g2;
        points.push_back(a);
      }
  }
  const std::size_t grid_count = points.size();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, t));
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> a(m);
    for (auto& v : a) v = angle(rng);
    points.push_back(a);
  }
  const GeomLevel& kphi = ctx.k_phi_level();
  auto trials = run_trials(points.size(), cfg.threads, [&](std::size_t t, TrialResult& out) {
    const auto& a = points[t];
    const OrbitSample s = slice_point(ctx, a);
    out.acc.add("orbit_sample", "", s.backward_error);
    out.acc.add("slice_parametrization", kphi.spec.label, rel_residual(s.mu, slice_mu_closed_form(ctx, a)));
    CMatrix resum = CMatrix::Zero(ctx.dim(), ctx.dim());
    for (std::size_t j = 0; j < m; ++j) {
      const double f = slice_f(a[j]);
      resum += (f + f * f) * sl.ih[j];
    }
    const CMatrix xi = ctx.perp(s.mu, kphi);
    out.acc.add("J_bracket_resummation", kphi.spec.label, rel_residual(commutator(ctx.J(xi), xi), 2.0 * resum));
    out.acc.add("A_resummation", kphi.spec.label, rel_residual(ctx.A(s.mu, kphi), resum));
  });
  SuiteConfig shown = cfg;
  shown.trials = points.size();
  SuiteReport rep = finish("slice", ctx, shown, trials);
  // Slice constants c_j = i(h_j, rho_phi) against -2/(alpha_j, alpha_j).
  double worst = 0;
  for (std::size_t j = 0; j < m; ++j)
    worst = std::max(worst, rel_residual(ctx.rep().form_complex(sl.ih[j], ctx.rho()), Complex(to_double(sl.c[j]), 0)));
  rep.breakdown.push_back({"slice_constants", kphi.spec.label, worst});
  rep.max_residual = std::max(rep.max_residual, worst);
  rep.pass = rep.max_residual <= cfg.tolerance;
  rep.notes.push_back("grid points: " + std::to_string(grid_count) + ", random points: " + std::to_string(cfg.trials));
  std::string cs = "c_j:";
  for (const auto& c : sl.c) cs += " " + to_string(c);
  rep.notes.push_back(cs);
  rep.notes.push_back("(rho_phi, rho_phi) = " + to_string(rho_phi_norm(ctx.space())));
  return rep;
}

SuiteReport suite_kphi(const GeomContext& ctx, const SuiteConfig& cfg) {
  const auto& sl = ctx.slice();
  const GeomLevel& kphi = ctx.k_phi_level();
  const CMatrix& rho = ctx.rho();
  const auto& rep = ctx.rep();
  const double rr = to_double(rho_phi_norm(ctx.space()));
  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t, TrialResult& out) {
    const auto seed = trial_seed(cfg.seed, t);
    std::mt19937_64 rng(seed ^ 0x68e31da4ULL);
    const OrbitSample s = random_orbit_point(ctx, seed, SampleMode::Slice);
    const CMatrix& mu = s.mu;
    const CMatrix muk = ctx.project(mu, kphi);
    const CMatrix a_mat = ctx.A(mu, kphi);
    double p[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < sl.c.size(); ++j) {
      const double f = slice_f(s.slice[j]);
      const double c = to_double(sl.c[j]);
      p[1] += c * f;
      p[2] += c * f * f;
      p[3] += c * f * f * f;
    }
    const double i10 = rep.form(muk, rho);
    const double i20 = rep.form(muk, muk);
    const double i01 = rep.form(rho, a_mat);
    const double i11 = rep.form(muk, a_mat);
    out.acc.add("kphi_invariant.I10", kphi.spec.label, rel_residual(Complex(i10), Complex(rr + p[1])));
    out.acc.add("kphi_invariant.I20", kphi.spec.label, rel_residual(Complex(i20), Complex(rr + 2 * p[1] + 2 * p[2])));
    out.acc.add("kphi_invariant.I01", kphi.spec.label, rel_residual(Complex(i01), Complex(p[1] + p[2])));
    out.acc.add("kphi_invariant.I11", kphi.spec.label, rel_residual(Complex(i11), Complex(p[1] + 3 * p[2] + 2 * p[3])));
    out.acc.add("I01_relation", kphi.spec.label, rel_residual(Complex(i01), Complex(0.5 * (i20 - rr))));

    const CMatrix x = nondegenerate_probe(ctx, rng, mu);
    const CMatrix dmu = commutator(x, mu);
    const CMatrix nmu = ctx.dN_mu(mu, x);
    const double d10 = rep.form(dmu, rho);
    const double n10 = rep.form(nmu, rho);
    const double d20 = 2 * rep.form(muk, dmu);
    const double n20 = 2 * rep.form(muk, nmu);
    const double d01 = rep.form(rho, ctx.dA(mu, dmu, kphi));
    const double n01 = rep.form(rho, ctx.dA(mu, nmu, kphi));
    const double d11 = rep.form(ctx.project(dmu, kphi), a_mat) + rep.form(muk, ctx.dA(mu, dmu, kphi));
    out.acc.add("Nijenhuis_kphi.I10", kphi.spec.label, rel_residual(Complex(n10), Complex(d10 - 0.5 * d20)));
    out.acc.add("Nijenhuis_kphi.I20", kphi.spec.label,
                rel_residual(Complex(n20), Complex(d20 - (2.0 / 3.0) * d10 - (4.0 / 3.0) * d11)));
    const double dp1 = d10;
    const double dp2 = d01 - d10;
    const double dp3 = 0.5 * (d11 - dp1 - 3 * dp2);
    out.acc.add("Nijenhuis_kphi_symm.p1", kphi.spec.label, rel_residual(Complex(n10), Complex(-dp2)));
    out.acc.add("Nijenhuis_kphi_symm.p2", kphi.spec.label, rel_residual(Complex(n01 - n10), Complex(-(4.0 / 3.0) * dp3)));
  });
  SuiteReport report = finish("kphi", ctx, cfg, trials);
  // Base point: I10 = (rho, rho), I01 = 0.
  const double base = std::max(rel_residual(Complex(rep.form(rho, rho)), Complex(rr)),
                               std::abs(rep.form(rho, ctx.A(rho, kphi))));
  report.breakdown.push_back({"base_point", kphi.spec.label, base});
  report.max_residual = std::max(report.max_residual, base);
  report.pass = report.max_residual <= cfg.tolerance;
  return report;
}

SuiteReport suite_quadratic(const GeomContext& ctx, const SuiteConfig& cfg) {
  const Complex lam = ctx.lambda_phi();
  const GeomLevel& kphi = ctx.k_phi_level();
  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t, TrialResult& out) {
    const OrbitSample s = random_orbit_point(ctx, trial_seed(cfg.seed, t), SampleMode::Generic);
    const CMatrix id = CMatrix::Identity(ctx.dim(), ctx.dim());
    const CMatrix left = s.mu - lam * id;
    const CMatrix right = s.mu - lam * id + kI * id;
    const CMatrix q = left * right;
    out.acc.add("quadratic_relation", "", max_abs(q) / std::max(1.0, max_abs(left) * max_abs(right)));
    out.acc.add("general_corollary", kphi.spec.label, commutator_residual(ctx.project(s.mu, kphi), ctx.A(s.mu, kphi)));
    out.acc.add("orbit_sample", "", s.backward_error);
  });
  return finish("quadratic", ctx, cfg, trials);
}

std::vector<std::string> suite_names() {
  return {"explicit-formula", "basic-forms", "commutation", "slice", "kphi", "quadratic"};
}

SuiteReport run_suite(const std::string& name, const GeomContext& ctx, const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw UsageError("trials must be >= 1");
  if (!(cfg.tolerance > 0)) throw UsageError("tolerance must be > 0");
  if (name == "explicit-formula") return suite_explicit_formula(ctx, cfg);
  if (name == "basic-forms") return suite_basic_forms(ctx, cfg);
  if (name == "commutation") return suite_commutation(ctx, cfg);
  if (name == "slice") return suite_slice(ctx, cfg);
  if (name == "kphi") return suite_kphi(ctx, cfg);
  if (name == "quadratic") return suite_quadratic(ctx, cfg);
  throw UsageError("unknown suite '" + name + "'");
}

SpectrumReport nijenhuis_spectrum(const GeomContext& ctx, const OrbitSample& sample) {
  const GeomLevel& kphi = ctx.k_phi_level();
  const CMatrix m = block(ctx.project(sample.mu, kphi), kphi.w_plus);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(Complex(0, -1) * m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("spectrum: eigensolver failed");
  const double q = to_double(ctx.lambda_phi_im());
  SpectrumReport out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const Complex lambda(0.0, es.eigenvalues()[k]);
    out.eigenvalues.push_back(2.0 * kI * (lambda - Complex(0.0, q)));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
  if (sample.slice.empty()) return out;

  const auto& sl = ctx.slice();
  for (double a : sample.slice) out.minus_two_f.push_back(-2.0 * slice_f(a));
  for (int w : kphi.w_plus) {
    double v = 0;
    for (std::size_t j = 0; j < sl.c.size(); ++j)
      v += -2.0 * slice_f(sample.slice[j]) * to_double(ctx.rep().weights()[static_cast<std::size_t>(w)].dot(sl.pset.coroots[j]));
    out.predicted.push_back(v);
  }
  std::sort(out.predicted.begin(), out.predicted.end());
  for (std::size_t k = 0; k < out.predicted.size(); ++k)
    out.max_mismatch = std::max(out.max_mismatch, rel_residual(out.eigenvalues[k], Complex(out.predicted[k], 0)));
  for (double v : out.minus_two_f) {
    bool found = false;
    for (const auto& e : out.eigenvalues)
      if (rel_residual(e, Complex(v, 0)) <= 1e-9) found = true;
    out.contains_minus_two_f = out.contains_minus_two_f && found;
  }
  return out;
}

}  // namespace nijenhuis
