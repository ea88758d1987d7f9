#include "nijenhuis/repforge.hpp"

#include "nijenhuis/errors.hpp"

#include <bit>
#include <cmath>
#include <mutex>

namespace nijenhuis {

struct MatrixRep::Impl {
  std::shared_ptr<const RootSystem> system;
  RepKind kind = RepKind::Fundamental;
  std::string label;
  int dim = 0;
  std::vector<RatVec> weights;
  std::vector<IMatrix> raw;
  std::vector<CMatrix> root_vec;
  Rational kappa;
  double kappa_d = 0;
  std::vector<NormalizationCertificate> certs;
  CompactBasis basis;
  Eigen::MatrixXd gram;
  Eigen::LDLT<Eigen::MatrixXd> gram_ldlt;
  IMatrix pair_root;
  Eigen::MatrixXd jsign;
  mutable std::once_flag sc_once;
  mutable StructureConstants sc;
};

namespace {

const Complex kI(0.0, 1.0);

double trace_product(const CMatrix& a, const CMatrix& b, bool real_only, Complex* full) {
  const Complex t = a.transpose().cwiseProduct(b).sum();
  if (full) *full = t;
  return real_only ? t.real() : std::abs(t);
}

}  // namespace

std::string to_string(RepKind kind) { return kind == RepKind::Spin ? "spin" : "fundamental"; }

int MatrixRep::dim() const { return d_->dim; }
RepKind MatrixRep::kind() const { return d_->kind; }
const std::string& MatrixRep::label() const { return d_->label; }
const RootSystem& MatrixRep::system() const { return *d_->system; }
const std::vector<RatVec>& MatrixRep::weights() const { return d_->weights; }
const CMatrix& MatrixRep::root_vector(std::size_t root) const { return d_->root_vec.at(root); }
const IMatrix& MatrixRep::raw_root_vector(std::size_t root) const { return d_->raw.at(root); }
const CompactBasis& MatrixRep::basis() const { return d_->basis; }
const Rational& MatrixRep::trace_scale() const { return d_->kappa; }
const std::vector<NormalizationCertificate>& MatrixRep::certificates() const { return d_->certs; }
const Eigen::MatrixXd& MatrixRep::basis_gram() const { return d_->gram; }
const IMatrix& MatrixRep::weight_difference_roots() const { return d_->pair_root; }
const Eigen::MatrixXd& MatrixRep::complex_structure_signs() const { return d_->jsign; }

CMatrix MatrixRep::torus_matrix(const RatVec& h) const {
  CMatrix m = CMatrix::Zero(d_->dim, d_->dim);
  for (int a = 0; a < d_->dim; ++a) m(a, a) = kI * to_double(d_->weights[a].dot(h));
  return m;
}

double MatrixRep::form(const CMatrix& x, const CMatrix& y) const {
  return d_->kappa_d * trace_product(x, y, true, nullptr);
}

Complex MatrixRep::form_complex(const CMatrix& x, const CMatrix& y) const {
  Complex t;
  trace_product(x, y, true, &t);
  return d_->kappa_d * t;
}

CMatrix MatrixRep::to_matrix(const LieElement& x) const {
  const auto& b = d_->basis;
  if (static_cast<std::size_t>(x.coeffs.size()) != b.size())
    throw UsageError("LieElement has wrong number of coefficients");
  CMatrix m = CMatrix::Zero(d_->dim, d_->dim);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (x.coeffs[static_cast<Eigen::Index>(i)] != 0.0) m += x.coeffs[static_cast<Eigen::Index>(i)] * b.elements[i];
  return m;
}

LieElement MatrixRep::to_element(const CMatrix& m) const {
  const auto& b = d_->basis;
  Eigen::VectorXd g(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) g[static_cast<Eigen::Index>(i)] = form(m, b.elements[i]);
  return {d_->gram_ldlt.solve(g)};
}

const StructureConstants& MatrixRep::structure_constants() const {
  std::call_once(d_->sc_once, [this] {
    const auto& b = d_->basis;
    const std::size_t n = b.size();
    d_->sc.n = n;
    d_->sc.c.assign(n * n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const LieElement e = to_element(commutator(b.elements[i], b.elements[j]));
        for (std::size_t k = 0; k < n; ++k) {
          double v = e.coeffs[static_cast<Eigen::Index>(k)];
          if (std::abs(v) < 1e-13) v = 0.0;
          d_->sc.c[(i * n + j) * n + k] = v;
          d_->sc.c[(j * n + i) * n + k] = -v;
        }
      }
    }
  });
  return d_->sc;
}

LieElement MatrixRep::bracket(const LieElement& a, const LieElement& b) const {
  const auto& sc = structure_constants();
  LieElement out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sc.n))};
  for (std::size_t i = 0; i < sc.n; ++i) {
    const double ai = a.coeffs[static_cast<Eigen::Index>(i)];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < sc.n; ++j) {
      const double bj = b.coeffs[static_cast<Eigen::Index>(j)];
      if (bj == 0.0) continue;
      for (std::size_t k = 0; k < sc.n; ++k) out.coeffs[static_cast<Eigen::Index>(k)] += ai * bj * sc(i, j, k);
    }
  }
  return out;
}

Eigen::MatrixXd MatrixRep::killing_matrix() const {
  const auto& sc = structure_constants();
  const auto n = static_cast<Eigen::Index>(sc.n);
  std::vector<Eigen::MatrixXd> ad(sc.n, Eigen::MatrixXd::Zero(n, n));
  for (std::size_t i = 0; i < sc.n; ++i)
    for (std::size_t j = 0; j < sc.n; ++j)
      for (std::size_t k = 0; k < sc.n; ++k)
        ad[i](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = sc(i, j, k);
  Eigen::MatrixXd kill(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) kill(i, j) = (ad[static_cast<std::size_t>(i)] * ad[static_cast<std::size_t>(j)]).trace();
  return kill;
}

MatrixRep make_rep(const RootSystem& system, RepKind kind, std::string label, std::vector<RatVec> weights,
                   const std::map<std::size_t, IMatrix>& positive_raw) {
  auto d = std::make_shared<MatrixRep::Impl>();
  d->system = std::make_shared<const RootSystem>(system);
  d->kind = kind;
  d->label = std::move(label);
  d->dim = static_cast<int>(weights.size());
  d->weights = std::move(weights);
  const int dim = d->dim;
  const auto& roots = system.roots();
  for (const auto& w : d->weights)
    if (w.size() != system.ambient_dim()) throw StructuralError("weight dimension mismatch in " + d->label);

  // Weight differences.
  d->pair_root = IMatrix::Constant(dim, dim, -1);
  d->jsign = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const RatVec diff = d->weights[a] - d->weights[b];
      if (diff.is_zero()) {
        d->pair_root(a, b) = -2;
        continue;
      }
      if (auto r = system.find(diff)) {
        d->pair_root(a, b) = static_cast<int>(*r);
        d->jsign(a, b) = roots[*r].is_positive ? 1.0 : -1.0;
      }
    }
  }

  d->raw.assign(roots.size(), IMatrix());
  d->root_vec.assign(roots.size(), CMatrix());
  std::optional<Rational> kappa;
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (!roots[r].is_positive) continue;
    auto it = positive_raw.find(r);
    if (it == positive_raw.end()) throw StructuralError("missing root vector for " + roots[r].vec.to_string());
    const IMatrix& e = it->second;
    if (e.rows() != dim || e.cols() != dim) throw StructuralError("root vector has wrong size");
    if (e.isZero()) throw StructuralError("zero root vector for " + roots[r].vec.to_string());
    // Torus action: nonzero entries only where w_a - w_b = alpha.
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        if (e(a, b) != 0 && d->pair_root(a, b) != static_cast<int>(r))
          throw StructuralError("torus action on root vector " + roots[r].vec.to_string() +
                                " is not diagonal in the weight basis");
    const RatVec h = system.coroot_vector(roots[r].vec);
    const IMatrix comm = e * e.transpose() - e.transpose() * e;
    std::optional<Rational> lambda;
    Rational sum_sq = 0;
    for (int a = 0; a < dim; ++a) {
      const Rational wh = d->weights[a].dot(h);
      sum_sq += wh * wh;
      for (int b = 0; b < dim; ++b) {
        if (a != b && comm(a, b) != 0) throw StructuralError("[e, e^T] is not diagonal");
      }
      if (wh != 0) {
        const Rational ratio = Rational(comm(a, a)) / wh;
        if (lambda && *lambda != ratio) throw StructuralError("[e, e^T] is not proportional to the coroot");
        lambda = ratio;
      } else if (comm(a, a) != 0) {
        throw StructuralError("[e, e^T] is not proportional to the coroot");
      }
    }
    if (!lambda || *lambda <= 0) throw StructuralError("degenerate root-vector normalization");
    const Rational aa = system.inner(roots[r].vec, roots[r].vec);
    const Rational k = 4 / (aa * sum_sq);
    if (kappa && *kappa != k) throw StructuralError("trace form is not invariant across roots");
    kappa = k;
    // (e, e^dagger) = kappa tr(E E^T) / lambda.
    const Rational tr_eet = Rational((e.cast<long>().array() * e.cast<long>().array()).sum());
    NormalizationCertificate cert{r, *lambda, k * tr_eet / *lambda * aa};
    if (cert.pairing != 2) throw StructuralError("root normalization pairing differs from 2");
    d->certs.push_back(cert);

    const double s = 1.0 / std::sqrt(to_double(*lambda));
    d->raw[r] = e;
    d->raw[system.negative_of(r)] = e.transpose();
    d->root_vec[r] = e.cast<Complex>() * s;
    d->root_vec[system.negative_of(r)] = d->root_vec[r].adjoint();
  }
  d->kappa = *kappa;
  d->kappa_d = to_double(*kappa);

  // Compact basis.
  auto& cb = d->basis;
  const auto& simple = system.simple_roots();
  cb.torus_dim = simple.size();
  for (std::size_t j = 0; j < simple.size(); ++j) {
    CMatrix t = CMatrix::Zero(dim, dim);
    const RatVec h = system.coroot_vector(simple[j].vec);
    for (int a = 0; a < dim; ++a) t(a, a) = kI * to_double(d->weights[a].dot(h));
    cb.elements.push_back(t);
    cb.kind.push_back(CompactBasis::Kind::Torus);
    cb.source.push_back(j);
  }
  cb.x_slot.assign(roots.size(), kNoSlot);
  cb.y_slot.assign(roots.size(), kNoSlot);
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (!roots[r].is_positive) continue;
    const CMatrix& e = d->root_vec[r];
    cb.x_slot[r] = cb.elements.size();
    cb.elements.push_back(e - e.adjoint());
    cb.kind.push_back(CompactBasis::Kind::X);
    cb.source.push_back(r);
    cb.y_slot[r] = cb.elements.size();
    cb.elements.push_back(kI * (e + e.adjoint()));
    cb.kind.push_back(CompactBasis::Kind::Y);
    cb.source.push_back(r);
  }
  const auto n = static_cast<Eigen::Index>(cb.size());
  d->gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d->gram(i, j) = d->kappa_d * trace_product(cb.elements[static_cast<std::size_t>(i)],
                                                 cb.elements[static_cast<std::size_t>(j)], true, nullptr);
  d->gram_ldlt.compute(d->gram);
  if (d->gram_ldlt.info() != Eigen::Success) throw StructuralError("singular trace form on the compact basis");
  return MatrixRep(std::move(d));
}

namespace {

void put(IMatrix& m, int a, int b, int v) { m(a, b) += v; }

MatrixRep build_su(const RootSystem& sys) {
  const int N = sys.rank() + 1;
  std::vector<RatVec> weights;
  for (int a = 0; a < N; ++a) weights.push_back(unit_vector(static_cast<std::size_t>(N), static_cast<std::size_t>(a)));
  std::map<std::size_t, IMatrix> raw;
  for (int a = 0; a < N; ++a) {
    for (int b = a + 1; b < N; ++b) {
      IMatrix e = IMatrix::Zero(N, N);
      e(a, b) = 1;
      raw[sys.index_of(weights[a] - weights[b])] = e;
    }
  }
  return make_rep(sys, RepKind::Fundamental, "su(" + std::to_string(N) + ") fundamental", weights, raw);
}

// Basis v_1..v_m, v_{-1}..v_{-m}, then v_0 for odd N.
MatrixRep build_so_or_sp(const RootSystem& sys, bool symplectic) {
  const int m = sys.rank();
  const bool odd = sys.family() == Family::B;
  const int N = 2 * m + (odd ? 1 : 0);
  const auto dim_amb = sys.ambient_dim();
  auto pos = [](int i) { return i; };
  auto neg = [m](int i) { return m + i; };
  const int zero = 2 * m;
  std::vector<RatVec> weights(static_cast<std::size_t>(N), RatVec(dim_amb));
  for (int i = 0; i < m; ++i) {
    weights[static_cast<std::size_t>(pos(i))] = unit_vector(dim_amb, static_cast<std::size_t>(i));
    weights[static_cast<std::size_t>(neg(i))] = -unit_vector(dim_amb, static_cast<std::size_t>(i));
  }
  std::map<std::size_t, IMatrix> raw;
  auto eps = [&](int i) { return unit_vector(dim_amb, static_cast<std::size_t>(i)); };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      IMatrix e = IMatrix::Zero(N, N);
      put(e, pos(i), pos(j), 1);
      put(e, neg(j), neg(i), -1);
      raw[sys.index_of(eps(i) - eps(j))] = e;
      IMatrix f = IMatrix::Zero(N, N);
      put(f, pos(i), neg(j), 1);
      put(f, pos(j), neg(i), symplectic ? 1 : -1);
      raw[sys.index_of(eps(i) + eps(j))] = f;
    }
    if (symplectic) {
      IMatrix e = IMatrix::Zero(N, N);
      put(e, pos(i), neg(i), 1);
      raw[sys.index_of(Rational(2) * eps(i))] = e;
    } else if (odd) {
      IMatrix e = IMatrix::Zero(N, N);
      put(e, pos(i), zero, 1);
      put(e, zero, neg(i), -1);
      raw[sys.index_of(eps(i))] = e;
    }
  }
  const std::string label = symplectic ? "sp(" + std::to_string(N) + ") fundamental"
                                       : "so(" + std::to_string(N) + ") fundamental";
  return make_rep(sys, RepKind::Fundamental, label, weights, raw);
}

// Fermionic operators on bitmask states of m modes.
int sign_below(unsigned state, int j) { return std::popcount(state & ((1u << j) - 1u)) % 2 ? -1 : 1; }

IMatrix annihilator(int m, int j) {
  const int dim = 1 << m;
  IMatrix a = IMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    const auto us = static_cast<unsigned>(s);
    if (us & (1u << j)) a(static_cast<int>(us & ~(1u << j)), s) = sign_below(us, j);
  }
  return a;
}

IMatrix parity_matrix(int m) {
  const int dim = 1 << m;
  IMatrix p = IMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) p(s, s) = std::popcount(static_cast<unsigned>(s)) % 2 ? -1 : 1;
  return p;
}

MatrixRep build_spin(const RootSystem& sys, SpinSummand summand) {
  const bool odd = sys.family() == Family::B;
  if (!odd && sys.family() != Family::D) throw UsageError("spin representation needs an orthogonal algebra");
  const int m = sys.rank();
  const int N = 2 * m + (odd ? 1 : 0);
  if (N < 5) throw UsageError("spin representation requires so(N) with N >= 5");
  const int full = 1 << m;
  const auto dim_amb = sys.ambient_dim();

  std::vector<int> states;
  for (int s = 0; s < full; ++s) {
    const bool even = std::popcount(static_cast<unsigned>(s)) % 2 == 0;
    if (odd || summand == SpinSummand::Full || even) states.push_back(s);
  }
  const int dim = static_cast<int>(states.size());
  std::vector<RatVec> weights;
  for (int s : states) {
    RatVec w(dim_amb);
    for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(j)] = (s >> j) & 1 ? Rational(-1, 2) : Rational(1, 2);
    weights.push_back(w);
  }
  std::vector<IMatrix> a;
  for (int j = 0; j < m; ++j) a.push_back(annihilator(m, j));
  const IMatrix parity = parity_matrix(m);
  auto restrict = [&](const IMatrix& big) {
    IMatrix out(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) out(r, c) = big(states[static_cast<std::size_t>(r)], states[static_cast<std::size_t>(c)]);
    return out;
  };
  auto eps = [&](int i) { return unit_vector(dim_amb, static_cast<std::size_t>(i)); };
  std::map<std::size_t, IMatrix> raw;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      raw[sys.index_of(eps(i) - eps(j))] = restrict(a[static_cast<std::size_t>(j)].transpose() * a[static_cast<std::size_t>(i)]);
      raw[sys.index_of(eps(i) + eps(j))] = restrict(a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)]);
    }
    if (odd) raw[sys.index_of(eps(i))] = restrict(a[static_cast<std::size_t>(i)] * parity);
  }
  std::string label = "so(" + std::to_string(N) + ") spin";
  if (!odd && summand == SpinSummand::HighestWeight) label += " (half-spin)";
  return make_rep(sys, RepKind::Spin, label, weights, raw);
}

}  // namespace

MatrixRep fundamental_rep(const RootSystem& system) {
  switch (system.family()) {
    case Family::A: return build_su(system);
    case Family::B:
    case Family::D: return build_so_or_sp(system, false);
    case Family::C: return build_so_or_sp(system, true);
    default: throw UsageError("no matrix representation for " + system.name());
  }
}

MatrixRep fundamental_rep(ClassicalAlgebra algebra, int size) {
  switch (algebra) {
    case ClassicalAlgebra::SU:
      if (size < 2) throw ConfigError("su(n) needs n >= 2");
      return build_su(build_root_system(Family::A, size - 1));
    case ClassicalAlgebra::SO:
      if (size < 5) throw ConfigError("so(N) fundamental is supported for N >= 5");
      return build_so_or_sp(size % 2 ? build_root_system(Family::B, size / 2) : build_root_system(Family::D, size / 2),
                            false);
    case ClassicalAlgebra::SP:
      if (size < 2 || size % 2) throw ConfigError("sp(2n) needs an even size >= 2");
      return build_so_or_sp(build_root_system(Family::C, size / 2), true);
  }
  throw ConfigError("unknown algebra");
}

MatrixRep spin_rep(const RootSystem& system, SpinSummand summand) { return build_spin(system, summand); }

MatrixRep spin_rep(int N, SpinSummand summand) {
  if (N < 5) throw UsageError("spin representation requires so(N) with N >= 5");
  return build_spin(N % 2 ? build_root_system(Family::B, N / 2) : build_root_system(Family::D, N / 2), summand);
}

MatrixRep rep_for_space(const SpaceDescriptor& space, RepKind kind) {
  if (!space.tag().is_classical())
    throw UsageError("no matrix representation for " + space.name() + " (exceptional algebra)");
  if (kind == RepKind::Spin) {
    if (space.tag().kind != SpaceKind::BDI) throw UsageError("spin representation is only available for BDI");
    return spin_rep(space.system());
  }
  return fundamental_rep(space.system());
}

CliffordModule clifford_module(int N) {
  if (N < 2) throw UsageError("Clifford module needs N >= 2");
  CliffordModule cm;
  cm.N = N;
  cm.m = N / 2;
  const int m = cm.m;
  cm.parity = parity_matrix(m).cast<double>();
  for (int j = 0; j < m; ++j) {
    const CMatrix a = annihilator(m, j).cast<Complex>();
    const CMatrix ad = a.adjoint();
    cm.gammas.push_back(a + ad);
    cm.gammas.push_back(kI * (ad - a));
  }
  if (N % 2) cm.gammas.push_back(cm.parity.cast<Complex>());
  return cm;
}

CMatrix CliffordModule::spin_of(const Eigen::MatrixXd& x) const {
  if (x.rows() != N || x.cols() != N) throw UsageError("spin_of: matrix size mismatch");
  const auto dim = gammas.front().rows();
  CMatrix s = CMatrix::Zero(dim, dim);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (x(a, b) != 0.0) s += (x(a, b) / 8.0) * commutator(gammas[static_cast<std::size_t>(a)], gammas[static_cast<std::size_t>(b)]);
  return s;
}

std::vector<CMatrix> root_vectors(const MatrixRep& rep) {
  std::vector<CMatrix> out;
  for (std::size_t r = 0; r < rep.system().roots().size(); ++r) out.push_back(rep.root_vector(r));
  return out;
}

CMatrix rho_phi_matrix(const MatrixRep& rep, const SpaceDescriptor& space) {
  return rep.torus_matrix(space.rho_phi_coweight());
}

LieElement J_apply(const LieElement& x, const MatrixRep& rep) {
  const auto& b = rep.basis();
  LieElement out{Eigen::VectorXd::Zero(x.coeffs.size())};
  for (std::size_t r = 0; r < b.x_slot.size(); ++r) {
    if (b.x_slot[r] == kNoSlot) continue;
    const auto xs = static_cast<Eigen::Index>(b.x_slot[r]);
    const auto ys = static_cast<Eigen::Index>(b.y_slot[r]);
    out.coeffs[ys] = x.coeffs[xs];
    out.coeffs[xs] = -x.coeffs[ys];
  }
  return out;
}

LieElement project(const LieElement& x, const MatrixRep& rep, const SubalgebraSpec& sub) {
  const auto& b = rep.basis();
  LieElement out{Eigen::VectorXd::Zero(x.coeffs.size())};
  for (std::size_t i = 0; i < b.torus_dim; ++i) out.coeffs[static_cast<Eigen::Index>(i)] = x.coeffs[static_cast<Eigen::Index>(i)];
  for (auto r : sub.roots) {
    if (b.x_slot[r] == kNoSlot) continue;
    const auto xs = static_cast<Eigen::Index>(b.x_slot[r]);
    const auto ys = static_cast<Eigen::Index>(b.y_slot[r]);
    out.coeffs[xs] = x.coeffs[xs];
    out.coeffs[ys] = x.coeffs[ys];
  }
  return out;
}

Eigen::MatrixXd subalgebra_mask(const MatrixRep& rep, const SubalgebraSpec& sub) {
  std::vector<bool> in(rep.system().roots().size(), false);
  for (auto r : sub.roots) in[r] = true;
  const auto& pr = rep.weight_difference_roots();
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(pr.rows(), pr.cols());
  for (Eigen::Index a = 0; a < pr.rows(); ++a)
    for (Eigen::Index b = 0; b < pr.cols(); ++b) {
      const int r = pr(a, b);
      if (r == -2 || (r >= 0 && in[static_cast<std::size_t>(r)])) mask(a, b) = 1.0;
    }
  return mask;
}

CMatrix apply_J(const MatrixRep& rep, const CMatrix& x) {
  return kI * x.cwiseProduct(rep.complex_structure_signs().cast<Complex>());
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace nijenhuis
