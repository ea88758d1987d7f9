#include "nijenhuis/minimality.hpp"

#include "nijenhuis/errors.hpp"
#include "nijenhuis/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <set>

namespace nijenhuis {

namespace {

constexpr double kClusterGap = 1e-8;

QMatrix stack_restricted(const std::vector<const IMatrix*>& mats, const std::vector<int>& idx) {
  const std::size_t n = idx.size();
  QMatrix q(mats.size() * n, n);
  for (std::size_t m = 0; m < mats.size(); ++m)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) q(m * n + r, c) = (*mats[m])(idx[r], idx[c]);
  return q;
}

}  // namespace

PhiGrading grade_by_rho(const MatrixRep& rep, const SpaceDescriptor& space) {
  const auto& h = space.rho_phi_coweight();
  const int dim = rep.dim();
  std::vector<Rational> q(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) q[static_cast<std::size_t>(a)] = rep.weights()[static_cast<std::size_t>(a)].dot(h);

  // Numerical eigen-decomposition of -i R(rho_phi) must reproduce the exact spectrum.
  const CMatrix r = rho_phi_matrix(rep, space);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(Complex(0, -1) * r, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw StructuralError("R(rho_phi) could not be diagonalized");
  std::vector<double> numeric(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  std::vector<double> exact;
  for (const auto& x : q) exact.push_back(to_double(x));
  std::sort(numeric.begin(), numeric.end());
  std::sort(exact.begin(), exact.end());
  for (int a = 0; a < dim; ++a)
    if (std::abs(numeric[static_cast<std::size_t>(a)] - exact[static_cast<std::size_t>(a)]) > kClusterGap)
      throw StructuralError("R(rho_phi) spectrum disagrees with the weight data");

  PhiGrading g;
  g.lambda_phi_im = *std::max_element(q.begin(), q.end());
  g.level_of.resize(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    const Rational l = g.lambda_phi_im - q[static_cast<std::size_t>(a)];
    if (boost::multiprecision::denominator(l) != 1)
      throw StructuralError("R(rho_phi) eigenvalues do not form a string Lambda - i l");
    const int level = static_cast<int>(l.convert_to<long>());
    g.level_of[static_cast<std::size_t>(a)] = level;
    if (static_cast<std::size_t>(level) >= g.levels.size()) g.levels.resize(static_cast<std::size_t>(level) + 1);
    g.levels[static_cast<std::size_t>(level)].push_back(a);
  }
  return g;
}

MinimalityVerdict is_phi_minimal(const MatrixRep& rep, const SpaceDescriptor& space) {
  const PhiGrading g = grade_by_rho(rep, space);
  MinimalityVerdict v;
  v.lambda_phi_im = g.lambda_phi_im;
  for (std::size_t l = 0; l < g.levels.size(); ++l)
    if (!g.levels[l].empty()) {
      ++v.num_levels;
      v.eigenvalues_im.push_back(g.lambda_phi_im - Rational(static_cast<long>(l)));
    }
  v.dim_plus = g.levels.empty() ? 0 : g.levels[0].size();
  v.dim_minus = static_cast<std::size_t>(rep.dim()) - v.dim_plus;

  std::vector<const IMatrix*> raising;
  for (auto r : space.compact_positive()) raising.push_back(&rep.raw_root_vector(r));
  if (raising.empty() || v.dim_plus == 0) {
    v.top_components = v.dim_plus;
  } else {
    QMatrix stacked = stack_restricted(raising, g.levels[0]);
    v.top_components = v.dim_plus - rank(std::move(stacked));
  }

  if (v.num_levels != 2) {
    v.witness = "R(rho_phi) has " + std::to_string(v.num_levels) + " distinct eigenvalues";
  } else if (g.levels.size() != 2) {
    v.witness = "eigenvalue levels are not consecutive";
  } else if (v.top_components != 1) {
    v.witness = "V_0 splits into " + std::to_string(v.top_components) + " k_phi-components";
  } else {
    v.is_minimal = true;
  }
  if (v.is_minimal) {
    const CMatrix r = rho_phi_matrix(rep, space);
    const Complex lam = g.lambda_phi();
    const CMatrix id = CMatrix::Identity(rep.dim(), rep.dim());
    v.quadratic_residual = max_abs((r - lam * id) * (r - lam * id + Complex(0, 1) * id));
  }
  return v;
}

std::vector<int> top_eigenspace(const MatrixRep& rep, const std::vector<RatVec>& gradings) {
  std::vector<int> current(static_cast<std::size_t>(rep.dim()));
  for (int a = 0; a < rep.dim(); ++a) current[static_cast<std::size_t>(a)] = a;
  for (const auto& h : gradings) {
    Rational best;
    bool first = true;
    for (int a : current) {
      const Rational v = rep.weights()[static_cast<std::size_t>(a)].dot(h);
      if (first || v > best) best = v;
      first = false;
    }
    std::vector<int> next;
    for (int a : current)
      if (rep.weights()[static_cast<std::size_t>(a)].dot(h) == best) next.push_back(a);
    current = std::move(next);
  }
  return current;
}

ChainMinimality chain_minimality(const MatrixRep& rep, const SpaceDescriptor& space, const ThimmChain& chain) {
  ChainMinimality out;
  const PhiGrading g = grade_by_rho(rep, space);
  out.v_plus = g.levels.empty() ? std::vector<int>{} : g.levels[0];
  const auto& roots = rep.system().roots();
  out.all_minimal = true;
  for (std::size_t li = 0; li < chain.levels.size(); ++li) {
    const auto& level = chain.levels[li];
    ChainLevelMinimality lm;
    lm.label = level.label;
    lm.w_plus = top_eigenspace(rep, level.gradings);
    std::vector<bool> plus(static_cast<std::size_t>(rep.dim()), false);
    for (int a : lm.w_plus) plus[static_cast<std::size_t>(a)] = true;
    for (int a = 0; a < rep.dim(); ++a)
      if (!plus[static_cast<std::size_t>(a)]) lm.w_minus.push_back(a);
    if (!lm.w_plus.empty())
      for (const auto& h : level.gradings) lm.center_eigenvalues_im.push_back(rep.weights()[static_cast<std::size_t>(lm.w_plus.front())].dot(h));

    std::vector<bool> in_sub(roots.size(), false);
    for (auto r : level.roots) in_sub[r] = true;
    lm.invariant = true;
    lm.block_shape = true;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      const IMatrix& e = rep.raw_root_vector(r);
      for (int a = 0; a < rep.dim(); ++a) {
        for (int b = 0; b < rep.dim(); ++b) {
          if (e(a, b) == 0) continue;
          const bool pa = plus[static_cast<std::size_t>(a)];
          const bool pb = plus[static_cast<std::size_t>(b)];
          if (in_sub[r]) {
            // k_i preserves W_+ and W_-.
            if (pa != pb) lm.invariant = false;
          } else {
            // Perp roots: no ++ block; positive roots send W_- to W_+ only.
            if (pa && pb) lm.block_shape = false;
            if (roots[r].is_positive && !pa && pb) lm.block_shape = false;
          }
        }
      }
    }
    lm.minimal = lm.invariant && lm.block_shape && !lm.w_plus.empty() && !lm.w_minus.empty();
    if (!lm.invariant) lm.detail = "W_+ is not invariant under the level subalgebra";
    else if (!lm.block_shape) lm.detail = "complement does not have the off-diagonal block shape";
    else if (!lm.minimal) lm.detail = "degenerate W_+/W_- split";
    else lm.detail = "minimal";
    if (!lm.minimal && !out.first_failure) out.first_failure = li;
    out.all_minimal = out.all_minimal && lm.minimal;
    out.levels.push_back(std::move(lm));
  }
  return out;
}

ScanResult weight_condition_scan(const SpaceDescriptor& space, std::optional<long> bound_override, unsigned threads) {
  const auto kind = space.tag().kind;
  if (kind != SpaceKind::EIII && kind != SpaceKind::EVII)
    throw UsageError("weight_condition_scan is defined for EIII and EVII");
  const auto& sys = space.system();
  const auto& nc = space.noncompact_positive();
  if (nc.empty()) throw UsageError("no noncompact roots to scan against");
  const auto& simple = sys.simple_roots();
  const std::size_t r = simple.size();

  // Fundamental weights.
  std::vector<RatVec> fund;
  for (std::size_t i = 0; i < r; ++i) {
    DominantLabels l{std::vector<long>(r, 0)};
    l.labels[i] = 1;
    fund.push_back(weight_from_labels(l, sys));
  }

  ScanResult res;
  for (std::size_t i = 0; i < r; ++i) {
    std::optional<long> best;
    std::size_t who = 0;
    for (auto a : nc) {
      const Rational p = sys.inner(fund[i], sys.roots()[a].vec);
      if (p < 0) throw StructuralError("fundamental weight pairs negatively with a positive root");
      if (p == 0) continue;
      const long b = (Rational(1) / p).convert_to<long>();  // floor for positive rationals
      if (!best || b < *best) {
        best = b;
        who = a;
      }
    }
    if (!best) throw StructuralError("label " + std::to_string(i + 1) + " is unbounded by the weight condition");
    res.bounds.push_back(bound_override ? std::max(*best, *bound_override) : *best);
    res.bound_witness.push_back(who);
  }

  std::size_t total = 1;
  for (auto b : res.bounds) total *= static_cast<std::size_t>(b + 1);
  res.candidates = total;
  std::vector<std::optional<ScanSurvivor>> slots(total);
  parallel_for(total, threads, [&](std::size_t code) {
    DominantLabels labels{std::vector<long>(r, 0)};
    std::size_t c = code;
    for (std::size_t i = r; i-- > 0;) {
      const auto base = static_cast<std::size_t>(res.bounds[i] + 1);
      labels.labels[i] = static_cast<long>(c % base);
      c /= base;
    }
    RatVec lambda(sys.ambient_dim());
    for (std::size_t i = 0; i < r; ++i)
      if (labels.labels[i]) lambda += Rational(labels.labels[i]) * fund[i];
    for (auto a : nc) {
      const Rational p = sys.inner(lambda, sys.roots()[a].vec);
      if (p != 0 && p != 1) return;
    }
    slots[code] = ScanSurvivor{labels, lambda, lambda.is_zero()};
  });
  for (auto& s : slots)
    if (s) res.survivors.push_back(std::move(*s));
  return res;
}

std::optional<std::pair<std::size_t, std::size_t>> second_order_witness(const RatVec& lambda,
                                                                         const SpaceDescriptor& space) {
  const auto& sys = space.system();
  std::vector<std::size_t> ones;
  for (auto a : space.noncompact_positive())
    if (sys.inner(lambda, sys.roots()[a].vec) == 1) ones.push_back(a);
  for (std::size_t i = 0; i < ones.size(); ++i)
    for (std::size_t j = i + 1; j < ones.size(); ++j)
      if (sys.inner(sys.roots()[ones[i]].vec, sys.roots()[ones[j]].vec) == 0) return std::make_pair(ones[i], ones[j]);
  return std::nullopt;
}

bool validate_witness(const RatVec& lambda, const RatVec& alpha, const RatVec& beta, const SpaceDescriptor& space) {
  const auto& sys = space.system();
  auto noncompact_positive = [&](const RatVec& v) {
    auto idx = sys.find(v);
    if (!idx) return false;
    return std::find(space.noncompact_positive().begin(), space.noncompact_positive().end(), *idx) !=
           space.noncompact_positive().end();
  };
  return noncompact_positive(alpha) && noncompact_positive(beta) && sys.inner(lambda, alpha) == 1 &&
         sys.inner(lambda, beta) == 1 && sys.inner(alpha, beta) == 0;
}

NogoCertificate nogo_report(Family family, unsigned threads) {
  SpaceKind kind;
  if (family == Family::E6) kind = SpaceKind::EIII;
  else if (family == Family::E7) kind = SpaceKind::EVII;
  else
    throw UsageError("phi-minimal representations exist for classical families; use `minimal check` instead");
  const SpaceDescriptor space = build_space({kind, 0, 0});
  NogoCertificate cert;
  cert.system = space.system().name();
  cert.space = space.name();
  cert.scan = weight_condition_scan(space, std::nullopt, threads);
  cert.no_minimal_rep = true;
  for (const auto& s : cert.scan.survivors) {
    NogoEntry e{s, std::nullopt};
    if (!s.trivial) {
      e.witness = second_order_witness(s.weight, space);
      const auto& roots = space.system().roots();
      if (!e.witness || !validate_witness(s.weight, roots[e.witness->first].vec, roots[e.witness->second].vec, space))
        cert.no_minimal_rep = false;
    }
    cert.entries.push_back(std::move(e));
  }
  return cert;
}

}  // namespace nijenhuis
