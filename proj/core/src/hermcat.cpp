#include "nijenhuis/hermcat.hpp"

#include "nijenhuis/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace nijenhuis {

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string pow_label(const std::string& base, int e) {
  if (e <= 0) return "";
  return e == 1 ? base : base + "^" + std::to_string(e);
}

std::string join_plus(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += "+";
    out += p;
  }
  return out;
}

// Coweight separating the first p coordinates from coordinate p+1 inside su(p+1).
RatVec su_coweight(std::size_t dim, std::size_t p) {
  RatVec h(dim);
  for (std::size_t a = 0; a < p; ++a) h[a] = Rational(1, static_cast<long>(p + 1));
  h[p] = Rational(-static_cast<long>(p), static_cast<long>(p + 1));
  return h;
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::AIII: return "AIII";
    case SpaceKind::BDI: return "BDI";
    case SpaceKind::DIII: return "DIII";
    case SpaceKind::CI: return "CI";
    case SpaceKind::EIII: return "EIII";
    case SpaceKind::EVII: return "EVII";
  }
  return "?";
}

SpaceKind parse_space_kind(const std::string& text) {
  const auto u = upper(text);
  for (auto k : {SpaceKind::AIII, SpaceKind::BDI, SpaceKind::DIII, SpaceKind::CI, SpaceKind::EIII,
                 SpaceKind::EVII})
    if (u == to_string(k)) return k;
  throw UsageError("unknown space '" + text + "' (expected AIII, BDI, DIII, CI, EIII or EVII)");
}

std::string SpaceTag::to_string() const {
  switch (kind) {
    case SpaceKind::AIII: return "AIII(" + std::to_string(n) + "," + std::to_string(k) + ")";
    case SpaceKind::BDI:
    case SpaceKind::DIII:
    case SpaceKind::CI: return nijenhuis::to_string(kind) + "(" + std::to_string(n) + ")";
    default: return nijenhuis::to_string(kind);
  }
}

int table_rank(const SpaceTag& tag) {
  switch (tag.kind) {
    case SpaceKind::AIII: return std::min(tag.k, tag.n + 1 - tag.k);
    case SpaceKind::BDI: return 2;
    case SpaceKind::DIII: return tag.n / 2;
    case SpaceKind::CI: return tag.n;
    case SpaceKind::EIII: return 2;
    case SpaceKind::EVII: return 3;
  }
  return 0;
}

std::vector<SpaceTag> default_catalog() {
  return {{SpaceKind::AIII, 5, 2}, {SpaceKind::BDI, 8, 0}, {SpaceKind::DIII, 5, 0},
          {SpaceKind::CI, 4, 0},   {SpaceKind::EIII, 0, 0}, {SpaceKind::EVII, 0, 0}};
}

int SpaceDescriptor::phi_coefficient(std::size_t root) const {
  return system_.roots().at(root).simple_coefficients[phi_index_];
}

std::vector<Root> SpaceDescriptor::classified_roots() const {
  std::vector<Root> out = system_.roots();
  for (std::size_t i = 0; i < out.size(); ++i) out[i].is_compact = is_compact_root(i);
  return out;
}

SubalgebraSpec SpaceDescriptor::k_phi() const {
  return subalgebra_from_gradings(system_, {h_}, k_phi_label_);
}

SpaceDescriptor build_space(const SpaceTag& tag) {
  SpaceDescriptor s;
  s.tag_ = tag;
  auto bad = [&](const std::string& why) {
    throw ConfigError("invalid space " + tag.to_string() + ": " + why);
  };
  const int n = tag.n;
  switch (tag.kind) {
    case SpaceKind::AIII: {
      if (n < 1 || n > 24) bad("need 1 <= n <= 24");
      if (tag.k < 1 || tag.k > n) bad("need 1 <= k <= n");
      s.system_ = build_root_system(Family::A, n);
      s.phi_index_ = static_cast<std::size_t>(tag.k - 1);
      s.algebra_ = "su(" + std::to_string(n + 1) + ")";
      s.k_phi_label_ = "s(u(" + std::to_string(tag.k) + ")+u(" + std::to_string(n + 1 - tag.k) + "))";
      break;
    }
    case SpaceKind::BDI: {
      if (n < 3 || n > 30) bad("need 3 <= n <= 30");
      const int N = n + 2;
      s.system_ = N % 2 ? build_root_system(Family::B, (N - 1) / 2) : build_root_system(Family::D, N / 2);
      s.phi_index_ = 0;
      s.algebra_ = "so(" + std::to_string(N) + ")";
      s.k_phi_label_ = "so(" + std::to_string(n) + ")+so(2)";
      break;
    }
    case SpaceKind::DIII: {
      if (n < 3 || n > 16) bad("need 3 <= n <= 16");
      s.system_ = build_root_system(Family::D, n);
      s.phi_index_ = static_cast<std::size_t>(n - 1);
      s.algebra_ = "so(" + std::to_string(2 * n) + ")";
      s.k_phi_label_ = "u(" + std::to_string(n) + ")";
      break;
    }
    case SpaceKind::CI: {
      if (n < 1 || n > 16) bad("need 1 <= n <= 16");
      s.system_ = build_root_system(Family::C, n);
      s.phi_index_ = static_cast<std::size_t>(n - 1);
      s.algebra_ = "sp(" + std::to_string(2 * n) + ")";
      s.k_phi_label_ = "u(" + std::to_string(n) + ")";
      break;
    }
    case SpaceKind::EIII:
      s.system_ = build_root_system(Family::E6, 6);
      s.phi_index_ = 5;
      s.algebra_ = "e6";
      s.k_phi_label_ = "so(10)+so(2)";
      break;
    case SpaceKind::EVII:
      s.system_ = build_root_system(Family::E7, 7);
      s.phi_index_ = 0;
      s.algebra_ = "e7";
      s.k_phi_label_ = "e6+so(2)";
      break;
  }
  s.rank_ = table_rank(tag);

  const auto& simple = s.system_.simple_roots();
  std::vector<Rational> rhs(simple.size());
  rhs[s.phi_index_] = 1;
  auto c = solve(s.system_.gram(), rhs);
  if (!c) throw StructuralError("singular Gram matrix for " + s.system_.name());
  s.omega_ = RatVec(s.system_.ambient_dim());
  for (std::size_t j = 0; j < simple.size(); ++j) s.omega_ += (*c)[j] * simple[j].vec;
  s.h_ = s.system_.form_scale() * s.omega_;

  for (auto idx : s.system_.positive_indices()) {
    const int c_phi = s.phi_coefficient(idx);
    if (c_phi == 0) {
      s.compact_pos_.push_back(idx);
    } else if (c_phi == 1) {
      s.noncompact_pos_.push_back(idx);
    } else {
      throw StructuralError("positive root with phi-coefficient " + std::to_string(c_phi) + " in " +
                            tag.to_string());
    }
  }
  return s;
}

RatVec rho_phi(const SpaceDescriptor& space) { return space.rho_phi_coords(); }

Rational rho_phi_norm(const SpaceDescriptor& space) {
  const auto& w = space.rho_phi_coords();
  return -space.system().inner(w, w);
}

SubalgebraSpec subalgebra_from_gradings(const RootSystem& system, std::vector<RatVec> gradings,
                                        std::string label) {
  SubalgebraSpec out;
  out.label = std::move(label);
  for (std::size_t i = 0; i < system.roots().size(); ++i) {
    const auto& v = system.roots()[i].vec;
    bool keep = true;
    for (const auto& g : gradings) {
      if (v.dot(g) != 0) {
        keep = false;
        break;
      }
    }
    if (keep) out.roots.push_back(i);
  }
  out.gradings = std::move(gradings);
  return out;
}

OrthogonalSet maximal_orthogonal_set(const SpaceDescriptor& space) {
  const auto& sys = space.system();
  const std::size_t phi = sys.index_of(space.phi().vec);
  std::vector<std::size_t> candidates = space.noncompact_positive();
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return sys.roots()[b].vec < sys.roots()[a].vec;
  });

  auto compatible_with = [&](std::size_t c, const std::vector<std::size_t>& chosen) {
    for (auto p : chosen) {
      if (p == c) return false;
      if (sys.is_root(sys.roots()[c].vec - sys.roots()[p].vec)) return false;
    }
    return true;
  };

  OrthogonalSet out;
  out.roots.push_back(phi);
  for (auto c : candidates)
    if (compatible_with(c, out.roots)) out.roots.push_back(c);

  // Exhaustive maximality certificate.
  for (auto c : space.noncompact_positive()) {
    if (std::find(out.roots.begin(), out.roots.end(), c) != out.roots.end()) continue;
    if (compatible_with(c, out.roots))
      throw StructuralError("orthogonal set is not maximal in " + space.name());
  }
  if (static_cast<int>(out.roots.size()) != space.rank())
    throw StructuralError("orthogonal set size " + std::to_string(out.roots.size()) +
                          " differs from rank " + std::to_string(space.rank()) + " in " + space.name());

  for (auto r : out.roots) out.coroots.push_back(sys.coroot_vector(sys.roots()[r].vec));
  out.cartan_complement_dim = static_cast<std::size_t>(sys.rank()) - out.roots.size();
  return out;
}

ThimmChain thimm_chain(const SpaceDescriptor& space) {
  ThimmChain chain;
  const auto& sys = space.system();
  const std::size_t dim = sys.ambient_dim();
  const int n = space.tag().n;
  std::vector<RatVec> gradings;
  switch (space.tag().kind) {
    case SpaceKind::AIII: {
      const int N = n + 1;
      for (int i = 1; i <= N - 1; ++i) {
        const auto p = static_cast<std::size_t>(N - i);
        gradings.push_back(su_coweight(dim, p));
        const std::string label =
            "s(" + join_plus({"u(" + std::to_string(p) + ")", pow_label("u(1)", i)}) + ")";
        chain.levels.push_back(subalgebra_from_gradings(sys, gradings, label));
      }
      break;
    }
    case SpaceKind::BDI: {
      const int m = static_cast<int>(dim);
      const int N = n + 2;
      for (int j = 1; j <= m - 1; ++j) {
        gradings.push_back(unit_vector(dim, static_cast<std::size_t>(j - 1)));
        const int rest = N - 2 * j;
        const std::string label =
            join_plus({rest >= 2 ? "so(" + std::to_string(rest) + ")" : "", pow_label("so(2)", j)});
        chain.levels.push_back(subalgebra_from_gradings(sys, gradings, label));
      }
      break;
    }
    case SpaceKind::DIII:
    case SpaceKind::CI: {
      gradings.push_back(space.rho_phi_coweight());
      chain.levels.push_back(subalgebra_from_gradings(sys, gradings, "u(" + std::to_string(n) + ")"));
      for (int i = 2; i <= n; ++i) {
        const auto p = static_cast<std::size_t>(n - i + 1);
        gradings.push_back(su_coweight(dim, p));
        const std::string label = join_plus({p >= 2 ? "u(" + std::to_string(p) + ")" : "u(1)",
                                             pow_label("u(1)", i - 1)});
        chain.levels.push_back(subalgebra_from_gradings(sys, gradings, label));
      }
      break;
    }
    case SpaceKind::EIII:
    case SpaceKind::EVII:
      chain.levels.push_back(space.k_phi());
      chain.truncated = true;
      break;
  }
  return chain;
}

CompatCertificate check_compat(const std::vector<std::size_t>& roots, const SpaceDescriptor& space) {
  const auto& sys = space.system();
  const auto& all = sys.roots();
  CompatCertificate cert;
  std::vector<bool> in(all.size(), false);
  for (auto r : roots) {
    if (r >= all.size()) throw UsageError("check_compat: root index out of range");
    in[r] = true;
  }
  for (auto r : roots) {
    if (!in[sys.negative_of(r)]) {
      cert.detail = "not a subalgebra: root set is not closed under negation";
      cert.witness = {r};
      return cert;
    }
  }
  for (auto a : roots) {
    for (auto b : roots) {
      auto sum = sys.find(all[a].vec + all[b].vec);
      if (sum && !in[*sum]) {
        cert.detail = "not a subalgebra: sum of two roots is missing";
        cert.witness = {a, b, *sum};
        return cert;
      }
    }
  }
  cert.is_subalgebra = true;
  for (auto a : roots) {
    for (std::size_t b = 0; b < all.size(); ++b) {
      if (in[b]) continue;
      auto sum = sys.find(all[a].vec + all[b].vec);
      if (!sum) continue;
      if (all[*sum].is_positive != all[b].is_positive) {
        cert.detail = "ad of the subalgebra does not commute with J on the complement";
        cert.witness = {a, b, *sum};
        return cert;
      }
    }
  }
  cert.compatible = true;
  cert.detail = "compatible";
  return cert;
}

}  // namespace nijenhuis
