#include "nijenhuis/symring.hpp"

#include "nijenhuis/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace nijenhuis {

namespace {

constexpr int kMaxDegree = 16;
constexpr std::size_t kMaxProducts = 20000;

std::string monomial_string(const Exponent& e) {
  std::string s;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += "f" + std::to_string(j + 1);
    if (e[j] > 1) s += "^" + std::to_string(e[j]);
  }
  return s;
}

}  // namespace

SymPoly SymPoly::constant(std::size_t vars, const Rational& c) {
  SymPoly p(vars);
  p.add_term(Exponent(vars, 0), c);
  return p;
}

SymPoly SymPoly::variable(std::size_t vars, std::size_t j) {
  if (j >= vars) throw UsageError("variable index out of range");
  Exponent e(vars, 0);
  e[j] = 1;
  return monomial(e, 1);
}

SymPoly SymPoly::monomial(const Exponent& e, const Rational& c) {
  SymPoly p(e.size());
  p.add_term(e, c);
  return p;
}

void SymPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int SymPoly::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

Rational SymPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  if (o.vars_ != vars_) throw UsageError("polynomials in different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  if (o.vars_ != vars_) throw UsageError("polynomials in different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SymPoly& SymPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  if (a.vars_ != b.vars_) throw UsageError("polynomials in different variable sets");
  SymPoly out(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e(ea);
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
      out.add_term(e, ca * cb);
    }
  return out;
}

SymPoly SymPoly::pow(int n) const {
  if (n < 0) throw UsageError("negative power");
  SymPoly out = constant(vars_, 1);
  for (int k = 0; k < n; ++k) out = out * *this;
  return out;
}

SymPoly SymPoly::partial(std::size_t j) const {
  SymPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[j] == 0) continue;
    Exponent f(e);
    f[j] -= 1;
    out.add_term(f, c * e[j]);
  }
  return out;
}

SymPoly SymPoly::permute(const std::vector<std::size_t>& perm) const {
  if (perm.size() != vars_) throw UsageError("permutation size mismatch");
  SymPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f(vars_, 0);
    for (std::size_t j = 0; j < vars_; ++j) f[perm[j]] = e[j];
    out.add_term(f, c);
  }
  return out;
}

bool SymPoly::is_symmetric() const {
  // Adjacent transpositions generate the symmetric group.
  for (std::size_t j = 0; j + 1 < vars_; ++j) {
    std::vector<std::size_t> perm(vars_);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[j], perm[j + 1]);
    if (permute(perm) != *this) return false;
  }
  return true;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  // Highest degree first.
  std::vector<std::pair<Exponent, Rational>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.first.begin(), a.first.end(), 0) > std::accumulate(b.first.begin(), b.first.end(), 0);
  });
  for (const auto& [e, c] : items) {
    const std::string mono = monomial_string(e);
    Rational mag = c < 0 ? Rational(-c) : c;
    s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (mono.empty()) {
      s += nijenhuis::to_string(mag);
    } else {
      if (mag != 1) s += nijenhuis::to_string(mag) + "*";
      s += mono;
    }
  }
  return s;
}

OneForm::OneForm(std::size_t vars) {
  for (std::size_t j = 0; j < vars; ++j) g.emplace_back(vars);
}

bool OneForm::is_zero() const {
  return std::all_of(g.begin(), g.end(), [](const SymPoly& p) { return p.is_zero(); });
}

OneForm& OneForm::operator+=(const OneForm& o) {
  if (o.vars() != vars()) throw UsageError("one-forms in different variable sets");
  for (std::size_t j = 0; j < g.size(); ++j) g[j] += o.g[j];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) {
  if (o.vars() != vars()) throw UsageError("one-forms in different variable sets");
  for (std::size_t j = 0; j < g.size(); ++j) g[j] -= o.g[j];
  return *this;
}

OneForm operator*(const SymPoly& p, const OneForm& w) {
  OneForm out(w.vars());
  for (std::size_t j = 0; j < w.vars(); ++j) out.g[j] = p * w.g[j];
  return out;
}

OneForm operator*(const Rational& s, const OneForm& w) {
  OneForm out(w);
  for (auto& p : out.g) p *= s;
  return out;
}

OneForm OneForm::permute(const std::vector<std::size_t>& perm) const {
  OneForm out(vars());
  for (std::size_t j = 0; j < vars(); ++j) out.g[perm[j]] = g[j].permute(perm);
  return out;
}

std::string OneForm::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + g[j].to_string() + ") df" + std::to_string(j + 1);
  }
  return s.empty() ? "0" : s;
}

OneForm d(const SymPoly& p) {
  OneForm out(p.vars());
  for (std::size_t j = 0; j < p.vars(); ++j) out.g[j] = p.partial(j);
  return out;
}

OneForm dN(const SymPoly& p) {
  OneForm out(p.vars());
  for (std::size_t j = 0; j < p.vars(); ++j) out.g[j] = Rational(-2) * (SymPoly::variable(p.vars(), j) * p.partial(j));
  return out;
}

bool is_closed(const OneForm& w) {
  for (std::size_t i = 0; i < w.vars(); ++i)
    for (std::size_t j = i + 1; j < w.vars(); ++j)
      if (w.g[j].partial(i) != w.g[i].partial(j)) return false;
  return true;
}

RingConstants ring_constants(const SpaceDescriptor& space) {
  const auto& sys = space.system();
  const OrthogonalSet set = maximal_orthogonal_set(space);
  RingConstants rc;
  rc.rho_norm = rho_phi_norm(space);
  for (std::size_t j = 0; j < set.roots.size(); ++j) {
    const auto& v = sys.roots()[set.roots[j]].vec;
    rc.c.push_back(Rational(-2) / sys.inner(v, v));
    rc.roots.push_back(v.to_string());
  }
  // Torus vectors pair with weights by the Euclidean dot, so the invariant form
  // on coroots is (h_j, h_r) = 4 (a_j, a_r) / ((a_j, a_j)(a_r, a_r)).
  for (std::size_t j = 0; j < set.roots.size(); ++j) {
    const auto& aj = sys.roots()[set.roots[j]].vec;
    for (std::size_t r = 0; r < set.roots.size(); ++r) {
      const auto& ar = sys.roots()[set.roots[r]].vec;
      const Rational pairing = Rational(-4) * sys.inner(aj, ar) / (sys.inner(aj, aj) * sys.inner(ar, ar));
      const Rational expected = j == r ? 2 * rc.c[j] : Rational(0);
      if (pairing != expected)
        throw StructuralError("coroot pairing mismatch in " + space.name() + ": " + to_string(pairing));
    }
    // c_j = i(h_j, rho_phi) = -2 a_j(H) / (a_j, a_j) with rho_phi = iH.
    const Rational from_rho = Rational(-2) * aj.dot(space.rho_phi_coweight()) / sys.inner(aj, aj);
    if (from_rho != rc.c[j])
      throw StructuralError("slice constant mismatch in " + space.name() + ": " + to_string(from_rho));
  }
  return rc;
}

SymPoly power_sum(int n, const std::vector<Rational>& constants) {
  if (n < 1) throw UsageError("power sum degree must be >= 1");
  const std::size_t m = constants.size();
  SymPoly p(m);
  for (std::size_t j = 0; j < m; ++j) {
    Exponent e(m, 0);
    e[j] = n;
    p += SymPoly::monomial(e, constants[j]);
  }
  return p;
}

namespace {

std::vector<GeneratorProduct> enumerate_products(const std::vector<SymPoly>& generators, std::size_t vars,
                                                 int max_degree) {
  if (max_degree < 0 || max_degree > kMaxDegree)
    throw UsageError("max degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
  std::vector<int> degs;
  for (const auto& g : generators) {
    if (g.vars() != vars) throw UsageError("generator in a different variable set");
    degs.push_back(g.degree());
  }
  std::vector<GeneratorProduct> out;
  GeneratorProduct unit{std::vector<int>(generators.size(), 0), SymPoly::constant(vars, 1)};
  // Depth-first over exponent vectors; generators of degree <= 0 add nothing new.
  std::vector<int> powers(generators.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, int budget, const SymPoly& value) -> void {
    if (k == generators.size()) {
      out.push_back({powers, value});
      if (out.size() > kMaxProducts) throw UsageError("degree overflow: too many generator products");
      return;
    }
    self(self, k + 1, budget, value);
    if (degs[k] <= 0) return;
    SymPoly v = value;
    int b = budget;
    while (b >= degs[k]) {
      v = v * generators[k];
      b -= degs[k];
      ++powers[k];
      self(self, k + 1, b, v);
    }
    powers[k] = 0;
  };
  rec(rec, 0, max_degree, unit.value);
  return out;
}

}  // namespace

MembershipCertificate subring_membership(const SymPoly& target, const std::vector<SymPoly>& generators,
                                         int max_degree) {
  MembershipCertificate cert;
  cert.max_degree = max_degree;
  cert.products = enumerate_products(generators, target.vars(), max_degree);
  std::set<Exponent> monos;
  for (const auto& [e, c] : target.terms()) monos.insert(e);
  for (const auto& p : cert.products)
    for (const auto& [e, c] : p.value.terms()) monos.insert(e);
  const std::vector<Exponent> rows(monos.begin(), monos.end());
  QMatrix a(rows.size(), cert.products.size());
  std::vector<Rational> b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    b[i] = target.coefficient(rows[i]);
    for (std::size_t k = 0; k < cert.products.size(); ++k) a(i, k) = cert.products[k].value.coefficient(rows[i]);
  }
  if (auto x = solve(a, b)) {
    cert.member = true;
    cert.combination = std::move(*x);
    return cert;
  }
  for (const auto& y : nullspace(transpose(a))) {
    Rational on_target = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) on_target += y[i] * b[i];
    if (on_target == 0) continue;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (y[i] != 0) cert.functional.emplace(rows[i], y[i]);
    cert.functional_on_target = on_target;
    return cert;
  }
  throw StructuralError("inconsistent system without a separating functional");
}

bool verify_membership(const MembershipCertificate& cert, const SymPoly& target,
                       const std::vector<SymPoly>& generators) {
  const auto products = enumerate_products(generators, target.vars(), cert.max_degree);
  if (products.size() != cert.products.size()) return false;
  for (std::size_t k = 0; k < products.size(); ++k)
    if (products[k].powers != cert.products[k].powers || products[k].value != cert.products[k].value) return false;
  auto apply = [&](const SymPoly& p) {
    Rational v = 0;
    for (const auto& [e, c] : p.terms()) {
      auto it = cert.functional.find(e);
      if (it != cert.functional.end()) v += it->second * c;
    }
    return v;
  };
  if (cert.member) {
    if (cert.combination.size() != products.size()) return false;
    SymPoly sum(target.vars());
    for (std::size_t k = 0; k < products.size(); ++k) sum += cert.combination[k] * products[k].value;
    return sum == target;
  }
  for (const auto& p : products)
    if (apply(p.value) != 0) return false;
  const Rational t = apply(target);
  return t != 0 && t == cert.functional_on_target;
}

std::optional<SymPoly> exact_primitive_in(const OneForm& w, const std::vector<SymPoly>& generators, int max_degree) {
  const auto products = enumerate_products(generators, w.vars(), max_degree);
  // Unknowns: coefficients over products; equations: every coefficient of dq - w.
  std::set<std::pair<std::size_t, Exponent>> keys;
  std::vector<OneForm> dprod;
  for (const auto& p : products) dprod.push_back(d(p.value));
  for (std::size_t j = 0; j < w.vars(); ++j) {
    for (const auto& [e, c] : w.g[j].terms()) keys.emplace(j, e);
    for (const auto& dp : dprod)
      for (const auto& [e, c] : dp.g[j].terms()) keys.emplace(j, e);
  }
  const std::vector<std::pair<std::size_t, Exponent>> rows(keys.begin(), keys.end());
  QMatrix a(rows.size(), products.size());
  std::vector<Rational> b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [j, e] = rows[i];
    b[i] = w.g[j].coefficient(e);
    for (std::size_t k = 0; k < products.size(); ++k) a(i, k) = dprod[k].g[j].coefficient(e);
  }
  auto x = solve(a, b);
  if (!x) return std::nullopt;
  SymPoly q(w.vars());
  for (std::size_t k = 0; k < products.size(); ++k) q += (*x)[k] * products[k].value;
  if (d(q) != w) throw StructuralError("primitive solve produced an inconsistent result");
  return q;
}

namespace {

SymbolicCheck check_zero(std::string name, const SymPoly& residual) {
  return {std::move(name), residual.to_string(), residual.is_zero()};
}

SymbolicCheck check_zero(std::string name, const OneForm& residual) {
  return {std::move(name), residual.to_string(), residual.is_zero()};
}

void finalize(SymbolicCertificate& cert) {
  cert.pass = std::all_of(cert.checks.begin(), cert.checks.end(), [](const SymbolicCheck& c) { return c.holds; });
  if (cert.membership) cert.pass = cert.pass && !cert.membership->member;
}

}  // namespace

SymbolicCertificate verify_eiii() {
  const SpaceDescriptor space = build_space({SpaceKind::EIII, 0, 0});
  SymbolicCertificate cert;
  cert.space = space.name();
  cert.constants = ring_constants(space);
  const auto& c = cert.constants.c;
  if (c.size() != 2) throw StructuralError("EIII slice should have two variables");
  const SymPoly p1 = power_sum(1, c), p2 = power_sum(2, c), p3 = power_sum(3, c);
  const Rational half(1, 2), three_halves(3, 2), two_thirds(2, 3), four_thirds(4, 3);

  cert.checks.push_back(check_zero("p3 + (3/2) p1 p2 + (1/2) p1^3 = 0", p3 + three_halves * (p1 * p2) + half * p1.pow(3)));
  cert.checks.push_back(check_zero("dN p1 + d p2 = 0", dN(p1) + d(p2)));
  cert.checks.push_back(check_zero("dN p2 - (2/3) d(3 p1 p2 + p1^3) = 0",
                                   dN(p2) - two_thirds * d(Rational(3) * (p1 * p2) + p1.pow(3))));
  cert.checks.push_back(check_zero("dN p2 + (4/3) d p3 = 0", dN(p2) + four_thirds * d(p3)));
  cert.checks.push_back(
      {"constants c = (-1, -1)", to_string(c[0] + 1) + ", " + to_string(c[1] + 1), c[0] == -1 && c[1] == -1});
  cert.checks.push_back({"(rho_phi, rho_phi) = -4/3", to_string(cert.constants.rho_norm + Rational(4, 3)),
                         cert.constants.rho_norm == Rational(-4, 3)});
  // d_N of each generator has a primitive inside Q[p1, p2].
  for (const auto& [name, gen] : {std::pair{"p1", p1}, std::pair{"p2", p2}}) {
    const auto prim = exact_primitive_in(dN(gen), {p1, p2}, 3);
    cert.checks.push_back({std::string("dN ") + name + " exact in Q[p1, p2]", prim ? "0" : "no primitive", bool(prim)});
    if (prim) cert.notes.push_back(std::string("dN ") + name + " = d(" + prim->to_string() + ")");
  }
  finalize(cert);
  return cert;
}

SymbolicCertificate verify_evii() {
  const SpaceDescriptor space = build_space({SpaceKind::EVII, 0, 0});
  SymbolicCertificate cert;
  cert.space = space.name();
  cert.constants = ring_constants(space);
  const auto& c = cert.constants.c;
  const std::size_t m = c.size();
  if (m != 3) throw StructuralError("EVII slice should have three variables");
  const SymPoly p1 = power_sum(1, c), p2 = power_sum(2, c), p3 = power_sum(3, c);
  const SymPoly rr = SymPoly::constant(m, cert.constants.rho_norm);
  const SymPoly i10 = rr + p1;
  const SymPoly i20 = rr + Rational(2) * p1 + Rational(2) * p2;
  const SymPoly i11 = p1 + Rational(3) * p2 + Rational(2) * p3;
  cert.checks.push_back({"constants c = (-1, -1, -1)", "",
                         std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == -1; })});
  cert.checks.push_back({"(rho_phi, rho_phi) = -3/2", to_string(cert.constants.rho_norm + Rational(3, 2)),
                         cert.constants.rho_norm == Rational(-3, 2)});
  cert.checks.push_back(check_zero("dN p1 + d p2 = 0", dN(p1) + d(p2)));
  cert.checks.push_back(check_zero("dN p2 + (4/3) d p3 = 0", dN(p2) + Rational(4, 3) * d(p3)));
  auto mem = subring_membership(i11, {SymPoly::constant(m, 1), i10, i20}, 3);
  cert.checks.push_back({"separating functional verified", "", verify_membership(mem, i11, {SymPoly::constant(m, 1), i10, i20})});
  cert.membership = std::move(mem);
  cert.notes.push_back("I11 = " + i11.to_string());
  cert.notes.push_back("generators: 1, I10 = " + i10.to_string() + ", I20 = " + i20.to_string());
  cert.notes.push_back("rule dN f_j = -2 f_j df_j is axiomatized for rank 3; membership does not depend on it");
  finalize(cert);
  return cert;
}

}  // namespace nijenhuis
