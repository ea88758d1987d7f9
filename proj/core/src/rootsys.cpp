#include "nijenhuis/rootsys.hpp"

#include "nijenhuis/errors.hpp"

#include <algorithm>
#include <deque>

namespace nijenhuis {

namespace {

RatVec eps_diff(std::size_t dim, std::size_t i, std::size_t j) {
  RatVec v(dim);
  v[i] = 1;
  v[j] = -1;
  return v;
}

RatVec eps_sum(std::size_t dim, std::size_t i, std::size_t j) {
  RatVec v(dim);
  v[i] = 1;
  v[j] = 1;
  return v;
}

// Spinor-type simple root 1/2 (eps - sum_{i<last} eps_i) of E6/E7 in R^8.
RatVec exceptional_spinor(std::size_t first_eps) {
  RatVec v(8);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < 8; ++i) v[i] = i < first_eps ? -half : half;
  return v;
}

std::vector<RatVec> simple_root_vectors(Family family, int rank, std::size_t& dim) {
  std::vector<RatVec> out;
  const auto n = static_cast<std::size_t>(rank);
  switch (family) {
    case Family::A:
      dim = n + 1;
      for (std::size_t i = 0; i < n; ++i) out.push_back(eps_diff(dim, i, i + 1));
      break;
    case Family::B:
      dim = n;
      for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(eps_diff(dim, i, i + 1));
      out.push_back(unit_vector(dim, n - 1));
      break;
    case Family::C:
      dim = n;
      for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(eps_diff(dim, i, i + 1));
      out.push_back(Rational(2) * unit_vector(dim, n - 1));
      break;
    case Family::D:
      dim = n;
      for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(eps_diff(dim, i, i + 1));
      out.push_back(eps_sum(dim, n - 2, n - 1));
      break;
    case Family::E6:
      // eps = eps_6 + eps_7 + eps_8
      dim = 8;
      for (std::size_t i = 0; i < 4; ++i) out.push_back(eps_diff(dim, i, i + 1));
      out.push_back(eps_sum(dim, 3, 4));
      out.push_back(exceptional_spinor(5));
      break;
    case Family::E7:
      // eps = eps_7 + eps_8
      dim = 8;
      for (std::size_t i = 0; i < 5; ++i) out.push_back(eps_diff(dim, i, i + 1));
      out.push_back(eps_sum(dim, 4, 5));
      out.push_back(exceptional_spinor(6));
      break;
  }
  return out;
}

void validate(Family family, int rank) {
  auto bad = [&] {
    throw ConfigError("unsupported root system " + to_string(family) + " of rank " +
                      std::to_string(rank));
  };
  switch (family) {
    case Family::A: if (rank < 1 || rank > 24) bad(); break;
    case Family::B: if (rank < 2 || rank > 16) bad(); break;
    case Family::C: if (rank < 1 || rank > 16) bad(); break;
    case Family::D: if (rank < 3 || rank > 16) bad(); break;
    case Family::E6: if (rank != 6) bad(); break;
    case Family::E7: if (rank != 7) bad(); break;
  }
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
  }
  return "?";
}

std::string RootSystem::name() const {
  if (family_ == Family::E6 || family_ == Family::E7) return to_string(family_);
  return to_string(family_) + std::to_string(rank_);
}

std::vector<std::size_t> RootSystem::positive_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i].is_positive) out.push_back(i);
  return out;
}

Rational RootSystem::inner(const RatVec& a, const RatVec& b) const {
  if (a.size() != dim_ || b.size() != dim_)
    throw UsageError("inner: vector dimension does not match ambient dimension " +
                     std::to_string(dim_));
  return scale_ * a.dot(b);
}

Rational RootSystem::coroot_pairing(const RatVec& lambda, const RatVec& alpha) const {
  const Rational aa = inner(alpha, alpha);
  if (aa == 0) throw UsageError("coroot_pairing: zero root");
  return 2 * inner(lambda, alpha) / aa;
}

RatVec RootSystem::reflect(const RatVec& v, const RatVec& alpha) const {
  return v - coroot_pairing(v, alpha) * alpha;
}

RatVec RootSystem::coroot_vector(const RatVec& alpha) const {
  return (Rational(2) / alpha.dot(alpha)) * alpha;
}

std::optional<std::size_t> RootSystem::find(const RatVec& v) const {
  auto it = lookup_.find(v);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootSystem::index_of(const RatVec& v) const {
  auto idx = find(v);
  if (!idx) throw UsageError("not a root of " + name() + ": " + v.to_string());
  return *idx;
}

std::vector<Rational> RootSystem::simple_coefficients(const RatVec& v) const {
  if (v.size() != dim_) throw UsageError("simple_coefficients: dimension mismatch");
  std::vector<Rational> rhs(simple_.size());
  for (std::size_t i = 0; i < simple_.size(); ++i) rhs[i] = inner(v, simple_[i].vec);
  auto sol = solve(gram_, rhs);
  if (!sol) throw StructuralError("singular Gram matrix for " + name());
  RatVec back(dim_);
  for (std::size_t i = 0; i < simple_.size(); ++i) back += (*sol)[i] * simple_[i].vec;
  if (!(back == v)) throw UsageError("vector not in the span of the simple roots: " + v.to_string());
  return *sol;
}

RootSystem build_root_system(Family family, int rank) {
  validate(family, rank);
  RootSystem rs;
  rs.family_ = family;
  rs.rank_ = rank;
  rs.scale_ = family == Family::C ? Rational(1, 2) : Rational(1);
  const auto simple_vecs = simple_root_vectors(family, rank, rs.dim_);

  rs.gram_ = QMatrix(simple_vecs.size(), simple_vecs.size());
  for (std::size_t i = 0; i < simple_vecs.size(); ++i)
    for (std::size_t j = 0; j < simple_vecs.size(); ++j)
      rs.gram_(i, j) = rs.scale_ * simple_vecs[i].dot(simple_vecs[j]);

  // Saturate under the simple reflections.
  std::map<RatVec, bool> seen;
  std::deque<RatVec> queue;
  for (const auto& s : simple_vecs) {
    if (!seen.emplace(s, true).second) continue;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    RatVec r = queue.front();
    queue.pop_front();
    for (const auto& s : simple_vecs) {
      RatVec t = r - (2 * r.dot(s) / s.dot(s)) * s;
      if (seen.emplace(t, true).second) queue.push_back(std::move(t));
    }
  }

  rs.simple_.clear();
  for (std::size_t i = 0; i < simple_vecs.size(); ++i) {
    Root r;
    r.vec = simple_vecs[i];
    r.simple_coefficients.assign(simple_vecs.size(), 0);
    r.simple_coefficients[i] = 1;
    r.is_positive = true;
    rs.simple_.push_back(std::move(r));
  }

  for (const auto& [vec, unused] : seen) {
    (void)unused;
    Root r;
    r.vec = vec;
    const auto coeffs = rs.simple_coefficients(vec);
    bool nonneg = true;
    bool nonpos = true;
    for (const auto& c : coeffs) {
      if (boost::multiprecision::denominator(c) != 1)
        throw StructuralError("non-integral simple-root coefficient in " + rs.name());
      if (c < 0) nonneg = false;
      if (c > 0) nonpos = false;
      r.simple_coefficients.push_back(static_cast<int>(c.convert_to<long>()));
    }
    if (nonneg == nonpos) throw StructuralError("root with mixed-sign coefficients in " + rs.name());
    r.is_positive = nonneg;
    rs.roots_.push_back(std::move(r));
  }
  // std::map iteration is already lexicographic.
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) rs.lookup_.emplace(rs.roots_[i].vec, i);
  rs.neg_.resize(rs.roots_.size());
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) rs.neg_[i] = rs.index_of(-rs.roots_[i].vec);
  return rs;
}

Rational inner(const RatVec& a, const RatVec& b, const RootSystem& system) {
  return system.inner(a, b);
}

RatVec weight_from_labels(const DominantLabels& labels, const RootSystem& system) {
  if (system.family() != Family::E6 && system.family() != Family::E7)
    throw UsageError("weight_from_labels is defined for E6 and E7 only");
  const auto& simple = system.simple_roots();
  if (labels.labels.size() != simple.size())
    throw UsageError("expected " + std::to_string(simple.size()) + " labels, got " +
                     std::to_string(labels.labels.size()));
  std::vector<Rational> rhs(simple.size());
  for (std::size_t i = 0; i < simple.size(); ++i) {
    if (labels.labels[i] < 0) throw UsageError("dominant labels must be nonnegative");
    rhs[i] = Rational(labels.labels[i]) * system.inner(simple[i].vec, simple[i].vec) / 2;
  }
  auto c = solve(system.gram(), rhs);
  if (!c) throw StructuralError("singular Gram matrix");
  RatVec lambda(system.ambient_dim());
  for (std::size_t i = 0; i < simple.size(); ++i) lambda += (*c)[i] * simple[i].vec;
  return lambda;
}

std::vector<Root> enumerate_positive_roots_with(const RootSystem& system,
                                                const std::function<bool(const Root&)>& pred) {
  std::vector<Root> out;
  for (const auto& r : system.roots())
    if (r.is_positive && pred(r)) out.push_back(r);
  return out;
}

}  // namespace nijenhuis
