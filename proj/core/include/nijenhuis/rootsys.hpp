#pragma once

#include "nijenhuis/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nijenhuis {

enum class Family { A, B, C, D, E6, E7 };

std::string to_string(Family f);

struct Root {
  RatVec vec;
  /// Coefficients in the simple-root basis (all >= 0 or all <= 0).
  std::vector<int> simple_coefficients;
  bool is_positive = false;
  /// Only meaningful once a space has been chosen; see hermcat.
  bool is_compact = true;
};

/// Dominant labels N_i = 2(Lambda, alpha_i)/(alpha_i, alpha_i), one per simple root.
/// For E7 the label commonly written N_0 (pairing with alpha_7) sits at index 6.
struct DominantLabels {
  std::vector<long> labels;
};

/// Immutable root system in epsilon coordinates.
class RootSystem {
 public:
  Family family() const { return family_; }
  int rank() const { return rank_; }
  std::size_t ambient_dim() const { return dim_; }
  /// Factor s with (a, b) = s * (a . b); s = 1/2 for C, 1 otherwise.
  const Rational& form_scale() const { return scale_; }
  std::string name() const;

  const std::vector<Root>& simple_roots() const { return simple_; }
  /// All roots, sorted lexicographically by coordinates.
  const std::vector<Root>& roots() const { return roots_; }
  std::vector<std::size_t> positive_indices() const;
  std::size_t positive_count() const { return roots_.size() / 2; }

  /// Invariant form, normalized so that long roots have length 2.
  Rational inner(const RatVec& a, const RatVec& b) const;
  /// 2 (lambda, alpha) / (alpha, alpha).
  Rational coroot_pairing(const RatVec& lambda, const RatVec& alpha) const;
  RatVec reflect(const RatVec& v, const RatVec& alpha) const;
  /// Coroot as a torus vector h with lambda(h) = lambda . h; equals 2 alpha / (alpha . alpha).
  RatVec coroot_vector(const RatVec& alpha) const;

  std::optional<std::size_t> find(const RatVec& v) const;
  bool is_root(const RatVec& v) const { return find(v).has_value(); }
  std::size_t index_of(const RatVec& v) const;
  std::size_t negative_of(std::size_t idx) const { return neg_[idx]; }

  /// Exact coordinates of v in the simple-root basis; throws UsageError outside the span.
  std::vector<Rational> simple_coefficients(const RatVec& v) const;
  /// Gram matrix (alpha_i, alpha_j) of the simple roots.
  const QMatrix& gram() const { return gram_; }

 private:
  friend RootSystem build_root_system(Family family, int rank);

  Family family_ = Family::A;
  int rank_ = 0;
  std::size_t dim_ = 0;
  Rational scale_ = 1;
  std::vector<Root> simple_;
  std::vector<Root> roots_;
  std::vector<std::size_t> neg_;
  std::map<RatVec, std::size_t> lookup_;
  QMatrix gram_;
};

/// Throws ConfigError for unsupported (family, rank).
RootSystem build_root_system(Family family, int rank);

Rational inner(const RatVec& a, const RatVec& b, const RootSystem& system);

/// Weight Lambda with 2(Lambda, alpha_i)/(alpha_i, alpha_i) = N_i. E6 and E7 only.
RatVec weight_from_labels(const DominantLabels& labels, const RootSystem& system);

/// Positive roots satisfying the predicate, in lexicographic order.
std::vector<Root> enumerate_positive_roots_with(const RootSystem& system,
                                                const std::function<bool(const Root&)>& pred);

}  // namespace nijenhuis
