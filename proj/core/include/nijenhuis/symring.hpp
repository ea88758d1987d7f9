#pragma once

#include "nijenhuis/hermcat.hpp"
#include "nijenhuis/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nijenhuis {

using Exponent = std::vector<int>;

/// Exact polynomial over Q in the slice variables f_1..f_m.
class SymPoly {
 public:
  SymPoly() = default;
  explicit SymPoly(std::size_t vars) : vars_(vars) {}

  static SymPoly constant(std::size_t vars, const Rational& c);
  static SymPoly variable(std::size_t vars, std::size_t j);
  static SymPoly monomial(const Exponent& e, const Rational& c);

  std::size_t vars() const { return vars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational coefficient(const Exponent& e) const;

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  SymPoly& operator*=(const Rational& s);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator-(SymPoly a) { return a *= Rational(-1); }
  friend SymPoly operator*(const Rational& s, SymPoly a) { return a *= s; }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  friend bool operator==(const SymPoly& a, const SymPoly& b) = default;

  SymPoly pow(int n) const;
  SymPoly partial(std::size_t j) const;
  /// Substitute f_j -> f_{perm[j]}.
  SymPoly permute(const std::vector<std::size_t>& perm) const;
  bool is_symmetric() const;
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  std::size_t vars_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// sum_j g_j df_j.
struct OneForm {
  std::vector<SymPoly> g;

  explicit OneForm(std::size_t vars = 0);
  std::size_t vars() const { return g.size(); }
  bool is_zero() const;
  OneForm& operator+=(const OneForm& o);
  OneForm& operator-=(const OneForm& o);
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const SymPoly& p, const OneForm& w);
  friend OneForm operator*(const Rational& s, const OneForm& w);
  friend bool operator==(const OneForm& a, const OneForm& b) = default;
  OneForm permute(const std::vector<std::size_t>& perm) const;
  std::string to_string() const;
};

OneForm d(const SymPoly& p);
/// Derivation with d_N f_j = -2 f_j df_j.
OneForm dN(const SymPoly& p);
bool is_closed(const OneForm& w);

struct RingConstants {
  std::vector<Rational> c;
  Rational rho_norm;
  std::vector<std::string> roots;
};
/// c_j = -2/(alpha_j, alpha_j) over the maximal orthogonal set, with the
/// pairing (ih_j, ih_r) = 2 delta_jr c_j checked exactly.
RingConstants ring_constants(const SpaceDescriptor& space);

/// p_n(f) = sum_j c_j f_j^n.
SymPoly power_sum(int n, const std::vector<Rational>& constants);

struct GeneratorProduct {
  std::vector<int> powers;
  SymPoly value;
};

struct MembershipCertificate {
  bool member = false;
  int max_degree = 0;
  std::vector<GeneratorProduct> products;
  /// Coefficients over products when member.
  std::vector<Rational> combination;
  /// Linear functional on monomials killing every product but not the target.
  std::map<Exponent, Rational> functional;
  Rational functional_on_target;
};

/// Exact test of target in span{prod g_k^{e_k} : degree <= max_degree}.
MembershipCertificate subring_membership(const SymPoly& target, const std::vector<SymPoly>& generators,
                                         int max_degree);
bool verify_membership(const MembershipCertificate& cert, const SymPoly& target,
                       const std::vector<SymPoly>& generators);

/// Some q in the degree-bounded span of generator products with dq = w.
std::optional<SymPoly> exact_primitive_in(const OneForm& w, const std::vector<SymPoly>& generators, int max_degree);

struct SymbolicCheck {
  std::string name;
  std::string residual;  // exact residual, "0" when the identity holds
  bool holds = false;
};

struct SymbolicCertificate {
  std::string space;
  RingConstants constants;
  std::vector<SymbolicCheck> checks;
  std::optional<MembershipCertificate> membership;
  std::vector<std::string> notes;
  bool pass = false;
};

SymbolicCertificate verify_eiii();
SymbolicCertificate verify_evii();

}  // namespace nijenhuis
