#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nijenhuis {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);
double to_double(const Rational& q);

/// Exact coordinate vector in the epsilon basis.
class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::size_t dim) : c_(dim) {}
  RatVec(std::initializer_list<Rational> init) : c_(init) {}
  explicit RatVec(std::vector<Rational> coords) : c_(std::move(coords)) {}

  std::size_t size() const { return c_.size(); }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  const std::vector<Rational>& coords() const { return c_; }

  RatVec& operator+=(const RatVec& o);
  RatVec& operator-=(const RatVec& o);
  RatVec& operator*=(const Rational& s);

  friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
  friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
  friend RatVec operator*(const Rational& s, RatVec a) { return a *= s; }
  friend RatVec operator-(RatVec a) { return a *= Rational(-1); }

  friend bool operator==(const RatVec& a, const RatVec& b) { return a.c_ == b.c_; }
  friend bool operator<(const RatVec& a, const RatVec& b);

  /// Plain Euclidean dot product of coordinates.
  Rational dot(const RatVec& o) const;
  bool is_zero() const;
  std::vector<double> to_doubles() const;
  std::string to_string() const;

 private:
  std::vector<Rational> c_;
};

RatVec unit_vector(std::size_t dim, std::size_t i);

/// Dense rational matrix used for the exact solves in this library.
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b);
/// Basis of {x : A x = 0}.
std::vector<std::vector<Rational>> nullspace(const QMatrix& a);
QMatrix transpose(const QMatrix& a);

}  // namespace nijenhuis
