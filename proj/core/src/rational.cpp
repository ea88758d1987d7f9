#include "nijenhuis/rational.hpp"

#include "nijenhuis/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nijenhuis {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(boost::multiprecision::cpp_int(std::string(text)));
    }
    boost::multiprecision::cpp_int num(std::string(text.substr(0, slash)));
    boost::multiprecision::cpp_int den(std::string(text.substr(slash + 1)));
    if (den == 0) throw UsageError("zero denominator in rational '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError("cannot parse rational '" + std::string(text) + "'");
  }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

RatVec& RatVec::operator+=(const RatVec& o) {
  if (o.size() != size()) throw UsageError("RatVec dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

RatVec& RatVec::operator-=(const RatVec& o) {
  if (o.size() != size()) throw UsageError("RatVec dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

RatVec& RatVec::operator*=(const Rational& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

bool operator<(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

Rational RatVec::dot(const RatVec& o) const {
  if (o.size() != size()) throw UsageError("RatVec dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o.c_[i];
  return s;
}

bool RatVec::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

std::vector<double> RatVec::to_doubles() const {
  std::vector<double> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(to_double(x));
  return out;
}

std::string RatVec::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << nijenhuis::to_string(c_[i]);
  }
  os << ')';
  return os.str();
}

RatVec unit_vector(std::size_t dim, std::size_t i) {
  RatVec v(dim);
  v[i] = 1;
  return v;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t p = row;
    while (p < m.rows && m(p, col) == 0) ++p;
    if (p == m.rows) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows) throw UsageError("solve: right-hand side has wrong length");
  QMatrix aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = b[i];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
  std::vector<Rational> x(a.cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols);
  return x;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& a) {
  QMatrix m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix transpose(const QMatrix& a) {
  QMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

}  // namespace nijenhuis
