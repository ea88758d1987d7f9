#include "nijenhuis/errors.hpp"
#include "nijenhuis/rational.hpp"

#include <doctest.h>

#include <random>

using namespace nijenhuis;

TEST_SUITE("rational") {
  TEST_CASE("string round trip") {
    CHECK(to_string(Rational(3, 6)) == "1/2");
    CHECK(to_string(Rational(-4, 2)) == "-2");
    CHECK(parse_rational("-7/21") == Rational(-1, 3));
    CHECK(parse_rational("5") == Rational(5));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(to_double(Rational(1, 4)) == 0.25);
  }

  TEST_CASE("vector arithmetic") {
    RatVec a{Rational(1, 2), 1, 0};
    RatVec b{Rational(1, 2), -1, 2};
    CHECK((a + b) == RatVec{1, 0, 2});
    CHECK(a.dot(b) == Rational(-3, 4));
    CHECK((a - a).is_zero());
    CHECK(a.to_string() == "(1/2, 1, 0)");
  }

  TEST_CASE("solve and nullspace on random integer systems") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 2 + trial % 4, c = 2 + (trial / 4) % 5;
      QMatrix a(r, c);
      for (auto& x : a.data) x = entry(rng);
      std::vector<Rational> x0(c), b(r, 0);
      for (auto& x : x0) x = entry(rng);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) b[i] += a(i, j) * x0[j];
      auto x = solve(a, b);
      REQUIRE(x);
      for (std::size_t i = 0; i < r; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < c; ++j) s += a(i, j) * (*x)[j];
        CHECK(s == b[i]);
      }
      const auto ns = nullspace(a);
      CHECK(ns.size() + rank(a) == c);
      for (const auto& v : ns)
        for (std::size_t i = 0; i < r; ++i) {
          Rational s = 0;
          for (std::size_t j = 0; j < c; ++j) s += a(i, j) * v[j];
          CHECK(s == 0);
        }
    }
  }

  TEST_CASE("inconsistent system") {
    QMatrix a(2, 1);
    a(0, 0) = 1;
    a(1, 0) = 1;
    CHECK_FALSE(solve(a, {1, 2}));
  }
}
