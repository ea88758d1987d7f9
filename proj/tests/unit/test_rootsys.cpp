#include "oracles.hpp"

#include "nijenhuis/errors.hpp"
#include "nijenhuis/rootsys.hpp"

#include <doctest.h>

#include <random>

using namespace nijenhuis;

namespace {

std::set<RatVec> as_set(const RootSystem& sys) {
  std::set<RatVec> s;
  for (const auto& r : sys.roots()) s.insert(r.vec);
  return s;
}

}  // namespace

TEST_SUITE("rootsys") {
  TEST_CASE("classical root sets match the coordinate description") {
    for (int n = 1; n <= 8; ++n) CHECK(as_set(build_root_system(Family::A, n)) == oracle::classical_roots('A', n));
    for (int n = 2; n <= 8; ++n) CHECK(as_set(build_root_system(Family::B, n)) == oracle::classical_roots('B', n));
    for (int n = 1; n <= 8; ++n) CHECK(as_set(build_root_system(Family::C, n)) == oracle::classical_roots('C', n));
    for (int n = 3; n <= 8; ++n) CHECK(as_set(build_root_system(Family::D, n)) == oracle::classical_roots('D', n));
  }

  TEST_CASE("exceptional root sets match the coordinate description") {
    const auto e6 = build_root_system(Family::E6, 6);
    const auto e7 = build_root_system(Family::E7, 7);
    CHECK(e6.roots().size() == 72);
    CHECK(e7.roots().size() == 126);
    CHECK(as_set(e6) == oracle::exceptional_roots(6));
    CHECK(as_set(e7) == oracle::exceptional_roots(7));
  }

  TEST_CASE("structural properties") {
    const std::vector<std::pair<Family, int>> systems = {{Family::A, 5}, {Family::B, 4}, {Family::C, 4},
                                                         {Family::D, 5}, {Family::E6, 6}, {Family::E7, 7}};
    for (auto [f, n] : systems) {
      const auto sys = build_root_system(f, n);
      CAPTURE(sys.name());
      CHECK(sys.positive_count() * 2 == sys.roots().size());
      Rational longest = 0;
      for (const auto& r : sys.roots()) {
        longest = std::max(longest, sys.inner(r.vec, r.vec));
        // Closed under every simple reflection.
        for (const auto& s : sys.simple_roots()) CHECK(sys.is_root(sys.reflect(r.vec, s.vec)));
        // Coefficients are integers of one sign, and reproduce the vector.
        const auto c = sys.simple_coefficients(r.vec);
        RatVec back(sys.ambient_dim());
        bool nonneg = true, nonpos = true;
        for (std::size_t i = 0; i < c.size(); ++i) {
          CHECK(c[i] == r.simple_coefficients[i]);
          back += c[i] * sys.simple_roots()[i].vec;
          nonneg = nonneg && c[i] >= 0;
          nonpos = nonpos && c[i] <= 0;
        }
        CHECK(back == r.vec);
        CHECK((nonneg || nonpos));
        CHECK(r.is_positive == nonneg);
        CHECK(sys.roots()[sys.negative_of(sys.index_of(r.vec))].vec == Rational(-1) * r.vec);
      }
      CHECK(longest == 2);
      // Cartan integers.
      for (const auto& a : sys.roots())
        for (const auto& b : sys.simple_roots()) {
          const Rational p = sys.coroot_pairing(a.vec, b.vec);
          CHECK(denominator(p) == 1);
        }
    }
  }

  TEST_CASE("coroot vectors pair with weights through the dot product") {
    const auto sys = build_root_system(Family::C, 3);
    for (const auto& r : sys.roots()) CHECK(r.vec.dot(sys.coroot_vector(r.vec)) == 2);
  }

  TEST_CASE("E6 dominant weight from labels agrees with the closed formulas") {
    const auto sys = build_root_system(Family::E6, 6);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> lab(0, 4);
    for (int t = 0; t < 25; ++t) {
      std::vector<long> N(6);
      for (auto& x : N) x = lab(rng);
      const Rational h45 = Rational(N[3] + N[4], 2);
      RatVec expected = oracle::vec(8, {{0, N[0] + N[1] + N[2] + h45},
                                        {1, N[1] + N[2] + h45},
                                        {2, N[2] + h45},
                                        {3, h45},
                                        {4, Rational(N[4] - N[3], 2)}});
      const Rational l0 = Rational(N[0], 3) + Rational(2 * N[1], 3) + N[2] + Rational(N[3], 2) +
                          Rational(5 * N[4], 6) + Rational(2 * N[5], 3);
      expected += l0 * oracle::e6_eps();
      CHECK(weight_from_labels({N}, sys) == expected);
    }
  }

  TEST_CASE("E7 dominant weight from labels agrees with the closed formulas") {
    const auto sys = build_root_system(Family::E7, 7);
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> lab(0, 4);
    for (int t = 0; t < 25; ++t) {
      // Paper labels N_1..N_6 plus N_0 on the last simple root.
      std::vector<long> N(7);
      for (auto& x : N) x = lab(rng);
      const long N0 = N[6];
      const Rational h56 = Rational(N[4] + N[5], 2);
      RatVec expected = oracle::vec(8, {{0, N[0] + N[1] + N[2] + N[3] + h56},
                                        {1, N[1] + N[2] + N[3] + h56},
                                        {2, N[2] + N[3] + h56},
                                        {3, N[3] + h56},
                                        {4, h56},
                                        {5, Rational(N[5] - N[4], 2)}});
      const Rational l0 =
          N0 + Rational(N[0], 2) + N[1] + Rational(3 * N[2], 2) + 2 * N[3] + N[4] + Rational(3 * N[5], 2);
      expected += l0 * oracle::e7_eps();
      CHECK(weight_from_labels({N}, sys) == expected);
    }
  }

  TEST_CASE("invalid ranks are rejected") {
    CHECK_THROWS_AS(build_root_system(Family::A, 0), ConfigError);
    CHECK_THROWS_AS(build_root_system(Family::D, 2), ConfigError);
    CHECK_THROWS_AS(build_root_system(Family::E6, 7), ConfigError);
    const auto sys = build_root_system(Family::A, 2);
    CHECK_THROWS_AS(sys.inner(RatVec{1, 0}, RatVec{1, 0, 0}), UsageError);
  }
}
