#include "oracles.hpp"

#include "nijenhuis/errors.hpp"
#include "nijenhuis/hermcat.hpp"

#include <doctest.h>

#include <algorithm>

using namespace nijenhuis;

namespace {

std::vector<SpaceTag> sweep() {
  std::vector<SpaceTag> tags;
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) tags.push_back({SpaceKind::AIII, n, k});
  for (int n = 3; n <= 12; ++n) tags.push_back({SpaceKind::BDI, n, 0});
  for (int n = 3; n <= 8; ++n) tags.push_back({SpaceKind::DIII, n, 0});
  for (int n = 1; n <= 8; ++n) tags.push_back({SpaceKind::CI, n, 0});
  tags.push_back({SpaceKind::EIII, 0, 0});
  tags.push_back({SpaceKind::EVII, 0, 0});
  return tags;
}

// Complex dimension of K / K_phi.
int complex_dim(const SpaceTag& t) {
  switch (t.kind) {
    case SpaceKind::AIII: return t.k * (t.n + 1 - t.k);
    case SpaceKind::BDI: return t.n;
    case SpaceKind::DIII: return t.n * (t.n - 1) / 2;
    case SpaceKind::CI: return t.n * (t.n + 1) / 2;
    case SpaceKind::EIII: return 16;
    case SpaceKind::EVII: return 27;
  }
  return -1;
}

}  // namespace

TEST_SUITE("hermcat") {
  TEST_CASE("rank, dimension and rho_phi normalization over a parameter sweep") {
    for (const auto& tag : sweep()) {
      const auto space = build_space(tag);
      const auto& sys = space.system();
      CAPTURE(space.name());
      CHECK(space.rank() == table_rank(tag));
      CHECK(static_cast<int>(space.noncompact_positive().size()) == complex_dim(tag));
      CHECK(space.compact_positive().size() + space.noncompact_positive().size() == sys.positive_count());
      // (omega, alpha_j) = delta_{j, phi}.
      for (std::size_t j = 0; j < sys.simple_roots().size(); ++j)
        CHECK(sys.inner(space.rho_phi_coords(), sys.simple_roots()[j].vec) == (j == space.phi_index() ? 1 : 0));
      // phi(rho_phi) = i: phi . h = 1.
      CHECK(space.phi().vec.dot(space.rho_phi_coweight()) == 1);
      CHECK(rho_phi_norm(space) == -sys.inner(space.rho_phi_coords(), space.rho_phi_coords()));
      for (auto r : space.noncompact_positive()) CHECK(space.phi_coefficient(r) == 1);
    }
  }

  TEST_CASE("rank formula min{k, n+1-k} for AIII") {
    CHECK(build_space({SpaceKind::AIII, 3, 1}).rank() == 1);
    CHECK(build_space({SpaceKind::AIII, 5, 2}).rank() == 2);
    CHECK(build_space({SpaceKind::AIII, 7, 4}).rank() == 4);
    CHECK(build_space({SpaceKind::EIII, 0, 0}).rank() == 2);
    CHECK(build_space({SpaceKind::EVII, 0, 0}).rank() == 3);
  }

  TEST_CASE("rho_phi norms of the default instances") {
    CHECK(rho_phi_norm(build_space({SpaceKind::AIII, 5, 2})) == Rational(-4, 3));
    CHECK(rho_phi_norm(build_space({SpaceKind::BDI, 8, 0})) == -1);
    CHECK(rho_phi_norm(build_space({SpaceKind::DIII, 5, 0})) == Rational(-5, 4));
    CHECK(rho_phi_norm(build_space({SpaceKind::CI, 4, 0})) == -2);
    CHECK(rho_phi_norm(build_space({SpaceKind::EIII, 0, 0})) == Rational(-4, 3));
    CHECK(rho_phi_norm(build_space({SpaceKind::EVII, 0, 0})) == Rational(-3, 2));
  }

  TEST_CASE("maximal strongly orthogonal sets") {
    for (const auto& tag : sweep()) {
      const auto space = build_space(tag);
      const auto& sys = space.system();
      const auto set = maximal_orthogonal_set(space);
      CAPTURE(space.name());
      REQUIRE(static_cast<int>(set.roots.size()) == space.rank());
      CHECK(set.roots.front() == sys.index_of(space.phi().vec));
      for (std::size_t a = 0; a < set.roots.size(); ++a) {
        CHECK(space.phi_coefficient(set.roots[a]) == 1);
        for (std::size_t b = a + 1; b < set.roots.size(); ++b) {
          const auto& u = sys.roots()[set.roots[a]].vec;
          const auto& v = sys.roots()[set.roots[b]].vec;
          CHECK(sys.inner(u, v) == 0);
          CHECK_FALSE(sys.is_root(u - v));
          CHECK_FALSE(sys.is_root(u + v));
        }
      }
    }
  }

  TEST_CASE("exceptional P_phi") {
    const auto e3 = build_space({SpaceKind::EIII, 0, 0});
    const Rational h(1, 2);
    const RatVec eps = oracle::e6_eps();
    const RatVec psi = h * (eps + oracle::vec(8, {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, -1}}));
    const auto s3 = maximal_orthogonal_set(e3);
    REQUIRE(s3.roots.size() == 2);
    CHECK(e3.system().roots()[s3.roots[1]].vec == psi);

    const auto e7 = build_space({SpaceKind::EVII, 0, 0});
    const auto s7 = maximal_orthogonal_set(e7);
    std::set<RatVec> got;
    for (auto r : s7.roots) got.insert(e7.system().roots()[r].vec);
    const std::set<RatVec> expected = {oracle::vec(8, {{0, 1}, {1, -1}}), oracle::vec(8, {{0, 1}, {1, 1}}),
                                       oracle::e7_eps()};
    CHECK(got == expected);
  }

  TEST_CASE("Thimm chains are nested and compatible") {
    for (const auto& tag : sweep()) {
      const auto space = build_space(tag);
      const auto chain = thimm_chain(space);
      CAPTURE(space.name());
      CHECK(chain.truncated == !tag.is_classical());
      REQUIRE_FALSE(chain.levels.empty());
      for (std::size_t i = 0; i < chain.levels.size(); ++i) {
        const auto cert = check_compat(chain.levels[i].roots, space);
        CHECK(cert.is_subalgebra);
        CHECK(cert.compatible);
        if (i > 0) {
          const auto& big = chain.levels[i - 1].roots;
          const auto& small = chain.levels[i].roots;
          CHECK(small.size() < big.size());
          CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
        }
      }
      if (!tag.is_classical()) CHECK(chain.levels.front().roots == space.k_phi().roots);
    }
  }

  TEST_CASE("AIII chain labels") {
    const auto chain = thimm_chain(build_space({SpaceKind::AIII, 3, 1}));
    REQUIRE(chain.levels.size() == 3);
    CHECK(chain.levels.back().roots.empty());
  }

  TEST_CASE("a non-closed root set is not a subalgebra") {
    const auto space = build_space({SpaceKind::AIII, 3, 2});
    const auto& sys = space.system();
    // alpha_1 and alpha_2 with negatives but without alpha_1 + alpha_2.
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto idx = sys.index_of(sys.simple_roots()[i].vec);
      roots.push_back(idx);
      roots.push_back(sys.negative_of(idx));
    }
    std::sort(roots.begin(), roots.end());
    CHECK_FALSE(check_compat(roots, space).is_subalgebra);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_space({SpaceKind::AIII, 3, 4}), ConfigError);
    CHECK_THROWS_AS(build_space({SpaceKind::AIII, 0, 0}), ConfigError);
    CHECK_THROWS_AS(build_space({SpaceKind::BDI, 2, 0}), ConfigError);
    CHECK_THROWS_AS(build_space({SpaceKind::DIII, 2, 0}), ConfigError);
    CHECK_THROWS_AS(build_space({SpaceKind::CI, 0, 0}), ConfigError);
    CHECK_THROWS_AS(parse_space_kind("XYZ"), Error);
    CHECK(parse_space_kind("eiii") == SpaceKind::EIII);
    CHECK(SpaceTag{SpaceKind::AIII, 5, 2}.to_string() == "AIII(5,2)");
  }
}
