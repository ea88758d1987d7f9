#include "nijenhuis/errors.hpp"
#include "nijenhuis/geomcheck.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <numbers>

using namespace nijenhuis;

namespace {

GeomContext make_ctx(SpaceTag tag, RepKind kind = RepKind::Fundamental, Mutation m = Mutation::None) {
  const auto space = build_space(tag);
  return GeomContext(space, rep_for_space(space, kind), m);
}

// Plain Taylor series; fine for small norms.
CMatrix taylor_exp(const CMatrix& x) {
  CMatrix term = CMatrix::Identity(x.rows(), x.cols());
  CMatrix sum = term;
  for (int k = 1; k < 60; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

std::vector<std::pair<SpaceTag, RepKind>> classical_cases() {
  return {{{SpaceKind::AIII, 4, 2}, RepKind::Fundamental},
          {{SpaceKind::BDI, 8, 0}, RepKind::Spin},
          {{SpaceKind::BDI, 5, 0}, RepKind::Spin},
          {{SpaceKind::DIII, 4, 0}, RepKind::Fundamental},
          {{SpaceKind::CI, 3, 0}, RepKind::Fundamental}};
}

}  // namespace

TEST_SUITE("geomcheck") {
  TEST_CASE("exp_skew against a Taylor series") {
    const auto ctx = make_ctx({SpaceKind::CI, 3, 0});
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
      const CMatrix x = 0.5 * ctx.random_k(rng);
      const SkewExp e = exp_skew(x);
      CHECK(max_abs(e.u - taylor_exp(x)) < 1e-12);
      CHECK(max_abs(e.u * e.u.adjoint() - CMatrix::Identity(x.rows(), x.cols())) < 1e-13);
      CHECK(e.backward_error < 1e-12);
    }
    CHECK_THROWS_AS(exp_skew(CMatrix::Identity(3, 3)), NumericError);
  }

  TEST_CASE("orbit points keep the spectrum of rho_phi") {
    const auto ctx = make_ctx({SpaceKind::AIII, 5, 2});
    const auto s = random_orbit_point(ctx, 99, SampleMode::Generic);
    Eigen::SelfAdjointEigenSolver<CMatrix> a(Complex(0, -1) * s.mu), b(Complex(0, -1) * ctx.rho());
    CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs(s.mu + s.mu.adjoint()) < 1e-13);
  }

  TEST_CASE("levels start at k_phi") {
    for (const auto& [tag, kind] : classical_cases()) {
      const auto ctx = make_ctx(tag, kind);
      CHECK(ctx.levels().front().is_k_phi);
      CHECK(ctx.levels().front().spec.roots == ctx.space().k_phi().roots);
      for (std::size_t i = 1; i < ctx.levels().size(); ++i) CHECK_FALSE(ctx.levels()[i].is_k_phi);
    }
    // Projective space with phi = alpha_n: k_phi is the first chain level, same grading.
    const auto p3 = make_ctx({SpaceKind::AIII, 3, 3});
    CHECK(p3.levels().size() == thimm_chain(p3.space()).levels.size());
    // Grassmannian: k_phi is extra.
    const auto g = make_ctx({SpaceKind::AIII, 5, 2});
    CHECK(g.levels().size() == thimm_chain(g.space()).levels.size() + 1);
  }

  TEST_CASE("slice functions") {
    CHECK(slice_f(0) == 0);
    CHECK(slice_f(std::numbers::pi / 2) == doctest::Approx(-1.0));
    CHECK(slice_g(std::numbers::pi / 4) == doctest::Approx(-0.5));
    const auto ctx = make_ctx({SpaceKind::DIII, 4, 0});
    const std::vector<double> a = {std::numbers::pi / 4, 0.3};
    CHECK(rel_residual(slice_point(ctx, a).mu, slice_mu_closed_form(ctx, a)) < 1e-13);
    CHECK_THROWS_AS(slice_point(ctx, {0.1}), UsageError);
  }

  TEST_CASE("every suite passes on the classical instances") {
    SuiteConfig cfg;
    cfg.trials = 8;
    cfg.seed = 2024;
    for (const auto& [tag, kind] : classical_cases()) {
      const auto ctx = make_ctx(tag, kind);
      for (const auto& name : suite_names()) {
        const auto r = run_suite(name, ctx, cfg);
        CAPTURE(ctx.space().name());
        CAPTURE(name);
        CHECK(r.pass);
        CHECK(r.max_residual <= 1e-9);
        CHECK_FALSE(r.breakdown.empty());
      }
    }
  }

  TEST_CASE("AIII(4,2) commutation between the first two chain levels") {
    const auto ctx = make_ctx({SpaceKind::AIII, 4, 2});
    SuiteConfig cfg;
    cfg.trials = 10;
    cfg.seed = 5;
    const auto r = suite_commutation(ctx, cfg);
    CHECK(r.pass);
    bool found = false;
    for (const auto& b : r.breakdown)
      if (b.identity == "kks_bracket" && b.level.find(" <- ") != std::string::npos) found = true;
    CHECK(found);
  }

  TEST_CASE("negative control: generic elements do not Poisson commute") {
    const auto ctx = make_ctx({SpaceKind::AIII, 4, 2});
    std::mt19937_64 rng(8);
    const auto s = random_orbit_point(ctx, 8, SampleMode::Generic);
    const CMatrix x = ctx.random_k(rng), y = ctx.random_k(rng);
    CHECK(std::abs(ctx.rep().form(s.mu, commutator(x, y))) > 1e-3);
  }

  TEST_CASE("mutations are detected") {
    SuiteConfig cfg;
    cfg.trials = 5;
    cfg.seed = 17;
    for (Mutation m : {Mutation::DropHalf, Mutation::FlipSign, Mutation::LambdaZero}) {
      const auto ctx = make_ctx({SpaceKind::CI, 3, 0}, RepKind::Fundamental, m);
      const auto r = run_suite("explicit-formula", ctx, cfg);
      CAPTURE(to_string(m));
      CHECK_FALSE(r.pass);
      CHECK(r.max_residual >= 1e-2);
    }
    CHECK(parse_mutation("flip-sign") == Mutation::FlipSign);
    CHECK_THROWS_AS(parse_mutation("nope"), UsageError);
  }

  TEST_CASE("reports are deterministic and thread independent") {
    const auto ctx = make_ctx({SpaceKind::DIII, 4, 0});
    SuiteConfig cfg;
    cfg.trials = 6;
    cfg.seed = 77;
    const auto a = run_suite("basic-forms", ctx, cfg);
    cfg.threads = 3;
    const auto b = run_suite("basic-forms", ctx, cfg);
    REQUIRE(a.breakdown.size() == b.breakdown.size());
    for (std::size_t i = 0; i < a.breakdown.size(); ++i) {
      CHECK(a.breakdown[i].identity == b.breakdown[i].identity);
      CHECK(a.breakdown[i].residual == b.breakdown[i].residual);
    }
    CHECK(trial_seed(1, 2) == trial_seed(1, 2));
    CHECK(trial_seed(1, 2) != trial_seed(1, 3));
  }

  TEST_CASE("finite differences agree with the analytic derivatives") {
    const auto ctx = make_ctx({SpaceKind::BDI, 6, 0}, RepKind::Spin);
    std::mt19937_64 rng(4);
    const auto s = random_orbit_point(ctx, 4, SampleMode::Generic);
    const CMatrix x = ctx.random_k(rng);
    for (const auto& l : ctx.levels()) CHECK(finite_difference_check(ctx, s.mu, x, l, 5) < 1e-6);
    const Complex m = eval_dN_poly(ctx, s, x, ctx.k_phi_level(), 2, Route::Mother);
    const Complex a = eval_dN_poly(ctx, s, x, ctx.k_phi_level(), 2, Route::ARoute);
    CHECK(rel_residual(m, a) < 1e-12);
  }

  TEST_CASE("spectrum at distinguished points") {
    for (const auto& [tag, kind] : classical_cases()) {
      const auto ctx = make_ctx(tag, kind);
      const std::size_t m = ctx.slice().y.size();
      const auto base = nijenhuis_spectrum(ctx, slice_point(ctx, std::vector<double>(m, 0.0)));
      for (auto z : base.eigenvalues) CHECK(std::abs(z) < 1e-12);
      const auto top = nijenhuis_spectrum(ctx, slice_point(ctx, std::vector<double>(m, std::numbers::pi / 2)));
      bool has_two = false;
      for (auto z : top.eigenvalues) has_two = has_two || std::abs(z - Complex(2, 0)) < 1e-12;
      CHECK(has_two);
      CHECK(top.contains_minus_two_f);
      const auto rnd = nijenhuis_spectrum(ctx, random_orbit_point(ctx, 31, SampleMode::Slice));
      CHECK(rnd.max_mismatch < 1e-9);
      CHECK(rnd.contains_minus_two_f);
    }
  }

  TEST_CASE("contexts reject exceptional spaces") {
    const auto space = build_space({SpaceKind::EIII, 0, 0});
    const auto other = build_space({SpaceKind::CI, 3, 0});
    CHECK_THROWS_AS(GeomContext(space, rep_for_space(other, RepKind::Fundamental)), UsageError);
    CHECK_THROWS_AS(run_suite("nope", make_ctx({SpaceKind::CI, 3, 0}), SuiteConfig{}), UsageError);
  }
}
