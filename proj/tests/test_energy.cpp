#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "csvortex/energy.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/kernels.hpp"
#include "csvortex/limit.hpp"
#include "csvortex/rng.hpp"
#include "test_util.hpp"

using namespace csvortex;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RadialProfile gaussian_profile(std::shared_ptr<const RadialGrid> grid) {
  return sample_profile(std::move(grid),
                        [](double r) { return std::exp(-0.5 * r * r); });
}

}

TEST_CASE("zero profile has zero energy, gradient and residuals") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(20.0, 500));
  const auto u = make_profile(grid, std::vector<double>(grid->num_nodes(), 0.0));
  Params params{2.0, 0.5, 1};
  const auto b = energy(u, params);
  CHECK(b.kinetic == 0.0);
  CHECK(b.mass == 0.0);
  CHECK(b.chern == 0.0);
  CHECK(b.power == 0.0);
  CHECK(b.total == 0.0);
  for (double g : grad_energy(u, params)) CHECK(g == 0.0);
  const auto res = residuals(u, params);
  CHECK(res.el_norm == 0.0);
  CHECK(res.pohozaev == 0.0);
  CHECK(res.nehari == 0.0);
}

TEST_CASE("breakdown signs and additivity") {
  Rng rng(3);
  auto grid = std::make_shared<const RadialGrid>(make_grid(30.0, 1000));
  for (int rep = 0; rep < 10; ++rep) {
    const auto u = testutil::random_bumps(grid, rng);
    Params params{rng.uniform(1.2, 2.8), rng.uniform(0.05, 2.0),
                  rng.uniform_int(0, 2)};
    const auto b = energy(u, params);
    CHECK(b.kinetic >= 0.0);
    CHECK(b.mass >= 0.0);
    CHECK(b.chern >= 0.0);
    CHECK(b.power <= 0.0);
    CHECK(std::fabs(b.total - (b.kinetic + b.mass + b.chern + b.power)) <=
          1e-12 * (std::fabs(b.kinetic) + std::fabs(b.mass) + std::fabs(b.chern) +
                   std::fabs(b.power) + 1.0));
  }
}

TEST_CASE("energy matches a fine-grid evaluation") {
  Params params{2.0, 1.0, 0};
  auto coarse = std::make_shared<const RadialGrid>(make_grid(8.0, 4000));
  auto fine = std::make_shared<const RadialGrid>(make_grid(8.0, 32000));
  const double ec = energy(gaussian_profile(coarse), params).total;
  const double ef = energy(gaussian_profile(fine), params).total;
  CHECK(testutil::rel_err(ec, ef) < 1e-5);
}

TEST_CASE("gradient matches central finite differences on random profiles") {
  Rng rng(2024);
  auto grid = std::make_shared<const RadialGrid>(make_grid(40.0, 2000));
  double worst = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    auto u = testutil::random_bumps(grid, rng);
    const double usup = kernels::max_abs(u.values);
    for (auto& x : u.values) x /= usup;
    Params params{2.0, 0.2, rep % 3};
    auto v = testutil::random_bumps(grid, rng);
    const double vn = kernels::l2_norm(v.values);
    for (auto& x : v.values) x /= vn;

    const auto g = grad_energy(u, params);
    const double slope = kernels::dot(g, v.values);
    const double eps = 1e-6;
    RadialProfile up = u, um = u;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      up.values[i] += eps * v.values[i];
      um.values[i] -= eps * v.values[i];
    }
    up.values[0] = um.values[0] = 0.0;
    const double fd = (energy(up, params).total - energy(um, params).total) / (2.0 * eps);
    // measured against the Cauchy-Schwarz scale; a raw |slope| denominator
    // is ill-posed when v is nearly orthogonal to g
    const double scale = std::max(std::fabs(slope), kernels::l2_norm(g));
    worst = std::max(worst, std::fabs(fd - slope) / scale);
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("nehari residual equals the gradient pairing exactly") {
  Rng rng(9);
  auto grid = std::make_shared<const RadialGrid>(make_grid(30.0, 1500));
  for (int rep = 0; rep < 5; ++rep) {
    const auto u = testutil::random_bumps(grid, rng);
    Params params{2.0, 0.3, rep % 3};
    const auto res = residuals(u, params);
    const auto g = grad_energy(u, params);
    const double pairing = kernels::dot(g, u.values);
    CHECK(std::fabs(res.nehari - pairing) <=
          1e-10 * std::max(1.0, std::fabs(pairing)));
  }
}

TEST_CASE("pohozaev residual is reported nonzero off criticality") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(12.0, 2000));
  const auto u = gaussian_profile(grid);
  Params params{2.0, 1.0, 0};
  const auto res = residuals(u, params);
  CHECK(std::fabs(res.pohozaev) > 1e-3);
}

TEST_CASE("translate of the zero function is zero") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(40.0, 800));
  const auto u = translate_profile([](double) { return 0.0; }, 5.0, 10.0, grid);
  for (double v : u.values) CHECK(v == 0.0);
}

TEST_CASE("translate preconditions") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(40.0, 800));
  const auto U = [](double t) { return std::exp(-std::fabs(t)); };
  CHECK_THROWS_AS(translate_profile(U, 10.0, 2.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(translate_profile(U, 25.0, 20.0, grid), std::invalid_argument);
}

TEST_CASE("translate energy slope approaches the limit functional") {
  // spec of the check: with J != 0 the ratio I(U_rho)/(2 pi rho J) -> 1;
  // at the threshold frequency I(U_rho)/(2 pi rho) -> 0
  const double p = 2.0;
  const double m = compute_m(p);
  auto grid = std::make_shared<const RadialGrid>(make_grid(75.0, 5000));

  SUBCASE("negative slope below the threshold") {
    const double omega = 0.05;
    const auto kb = solve_k_branches(p, omega, m);
    const double k2 = *kb.k2;
    const double J = J_of_soliton(p, omega, k2);
    REQUIRE(J < 0.0);
    Params params{p, omega, 1};
    const double support = -std::log(1e-6) / std::sqrt(k2);
    auto wk = [&](double t) { return eval_wk(p, k2, t); };
    // the lemma constant -C < 0 pushes I(U_rho) below 2 pi rho J, so the
    // ratio approaches 1 from above, shrinking like C/(2 pi rho |J|)
    std::vector<double> ratios;
    for (double rho : {20.0, 26.0, 32.0}) {
      const auto u = translate_profile(wk, support, rho, grid);
      ratios.push_back(energy(u, params).total / (kTwoPi * rho * J));
    }
    for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
      CHECK(ratios[i] > ratios[i + 1]);
      CHECK(ratios[i + 1] > 1.0);
    }
    CHECK(std::fabs(ratios.back() - 1.0) < std::fabs(ratios.front() - 1.0));
  }

  SUBCASE("vanishing normalized energy at the threshold") {
    const double omega0 = compute_omega0(p, m);
    const auto kb = solve_k_branches(p, omega0, m);
    const double k2 = *kb.k2;
    Params params{p, omega0, 1};
    const double support = -std::log(1e-6) / std::sqrt(k2);
    auto wk = [&](double t) { return eval_wk(p, k2, t); };
    double prev = 1e300;
    for (double rho : {15.0, 25.0, 35.0}) {
      const auto u = translate_profile(wk, support, rho, grid);
      const double val = std::fabs(energy(u, params).total / (kTwoPi * rho));
      CHECK(val < prev);
      prev = val;
    }
    CHECK(prev < 0.02);
  }

  SUBCASE("shifted energies converge to the lemma constant") {
    const double omega = 0.05;
    const auto kb = solve_k_branches(p, omega, m);
    const double k2 = *kb.k2;
    const double J = J_of_soliton(p, omega, k2);
    Params params{p, omega, 0};
    const double support = -std::log(1e-6) / std::sqrt(k2);
    auto wk = [&](double t) { return eval_wk(p, k2, t); };
    std::vector<double> shifted;
    for (double rho : {15.0, 20.0, 25.0, 30.0}) {
      const auto u = translate_profile(wk, support, rho, grid);
      shifted.push_back(energy(u, params).total - kTwoPi * rho * J);
    }
    // increments shrink as the sequence settles on -C
    const double d1 = std::fabs(shifted[1] - shifted[0]);
    const double d3 = std::fabs(shifted[3] - shifted[2]);
    CHECK(d3 < d1);
    CHECK(shifted[3] < 0.0);  // the constant is positive
  }
}

TEST_CASE("translate accepts sampled line profiles") {
  const double p = 2.0;
  const auto kb = solve_k_branches(p, 0.05, compute_m(p));
  const LineProfile sol = sample_soliton(p, *kb.k2);
  auto grid = std::make_shared<const RadialGrid>(make_grid(75.0, 3000));
  const auto u = translate_profile(sol, 20.0, grid);
  // the sampled route matches the closed-form route
  const double support = sol.support_radius();
  const auto v = translate_profile(
      [&](double t) { return eval_wk(p, *kb.k2, t); }, support, 20.0, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    worst = std::max(worst, std::fabs(u.values[i] - v.values[i]));
  }
  CHECK(worst < 5e-6);  // piecewise-linear sampling of the soliton
}

TEST_CASE("rescaling identity") {
  SUBCASE("omega = 1 is the identity") {
    auto grid = std::make_shared<const RadialGrid>(make_grid(12.0, 1000));
    const auto u = gaussian_profile(grid);
    Params params{2.0, 1.0, 1};
    const auto [uw, lambda] = rescale(u, params);
    CHECK(lambda == 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      worst = std::max(worst, std::fabs(uw.values[i] - u.values[i]));
    }
    CHECK(worst < 1e-12);
    CHECK(testutil::rel_err(energy(uw, params).total,
                            params.omega * i_lambda(u, params)) < 1e-12);
  }

  SUBCASE("omega = 0.25 on a fine grid") {
    auto grid = std::make_shared<const RadialGrid>(make_grid(30.0, 6000));
    const auto u = sample_profile(
        grid, [](double r) { return r * std::exp(-0.5 * r * r); });
    Params params{2.0, 0.25, 1};
    const auto [uw, lambda] = rescale(u, params);
    CHECK(lambda == doctest::Approx(std::pow(0.25, -0.5)).epsilon(1e-14));
    CHECK(testutil::rel_err(energy(uw, params).total,
                            params.omega * i_lambda(u, params)) < 1e-5);
  }

  SUBCASE("zero profile maps to zero") {
    auto grid = std::make_shared<const RadialGrid>(make_grid(10.0, 300));
    const auto u = make_profile(grid, std::vector<double>(grid->num_nodes(), 0.0));
    Params params{2.0, 0.25, 1};
    const auto [uw, lambda] = rescale(u, params);
    CHECK(energy(uw, params).total == 0.0);
    CHECK(i_lambda(u, params) == 0.0);
  }

  SUBCASE("contraction past the grid radius is refused") {
    auto grid = std::make_shared<const RadialGrid>(make_grid(10.0, 300));
    const auto u = sample_profile(grid, [](double r) { return std::exp(-0.1 * r); });
    Params params{2.0, 4.0, 1};
    CHECK_THROWS_AS(rescale(u, params), std::invalid_argument);
  }
}
