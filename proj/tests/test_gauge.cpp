#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "csvortex/gauge.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/rng.hpp"
#include "test_util.hpp"

using namespace csvortex;

namespace {
RadialProfile gaussian_profile(std::shared_ptr<const RadialGrid> grid) {
  return sample_profile(std::move(grid),
                        [](double r) { return std::exp(-0.5 * r * r); });
}
}

TEST_CASE("zero profile induces zero fields") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(10.0, 200));
  const auto u = make_profile(grid, std::vector<double>(grid->num_nodes(), 0.0));
  Params params{2.0, 1.0, 2};
  const auto gf = gauge_fields(u, params);
  for (double v : gf.h) CHECK(v == 0.0);
  for (double v : gf.a0) CHECK(v == 0.0);
  CHECK(k_value(u, params) == 0.0);
  const auto iq = check_fundamental_inequality(u, params);
  CHECK(iq.lhs == 0.0);
  CHECK(iq.rhs == 0.0);
  CHECK(iq.holds);
}

TEST_CASE("gaussian h matches the closed form") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(8.0, 4000));
  const auto u = gaussian_profile(grid);
  for (int N : {0, 3}) {
    Params params{2.0, 1.0, N};
    const auto gf = gauge_fields(u, params);
    double worst = 0.0;
    for (std::size_t i = 0; i < gf.h.size(); ++i) {
      const double r = grid->nodes[i];
      worst = std::max(worst,
                       std::fabs(gf.h[i] - 0.25 * (1.0 - std::exp(-r * r))));
    }
    CHECK(worst < 1e-6);
    CHECK(gf.a0.back() == 0.0);
  }
}

TEST_CASE("h(rmax) equals the planar mass over 4 pi") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(8.0, 4000));
  const auto u = gaussian_profile(grid);
  Params params{2.0, 1.0, 0};
  const auto gf = gauge_fields(u, params);
  // mass of exp(-r^2) with the 2 pi r weight is pi, so h(inf) = 1/4
  CHECK(gf.h.back() == doctest::Approx(0.25).epsilon(1e-5));
  std::vector<double> f(grid->num_nodes());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = grid->nodes[i] * u.values[i] * u.values[i];
  }
  const double mass2d = 2.0 * std::numbers::pi * integrate(*grid, f);
  CHECK(gf.h.back() ==
        doctest::Approx(mass2d / (4.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("h is nondecreasing for random profiles") {
  Rng rng(5);
  auto grid = std::make_shared<const RadialGrid>(make_grid(30.0, 800));
  for (int rep = 0; rep < 20; ++rep) {
    const auto u = testutil::random_bumps(grid, rng);
    const auto gf = gauge_fields(u, Params{2.0, 1.0, rng.uniform_int(0, 3)});
    for (std::size_t i = 0; i + 1 < gf.h.size(); ++i) {
      REQUIRE(gf.h[i + 1] >= gf.h[i]);
    }
  }
}

TEST_CASE("K is nonnegative at N = 0") {
  Rng rng(17);
  auto grid = std::make_shared<const RadialGrid>(make_grid(30.0, 800));
  for (int rep = 0; rep < 20; ++rep) {
    const auto u = testutil::random_bumps(grid, rng);
    CHECK(k_value(u, Params{2.0, 1.0, 0}) >= 0.0);
  }
}

TEST_CASE("K agrees with a fine-grid evaluation") {
  auto coarse = std::make_shared<const RadialGrid>(make_grid(8.0, 4000));
  auto fine = std::make_shared<const RadialGrid>(make_grid(8.0, 32000));
  Params params{2.0, 1.0, 1};
  const double kc = k_value(gaussian_profile(coarse), params);
  const double kf = k_value(gaussian_profile(fine), params);
  CHECK(testutil::rel_err(kc, kf) < 1e-5);
}

TEST_CASE("K converges at second order under refinement") {
  Params params{2.0, 1.0, 1};
  auto value = [&](int cells) {
    auto g = std::make_shared<const RadialGrid>(make_grid(8.0, cells));
    return k_value(gaussian_profile(g), params);
  };
  const double k1 = value(1000), k2 = value(2000), k4 = value(4000);
  const double order = std::log2(std::fabs(k1 - k2) / std::fabs(k2 - k4));
  CHECK(order >= 1.9);
}

TEST_CASE("fundamental inequality holds on a gaussian and under fuzz") {
  auto grid = std::make_shared<const RadialGrid>(make_grid(20.0, 2000));
  const auto gauss = gaussian_profile(grid);
  CHECK(check_fundamental_inequality(gauss, Params{2.0, 1.0, 0}).holds);

  Rng rng(123);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto u = testutil::random_bumps(grid, rng);
    Params params{2.0, 1.0, rng.uniform_int(0, 3)};
    if (!check_fundamental_inequality(u, params).holds) ++violations;
  }
  CHECK(violations == 0);
}
