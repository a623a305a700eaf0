#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "csvortex/grid.hpp"
#include "csvortex/rng.hpp"
#include "test_util.hpp"

using namespace csvortex;

TEST_CASE("uniform grid nodes and weights") {
  const auto g = make_grid(10.0, 10);
  REQUIRE(g.num_nodes() == 11);
  for (int i = 0; i <= 10; ++i) CHECK(g.nodes[i] == doctest::Approx(i).epsilon(1e-15));
  CHECK(g.nodes[0] == 0.0);

  const auto g16 = make_grid(1.0, 16);
  double wsum = 0.0;
  for (double w : g16.weights) {
    CHECK(w >= 0.0);
    wsum += w;
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("geometric grading clusters nodes at the origin") {
  const auto g = make_grid(40.0, 4000, Grading::geometric, 1.002);
  REQUIRE(g.num_nodes() == 4001);
  CHECK(g.spacing(0) < g.spacing(3999));
  CHECK(g.nodes[0] == 0.0);
  CHECK(g.nodes[4000] == doctest::Approx(40.0).epsilon(1e-14));
  for (std::size_t i = 0; i + 1 < g.num_nodes(); ++i) {
    REQUIRE(g.nodes[i] < g.nodes[i + 1]);
  }
}

TEST_CASE("grid construction errors") {
  CHECK_THROWS_AS(make_grid(-1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(10.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(10.0, 100, Grading::geometric, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(10.0, 100, Grading::geometric, 1.0), std::invalid_argument);
}

TEST_CASE("integrate basics") {
  const auto g = make_grid(10.0, 64);
  std::vector<double> ones(g.num_nodes(), 1.0);
  CHECK(integrate(g, ones) == doctest::Approx(10.0).epsilon(1e-14));

  // trapezoid is exact on linear integrands, any grading
  for (const auto& grid :
       {make_grid(1.0, 37), make_grid(1.0, 64, Grading::geometric, 1.05)}) {
    std::vector<double> f(grid.num_nodes());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = grid.nodes[i];
    CHECK(integrate(grid, f) == doctest::Approx(0.5).epsilon(1e-14));
  }

  const auto g4000 = make_grid(40.0, 4000);
  std::vector<double> e(g4000.num_nodes());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(-g4000.nodes[i]);
  CHECK(std::fabs(integrate(g4000, e) - (1.0 - std::exp(-40.0))) < 1e-5);

  std::vector<double> wrong(3, 0.0);
  CHECK_THROWS_AS(integrate(g4000, wrong), std::invalid_argument);
}

TEST_CASE("cumulative integrals") {
  const auto g = make_grid(1.0, 50);
  std::vector<double> zero(g.num_nodes(), 0.0);
  for (double v : cumulative_integral(g, zero)) CHECK(v == 0.0);
  for (double v : reverse_cumulative_integral(g, zero)) CHECK(v == 0.0);

  std::vector<double> lin(g.num_nodes());
  for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = g.nodes[i];
  const auto F = cumulative_integral(g, lin);
  CHECK(F.front() == 0.0);
  CHECK(F.back() == doctest::Approx(0.5).epsilon(1e-15));

  const auto g8 = make_grid(8.0, 4000);
  std::vector<double> f(g8.num_nodes());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = g8.nodes[i] * std::exp(-g8.nodes[i] * g8.nodes[i]);
  }
  const auto Fg = cumulative_integral(g8, f);
  for (std::size_t i = 0; i < f.size(); i += 97) {
    const double exact = 0.5 * (1.0 - std::exp(-g8.nodes[i] * g8.nodes[i]));
    CHECK(std::fabs(Fg[i] - exact) < 1e-6);
  }
}

TEST_CASE("forward plus reverse equals total at every node") {
  Rng rng(11);
  const auto g = make_grid(20.0, 333, Grading::geometric, 1.01);
  std::vector<double> f(g.num_nodes());
  for (auto& x : f) x = rng.uniform(-3.0, 3.0);
  const auto F = cumulative_integral(g, f);
  const auto G = reverse_cumulative_integral(g, f);
  const double total = integrate(g, f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(std::fabs(F[i] + G[i] - total) < 1e-13);
  }
}

TEST_CASE("trapezoid refinement order on a smooth integrand") {
  const double exact = std::sqrt(std::acos(-1.0)) / 2.0 * std::erf(4.0);
  auto err = [&](int cells) {
    const auto g = make_grid(4.0, cells);
    std::vector<double> f(g.num_nodes());
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = std::exp(-g.nodes[i] * g.nodes[i]);
    }
    return std::fabs(integrate(g, f) - exact);
  };
  const double e1 = err(200), e2 = err(400);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.9);
}

TEST_CASE("profile invariants") {
  auto g = std::make_shared<const RadialGrid>(make_grid(10.0, 100));
  std::vector<double> bad(g->num_nodes(), 0.0);
  bad[0] = 0.5;
  CHECK_THROWS_AS(make_profile(g, bad), std::invalid_argument);

  std::vector<double> nonfinite(g->num_nodes(), 0.0);
  nonfinite[5] = std::nan("");
  CHECK_THROWS_AS(make_profile(g, nonfinite), std::invalid_argument);

  std::vector<double> wrong(5, 0.0);
  CHECK_THROWS_AS(make_profile(g, wrong), std::invalid_argument);

  // samplers pin the origin node even when f(0) != 0
  const auto u = sample_profile(g, [](double r) { return std::exp(-r * r / 2.0); });
  CHECK(u.values[0] == 0.0);
  CHECK(u.values[1] > 0.0);
}

TEST_CASE("dirichlet integral is exact for linear profiles") {
  const auto g = make_grid(2.0, 64, Grading::geometric, 1.01);
  std::vector<double> u(g.num_nodes());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = 3.0 * g.nodes[i];
  // u' = 3 -> integral of 9 r dr over [0,2] = 18
  CHECK(dirichlet_integral_rdr(g, u) == doctest::Approx(18.0).epsilon(1e-13));
}
