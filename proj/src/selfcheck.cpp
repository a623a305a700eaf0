#include "csvortex/selfcheck.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "csvortex/energy.hpp"
#include "csvortex/gauge.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/kernels.hpp"
#include "csvortex/limit.hpp"
#include "csvortex/rng.hpp"

namespace csvortex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RadialProfile random_bumps(std::shared_ptr<const RadialGrid> grid, Rng& rng,
                           int max_bumps = 4, double max_center_frac = 0.6,
                           double max_sigma = 5.0) {
  const int nb = rng.uniform_int(1, max_bumps);
  std::vector<double> amp(nb), cen(nb), sig(nb);
  for (int b = 0; b < nb; ++b) {
    amp[b] = rng.uniform(-2.0, 2.0);
    cen[b] = rng.uniform(0.0, grid->rmax() * max_center_frac);
    sig[b] = rng.uniform(0.3, max_sigma);
  }
  return sample_profile(std::move(grid), [&](double r) {
    double v = 0.0;
    for (int b = 0; b < nb; ++b) {
      const double dm = (r - cen[b]) / sig[b];
      const double dp = (r + cen[b]) / sig[b];
      v += amp[b] * (std::exp(-0.5 * dm * dm) - std::exp(-0.5 * dp * dp));
    }
    return v;
  });
}

}

int run_property_checks(const PropertyCheckOptions& opts, std::ostream& out) {
  int failures = 0;
  const auto report = [&](const char* name, bool ok, const std::string& detail) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << "\n";
    if (!ok) ++failures;
  };

  Rng rng(opts.seed);
  auto grid = std::make_shared<const RadialGrid>(make_grid(40.0, 2000));

  // fundamental inequality fuzz over random profiles and vortex numbers
  {
    int bad = 0;
    for (int i = 0; i < opts.fuzz_profiles; ++i) {
      const RadialProfile u = random_bumps(grid, rng);
      Params params{2.0, 1.0, rng.uniform_int(0, 3)};
      if (!check_fundamental_inequality(u, params).holds) ++bad;
    }
    report("fundamental inequality fuzz", bad == 0,
           std::to_string(opts.fuzz_profiles) + " profiles, " +
               std::to_string(bad) + " violations");
  }

  // exact discrete gradient vs central finite differences
  {
    double worst = 0.0;
    for (int i = 0; i < opts.gradient_profiles; ++i) {
      RadialProfile u = random_bumps(grid, rng);
      const double usup = kernels::max_abs(u.values);
      if (usup > 0.0) {
        for (double& x : u.values) x /= usup;
      }
      Params params{2.0, 0.2, i % 3};
      RadialProfile v = random_bumps(grid, rng);
      double vn = kernels::l2_norm(v.values);
      if (vn == 0.0) continue;
      for (double& x : v.values) x /= vn;
      const auto g = grad_energy(u, params);
      const double slope = kernels::dot(g, v.values);
      const double eps = 1e-6;
      RadialProfile up = u, um = u;
      for (std::size_t j = 0; j < u.values.size(); ++j) {
        up.values[j] += eps * v.values[j];
        um.values[j] -= eps * v.values[j];
      }
      up.values[0] = um.values[0] = 0.0;
      const double fd =
          (energy(up, params).total - energy(um, params).total) / (2.0 * eps);
      // Cauchy-Schwarz scale: well-posed even for near-orthogonal directions
      const double scale = std::max(std::fabs(slope), kernels::l2_norm(g));
      worst = std::max(worst, std::fabs(fd - slope) / scale);
    }
    report("gradient vs finite differences", worst <= 1e-6,
           "worst relative error " + std::to_string(worst));
  }

  // forward + reverse cumulative integrals reconstruct the total
  {
    double worst = 0.0;
    for (int rep_i = 0; rep_i < 5; ++rep_i) {
      std::vector<double> f(grid->num_nodes());
      for (double& x : f) x = rng.uniform(-1.0, 1.0);
      const auto F = cumulative_integral(*grid, f);
      const auto G = reverse_cumulative_integral(*grid, f);
      const double total = integrate(*grid, f);
      for (std::size_t i = 0; i < f.size(); ++i) {
        worst = std::max(worst, std::fabs(F[i] + G[i] - total));
      }
    }
    report("cumulative integral consistency", worst <= 1e-12,
           "worst |F+G-total| = " + std::to_string(worst));
  }

  // branch roots satisfy the algebraic equation across the window
  {
    const double p = 2.0;
    const double m = compute_m(p);
    const double omega1 = compute_omega1(p, m);
    const double q = (5.0 - p) / (p - 1.0);
    double worst = 0.0;
    bool order_ok = true;
    double prev_k1 = 0.0, prev_k2 = 1e300;
    for (int i = 1; i <= 24; ++i) {
      const double omega = omega1 * i / 25.0;
      const KBranches kb = solve_k_branches(p, omega, m);
      if (!kb.k1 || !kb.k2) {
        order_ok = false;
        break;
      }
      for (double k : {*kb.k1, *kb.k2}) {
        worst = std::max(worst,
                         std::fabs(k - 0.25 * m * m * std::pow(k, q) - omega));
      }
      order_ok = order_ok && *kb.k1 > prev_k1 && *kb.k2 < prev_k2 && *kb.k1 < *kb.k2;
      prev_k1 = *kb.k1;
      prev_k2 = *kb.k2;
    }
    report("branch equation residuals and monotonicity",
           worst <= 1e-12 && order_ok, "worst residual " + std::to_string(worst));
  }

  // soliton plugged into the limit problem
  {
    const KBranches kb = solve_k_branches(2.0, 0.05, compute_m(2.0));
    const double res = limit_ode_residual_max(2.0, 0.05, *kb.k2);
    report("limit ODE residual", res <= 1e-6, "max residual " + std::to_string(res));
  }

  // translate slope against the limit functional
  {
    const double p = 2.0, omega = 0.05;
    const double m = compute_m(p);
    const KBranches kb = solve_k_branches(p, omega, m);
    const double k2 = *kb.k2;
    const double J = J_of_soliton(p, omega, k2);
    auto tgrid = std::make_shared<const RadialGrid>(make_grid(75.0, 3750));
    Params params{p, omega, 1};
    const double support = -std::log(1e-6) / std::sqrt(k2);
    std::vector<double> rhos{20.0, 22.5, 25.0, 27.5, 30.0};
    std::vector<double> es;
    for (double rho : rhos) {
      const auto up = translate_profile(
          [&](double t) { return eval_wk(p, k2, t); }, support, rho, tgrid);
      es.push_back(energy(up, params).total);
    }
    // least squares for E = a rho + b + c/rho
    double a = 0.0;
    {
      double M[3][3] = {}, rhs[3] = {};
      for (std::size_t i = 0; i < rhos.size(); ++i) {
        const double x[3] = {rhos[i], 1.0, 1.0 / rhos[i]};
        for (int r = 0; r < 3; ++r) {
          rhs[r] += x[r] * es[i];
          for (int c = 0; c < 3; ++c) M[r][c] += x[r] * x[c];
        }
      }
      // tiny Gaussian elimination
      for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r) {
          if (std::fabs(M[r][c]) > std::fabs(M[piv][c])) piv = r;
        }
        std::swap(M[c], M[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (int r = c + 1; r < 3; ++r) {
          const double f = M[r][c] / M[c][c];
          for (int cc = c; cc < 3; ++cc) M[r][cc] -= f * M[c][cc];
          rhs[r] -= f * rhs[c];
        }
      }
      double sol[3];
      for (int r = 2; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < 3; ++c) s -= M[r][c] * sol[c];
        sol[r] = s / M[r][r];
      }
      a = sol[0];
    }
    const double target = kTwoPi * J;
    const double tol = 0.05 * std::max(std::fabs(target), kTwoPi * 1e-3);
    report("translate slope vs limit functional", std::fabs(a - target) <= tol,
           "slope " + std::to_string(a) + " vs " + std::to_string(target));
  }

  // rescaling identity
  {
    auto rg = std::make_shared<const RadialGrid>(make_grid(30.0, 3000));
    const RadialProfile u =
        sample_profile(rg, [](double r) { return r * std::exp(-0.5 * r * r); });
    Params params{2.0, 0.25, 1};
    const auto [uw, lambda] = rescale(u, params);
    const double lhs = energy(uw, params).total;
    const double rhs = params.omega * i_lambda(u, params);
    const double rel = std::fabs(lhs - rhs) / std::max(1e-30, std::fabs(rhs));
    report("rescaling identity", rel <= 1e-5, "relative mismatch " + std::to_string(rel));
  }

  return failures;
}

}
