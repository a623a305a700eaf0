#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "csvortex/grid.hpp"
#include "csvortex/rng.hpp"

namespace testutil {

// Random sums of odd-reflected Gaussian bumps: smooth, decaying and exactly
// zero at the origin, so they are admissible profiles for any vortex number.
inline csvortex::RadialProfile random_bumps(
    std::shared_ptr<const csvortex::RadialGrid> grid, csvortex::Rng& rng,
    int max_bumps = 4, double max_center_frac = 0.6, double max_sigma = 5.0) {
  const int nb = rng.uniform_int(1, max_bumps);
  std::vector<double> amp(nb), cen(nb), sig(nb);
  for (int b = 0; b < nb; ++b) {
    amp[b] = rng.uniform(-2.0, 2.0);
    cen[b] = rng.uniform(0.0, grid->rmax() * max_center_frac);
    sig[b] = rng.uniform(0.3, max_sigma);
  }
  return csvortex::sample_profile(std::move(grid), [=](double r) {
    double v = 0.0;
    for (int b = 0; b < nb; ++b) {
      const double dm = (r - cen[b]) / sig[b];
      const double dp = (r + cen[b]) / sig[b];
      v += amp[b] * (std::exp(-0.5 * dm * dm) - std::exp(-0.5 * dp * dp));
    }
    return v;
  });
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

}
