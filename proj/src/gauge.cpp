#include "csvortex/gauge.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "csvortex/kernels.hpp"

namespace csvortex {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

GaugeFields gauge_fields(const RadialProfile& u, const Params& params) {
  params.validate();
  const auto& r = u.grid->nodes;
  const auto& vals = u.values;
  const std::size_t n = r.size();
  const double N = static_cast<double>(params.vortex);

  GaugeFields out;
  out.h.resize(n);
  out.a0.resize(n);

  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = r[i] * vals[i] * vals[i];
  kernels::cumtrap(r, f, out.h);
  for (std::size_t i = 0; i < n; ++i) out.h[i] *= 0.5;

  // tail integrand (h-N)/s u^2; limit 0 at the origin since u(0) = 0
  std::vector<double> tail(n);
  tail[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    tail[i] = (out.h[i] - N) * vals[i] * vals[i] / r[i];
  }
  kernels::revcumtrap(r, tail, out.a0);
  return out;
}

double k_value(const RadialProfile& u, const Params& params) {
  params.validate();
  const auto& grid = *u.grid;
  const double N = static_cast<double>(params.vortex);
  const GaugeFields gf = gauge_fields(u, params);
  return kPi * kernels::k_form_rdr(grid.weights, grid.nodes, u.values, gf.h, N);
}

InequalityCheck check_fundamental_inequality(const RadialProfile& u,
                                             const Params& params,
                                             double rel_tol) {
  params.validate();
  const auto& grid = *u.grid;
  const double N = static_cast<double>(params.vortex);
  const GaugeFields gf = gauge_fields(u, params);

  InequalityCheck out;
  out.lhs = kTwoPi * kernels::moment_rdr(grid.weights, grid.nodes, u.values, 4.0);
  const double grad2 = kTwoPi * kernels::dirichlet_rdr(grid.nodes, u.values);
  const double sing = kTwoPi * kernels::chern_rdr(grid.weights, grid.nodes,
                                                  u.values, gf.h, N);
  out.rhs = 4.0 * std::sqrt(grad2) * std::sqrt(sing);
  out.holds = out.lhs <= out.rhs * (1.0 + rel_tol);
  return out;
}

}
