#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "csvortex/grid.hpp"
#include "csvortex/limit.hpp"
#include "csvortex/params.hpp"

namespace csvortex {

// The four additive pieces of the energy, all as integrals over the plane:
//   kinetic = 1/2 int |grad u|^2          mass  = omega/2 int u^2
//   chern   = 1/2 int u^2/|x|^2 (h-N)^2   power = -1/(p+1) int |u|^{p+1}
struct EnergyBreakdown {
  double kinetic = 0.0;
  double mass = 0.0;
  double chern = 0.0;
  double power = 0.0;
  double total = 0.0;
};

struct Residuals {
  double el_norm = 0.0;   // Euclidean norm of the discrete gradient
  double pohozaev = 0.0;  // int |grad u|^2 + int u^2/|x|^2 (h-N)^2 - (p-1)/(p+1) int |u|^{p+1}
  double nehari = 0.0;    // <I'(u), u>, written out through the quadrature
};

EnergyBreakdown energy(const RadialProfile& u, const Params& params);

// Exact derivative of the discrete energy with respect to the node values,
// node 0 pinned to 0. Differentiating through the cumulative integral in h
// produces the tail-potential (a0-type) contribution of the continuous
// Euler-Lagrange operator.
std::vector<double> grad_energy(const RadialProfile& u, const Params& params);

Residuals residuals(const RadialProfile& u, const Params& params);

// int |u|^{p+1} dx over the plane; the natural scale for the identity
// residuals above.
double power_integral(const RadialProfile& u, const Params& params);

// Allocation-free evaluation path for solvers: owns its workspaces, so use
// one instance per thread.
class EnergyEvaluator {
 public:
  EnergyEvaluator(std::shared_ptr<const RadialGrid> grid, const Params& params);

  EnergyBreakdown evaluate(std::span<const double> u) const;
  void gradient(std::span<const double> u, std::span<double> g) const;
  Residuals residuals_of(std::span<const double> u) const;
  double power_scale(std::span<const double> u) const;

  const RadialGrid& grid() const { return *grid_; }
  const Params& params() const { return params_; }

 private:
  std::shared_ptr<const RadialGrid> grid_;
  Params params_;
  mutable std::vector<double> h_, gnl_, tail_, gbuf_;
};

// Truncated translate U_rho(r) = phi0(r) U(r - rho), with phi0 the
// piecewise-linear ramp that vanishes on [0,1] and equals 1 beyond 2.
// Requires rho >= 3 and rho + support <= rmax.
RadialProfile translate_profile(const LineProfile& U, double rho,
                                std::shared_ptr<const RadialGrid> grid);
RadialProfile translate_profile(const std::function<double(double)>& U,
                                double support_radius, double rho,
                                std::shared_ptr<const RadialGrid> grid);

// u_omega(r) = sqrt(omega) u(sqrt(omega) r) resampled on the same grid,
// with lambda = omega^{(p-3)/2}; I_omega(u_omega) = omega * i_lambda(u).
struct Rescaled {
  RadialProfile profile;
  double lambda = 0.0;
};

Rescaled rescale(const RadialProfile& u, const Params& params);

// i_lambda(u) = 1/2 ||u||_{H^1}^2 + chern part - lambda/(p+1) int |u|^{p+1}.
double i_lambda(const RadialProfile& u, const Params& params);

}
