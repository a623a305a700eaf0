#pragma once

#include "csvortex/grid.hpp"
#include "csvortex/params.hpp"

namespace csvortex {

// Nonlocal fields induced by the matter density:
//   h(r)  = 1/2 * integral_0^r s u^2(s) ds        (cumulative mass)
//   a0(r) = integral_r^rmax (h(s)-N)/s u^2(s) ds  (tail potential, gauge
//           constant fixed to 0)
// h is nondecreasing with h(0) = 0; a0(rmax) = 0 by construction.
struct GaugeFields {
  std::vector<double> h;
  std::vector<double> a0;
};

GaugeFields gauge_fields(const RadialProfile& u, const Params& params);

// K(u) = 1/2 * integral_{R^2} (h^2 - 2 N h) u^2/|x|^2 dx, the part of the
// nonlocal energy that survives weak limits. Singular integrand at the
// origin evaluates to 0 since u(0) = 0.
double k_value(const RadialProfile& u, const Params& params);

struct InequalityCheck {
  double lhs = 0.0;  // integral |u|^4 dx
  double rhs = 0.0;  // 4 (integral |grad u|^2)^{1/2} (integral u^2/|x|^2 (h-N)^2)^{1/2}
  bool holds = false;
};

// lhs <= rhs holds for every admissible profile; a failure beyond the
// relative slack indicates a quadrature bug, not a counterexample.
InequalityCheck check_fundamental_inequality(const RadialProfile& u,
                                             const Params& params,
                                             double rel_tol = 1e-8);

}
