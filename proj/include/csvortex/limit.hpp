#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csvortex {

// Closed-form one-dimensional limit theory: the energy of far translates
// of a profile is governed by the line functional
//   J_omega(U) = 1/2 int (U'^2 + omega U^2) + 1/24 (int U^2)^3
//                - 1/(p+1) int |U|^{p+1},
// whose positive critical points are the solitons w_k below.

struct LimitConstants {
  double p = 0.0;
  double m = 0.0;       // int w_1^2 dr
  double omega0 = 0.0;  // min J = 0 first attained away from 0
  double omega1 = 0.0;  // tangency of the branch equation; no solitons above
};

// m = int (2/(p+1) cosh^2((p-1)r/2))^{2/(1-p)} dr by adaptive quadrature,
// absolute tolerance 1e-10. Requires p in (1,3).
double compute_m(double p);

double compute_omega0(double p);
double compute_omega0(double p, double m);

// Tangency point k* of g(k) = k - m^2 k^q / 4 - omega, q = (5-p)/(p-1).
double branch_tangency_k(double p, double m);
double compute_omega1(double p, double m);

LimitConstants limit_constants(double p);

// Roots 0 < k1 < k2 of k = omega + m^2 k^{(5-p)/(p-1)} / 4. Both present
// for omega < omega1, a double root at omega1, none above.
struct KBranches {
  double omega = 0.0;
  std::optional<double> k1;
  std::optional<double> k2;
};

KBranches solve_k_branches(double p, double omega, double m);

// w_1(r) = (2/(p+1) cosh^2((p-1)r/2))^{1/(1-p)},  w_k(r) = k^{1/(p-1)} w_1(sqrt(k) r)
double eval_w1(double p, double r);
double eval_wk(double p, double k, double r);
double eval_wk_prime(double p, double k, double r);
double eval_wk_second(double p, double k, double r);

// Symmetric uniform grid [-L, L], L = 30/((p-1) sqrt(k)), 8192 cells:
// wide and fine enough to resolve w_k across p in (1,3).
struct LineGrid {
  std::vector<double> nodes;
  double spacing = 0.0;
};

LineGrid make_line_grid(double p, double k);

double line_integrate(const LineGrid& grid, std::span<const double> f);

struct LineProfile {
  LineGrid grid;
  std::vector<double> values;

  // Largest |r| where |U| still exceeds rel_tol * max|U|.
  double support_radius(double rel_tol = 1e-6) const;
};

LineProfile sample_soliton(double p, double k);

// J via line trapezoid; the first overload differentiates the
// piecewise-linear interpolant, the second takes analytic U' samples.
double J_energy(const LineGrid& grid, std::span<const double> u, double p,
                double omega);
double J_energy(const LineGrid& grid, std::span<const double> u,
                std::span<const double> du, double p, double omega);

// J_omega(w_k) with analytic derivative samples.
double J_of_soliton(double p, double omega, double k);

// max over grid nodes of |-w'' + omega w + (int w^2)^2 w / 4 - |w|^{p-1} w|
// for w = w_k; the nonlocal coefficient is computed from the quadrature.
double limit_ode_residual_max(double p, double omega, double k);

struct BranchClassification {
  double p = 0.0;
  double omega = 0.0;
  double omega0 = 0.0;
  double omega1 = 0.0;
  KBranches branches;
  std::optional<double> J_k1;
  std::optional<double> J_k2;
  std::string regime;  // below_threshold | at_threshold | above_threshold
};

BranchClassification classify_branches(double p, double omega);

// Bisection on omega of sign(J_omega(w_{k2})): an independent route to
// omega0 that never touches the closed form.
double locate_omega0_by_sign_change(double p, double tol = 1e-10);

}
