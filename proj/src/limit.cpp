#include "csvortex/limit.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace csvortex {

namespace {

void require_p(double p) {
  if (!(p > 1.0) || !(p < 3.0)) {
    throw std::invalid_argument("exponent p must lie in (1,3), got " + std::to_string(p));
  }
}

// adaptive Simpson with absolute tolerance
double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

double exponent_q(double p) { return (5.0 - p) / (p - 1.0); }

}

double eval_w1(double p, double r) {
  return std::pow(2.0 / (p + 1.0) * std::pow(std::cosh(0.5 * (p - 1.0) * r), 2),
                  1.0 / (1.0 - p));
}

double eval_wk(double p, double k, double r) {
  return std::pow(k, 1.0 / (p - 1.0)) * eval_w1(p, std::sqrt(k) * r);
}

double eval_wk_prime(double p, double k, double r) {
  // w1' = -w1 tanh(b r) with b = (p-1)/2, since (2/(p-1)) * b = 1
  const double b = 0.5 * (p - 1.0);
  const double x = std::sqrt(k) * r;
  const double w1p = -eval_w1(p, x) * std::tanh(b * x);
  return std::pow(k, 1.0 / (p - 1.0)) * std::sqrt(k) * w1p;
}

double eval_wk_second(double p, double k, double r) {
  // w1'' = b w1 (a - (a+1) sech^2(b r)), a = 2/(p-1), b = (p-1)/2
  const double a = 2.0 / (p - 1.0);
  const double b = 0.5 * (p - 1.0);
  const double x = std::sqrt(k) * r;
  const double sech = 1.0 / std::cosh(b * x);
  const double w1pp = b * eval_w1(p, x) * (a - (a + 1.0) * sech * sech);
  return std::pow(k, 1.0 / (p - 1.0)) * k * w1pp;
}

double compute_m(double p) {
  require_p(p);
  const auto integrand = [p](double r) {
    const double w = eval_w1(p, r);
    return w * w;
  };
  // the tail decays like exp(-2r) for every p; push R out until the
  // integrand is below 1e-16, then once more for stability
  double R = 20.0;
  while (integrand(R) >= 1e-16) R *= 2.0;
  const double half = adaptive_simpson(integrand, 0.0, R, 0.5e-10);
  const double half2 = adaptive_simpson(integrand, 0.0, 2.0 * R, 0.5e-10);
  return 2.0 * (std::fabs(half2 - half) < 1e-12 ? half : half2);
}

double compute_omega0(double p, double m) {
  require_p(p);
  const double e = (p - 1.0) / (2.0 * (3.0 - p));
  return (3.0 - p) / (3.0 + p) * std::pow(3.0, e) * std::pow(2.0, 2.0 / (3.0 - p)) *
         std::pow(m * m * (3.0 + p) / (p - 1.0), -e);
}

double compute_omega0(double p) { return compute_omega0(p, compute_m(p)); }

double branch_tangency_k(double p, double m) {
  const double q = exponent_q(p);
  return std::pow(4.0 / (q * m * m), 1.0 / (q - 1.0));
}

double compute_omega1(double p, double m) {
  require_p(p);
  const double q = exponent_q(p);
  const double ks = branch_tangency_k(p, m);
  return ks - 0.25 * m * m * std::pow(ks, q);
}

LimitConstants limit_constants(double p) {
  LimitConstants c;
  c.p = p;
  c.m = compute_m(p);
  c.omega0 = compute_omega0(p, c.m);
  c.omega1 = compute_omega1(p, c.m);
  return c;
}

KBranches solve_k_branches(double p, double omega, double m) {
  require_p(p);
  if (!(omega > 0.0)) {
    throw std::invalid_argument("omega must be positive, got " + std::to_string(omega));
  }
  const double q = exponent_q(p);
  const auto g = [&](double k) { return k - 0.25 * m * m * std::pow(k, q) - omega; };
  const auto gp = [&](double k) { return 1.0 - 0.25 * m * m * q * std::pow(k, q - 1.0); };

  KBranches out;
  out.omega = omega;
  const double ks = branch_tangency_k(p, m);
  const double omega1 = ks - 0.25 * m * m * std::pow(ks, q);

  if (omega > omega1 * (1.0 + 1e-14)) return out;  // no positive branches
  if (std::fabs(omega - omega1) <= omega1 * 1e-14) {
    out.k1 = out.k2 = ks;
    return out;
  }

  // bisection between analytic brackets, then Newton polish
  const auto refine = [&](double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(lo) * g(mid) <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    double k = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
      const double gk = g(k);
      if (std::fabs(gk) <= 1e-15 * std::max(1.0, k)) break;
      const double step = gk / gp(k);
      double kn = k - step;
      if (!(kn > lo) || !(kn < hi)) kn = 0.5 * (lo + hi);
      k = kn;
    }
    return k;
  };

  double hi = 2.0 * ks;
  while (g(hi) > 0.0) hi *= 2.0;
  out.k1 = refine(std::min(omega * 1e-6, ks * 1e-9), ks);
  out.k2 = refine(ks, hi);
  return out;
}

LineGrid make_line_grid(double p, double k) {
  require_p(p);
  if (!(k > 0.0)) {
    throw std::invalid_argument("soliton k must be positive, got " + std::to_string(k));
  }
  constexpr int kCells = 8192;
  const double L = 30.0 / ((p - 1.0) * std::sqrt(k));
  LineGrid g;
  g.spacing = 2.0 * L / kCells;
  g.nodes.resize(kCells + 1);
  for (int i = 0; i <= kCells; ++i) {
    g.nodes[i] = -L + g.spacing * i;
  }
  return g;
}

double line_integrate(const LineGrid& grid, std::span<const double> f) {
  if (f.size() != grid.nodes.size()) {
    throw std::invalid_argument("line integrand size mismatch");
  }
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * grid.spacing;
}

double LineProfile::support_radius(double rel_tol) const {
  double sup = 0.0;
  for (double v : values) sup = std::max(sup, std::fabs(v));
  if (sup == 0.0) return 0.0;
  double rad = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::fabs(values[i]) >= rel_tol * sup) {
      rad = std::max(rad, std::fabs(grid.nodes[i]));
    }
  }
  return rad;
}

LineProfile sample_soliton(double p, double k) {
  LineProfile out;
  out.grid = make_line_grid(p, k);
  out.values.resize(out.grid.nodes.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = eval_wk(p, k, out.grid.nodes[i]);
  }
  return out;
}

double J_energy(const LineGrid& grid, std::span<const double> u, double p,
                double omega) {
  const std::size_t n = u.size();
  std::vector<double> u2(n), up1(n);
  for (std::size_t i = 0; i < n; ++i) {
    u2[i] = u[i] * u[i];
    up1[i] = std::pow(std::fabs(u[i]), p + 1.0);
  }
  double kin = 0.0;  // piecewise-linear derivative, exact per cell
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double du = u[i + 1] - u[i];
    kin += du * du / grid.spacing;
  }
  const double mass = line_integrate(grid, u2);
  return 0.5 * (kin + omega * mass) + std::pow(mass, 3) / 24.0 -
         line_integrate(grid, up1) / (p + 1.0);
}

double J_energy(const LineGrid& grid, std::span<const double> u,
                std::span<const double> du, double p, double omega) {
  const std::size_t n = u.size();
  std::vector<double> u2(n), du2(n), up1(n);
  for (std::size_t i = 0; i < n; ++i) {
    u2[i] = u[i] * u[i];
    du2[i] = du[i] * du[i];
    up1[i] = std::pow(std::fabs(u[i]), p + 1.0);
  }
  const double mass = line_integrate(grid, u2);
  return 0.5 * (line_integrate(grid, du2) + omega * mass) +
         std::pow(mass, 3) / 24.0 - line_integrate(grid, up1) / (p + 1.0);
}

double J_of_soliton(double p, double omega, double k) {
  const LineGrid grid = make_line_grid(p, k);
  const std::size_t n = grid.nodes.size();
  std::vector<double> u(n), du(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = eval_wk(p, k, grid.nodes[i]);
    du[i] = eval_wk_prime(p, k, grid.nodes[i]);
  }
  return J_energy(grid, u, du, p, omega);
}

double limit_ode_residual_max(double p, double omega, double k) {
  const LineGrid grid = make_line_grid(p, k);
  const std::size_t n = grid.nodes.size();
  std::vector<double> u(n), u2(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = eval_wk(p, k, grid.nodes[i]);
    u2[i] = u[i] * u[i];
  }
  const double mass = line_integrate(grid, u2);
  const double coef = 0.25 * mass * mass;  // equals k - omega at a branch root
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = -eval_wk_second(p, k, grid.nodes[i]) + omega * u[i] +
                       coef * u[i] -
                       std::pow(std::fabs(u[i]), p - 1.0) * u[i];
    worst = std::max(worst, std::fabs(res));
  }
  return worst;
}

BranchClassification classify_branches(double p, double omega) {
  BranchClassification out;
  out.p = p;
  const double m = compute_m(p);
  out.omega = omega;
  out.omega0 = compute_omega0(p, m);
  out.omega1 = compute_omega1(p, m);
  out.branches = solve_k_branches(p, omega, m);
  if (out.branches.k1) out.J_k1 = J_of_soliton(p, omega, *out.branches.k1);
  if (out.branches.k2) out.J_k2 = J_of_soliton(p, omega, *out.branches.k2);
  const double rel = (omega - out.omega0) / out.omega0;
  if (rel < -1e-10) {
    out.regime = "below_threshold";  // min J < 0, attained at w_k2
  } else if (rel > 1e-10) {
    out.regime = "above_threshold";  // min J = 0, only at 0
  } else {
    out.regime = "at_threshold";  // min J = 0, attained at 0 and w_k2
  }
  return out;
}

double locate_omega0_by_sign_change(double p, double tol) {
  require_p(p);
  const double m = compute_m(p);
  const double omega1 = compute_omega1(p, m);
  const auto sign_fn = [&](double omega) {
    const KBranches b = solve_k_branches(p, omega, m);
    if (!b.k2) {
      throw std::runtime_error("branch lost during omega0 bisection");
    }
    return J_of_soliton(p, omega, *b.k2);
  };
  double lo = omega1 * 1e-3;
  double hi = omega1 * (1.0 - 1e-9);
  if (!(sign_fn(lo) < 0.0) || !(sign_fn(hi) > 0.0)) {
    throw std::runtime_error("omega0 bisection bracket failed");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (sign_fn(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}
