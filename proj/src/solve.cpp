#include "csvortex/solve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "csvortex/kernels.hpp"
#include "csvortex/limit.hpp"
#include "csvortex/rng.hpp"

namespace csvortex {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// SPD tridiagonal metric on the free nodes 1..n: linear kinetic stiffness
// plus the omega-mass and N^2/r^2 diagonals. Descent directions are
// measured in this metric, which keeps steps mesh-uniform and tames the
// 1/dr^2 stiffness of the raw gradient.
class H1Metric {
 public:
  H1Metric(const RadialGrid& grid, const Params& params) {
    const auto& r = grid.nodes;
    const auto& w = grid.weights;
    const std::size_t n = r.size();
    const std::size_t nf = n - 1;
    const double N = static_cast<double>(params.vortex);
    diag_.assign(nf, 0.0);
    lower_.assign(nf > 0 ? nf - 1 : 0, 0.0);
    for (std::size_t c = 0; c + 1 < n; ++c) {
      const double coef = kPi * (r[c] + r[c + 1]) / (r[c + 1] - r[c]);
      if (c >= 1) diag_[c - 1] += coef;
      diag_[c] += coef;
      if (c >= 1) lower_[c - 1] -= coef;
    }
    for (std::size_t j = 1; j < n; ++j) {
      diag_[j - 1] += kTwoPi * params.omega * w[j] * r[j];
      diag_[j - 1] += N * N * kTwoPi * w[j] / r[j];
    }
    factorize();
  }

  // x = M^{-1} g restricted to free nodes; x[0] stays 0.
  void apply_inverse(std::span<const double> g, std::span<double> x) const {
    const std::size_t nf = diag_.size();
    scratch_.resize(nf);
    for (std::size_t i = 0; i < nf; ++i) scratch_[i] = g[i + 1];
    for (std::size_t i = 1; i < nf; ++i) {
      scratch_[i] -= lfac_[i - 1] * scratch_[i - 1];
    }
    scratch_[nf - 1] /= dfac_[nf - 1];
    for (std::size_t i = nf - 1; i-- > 0;) {
      scratch_[i] = scratch_[i] / dfac_[i] - lfac_[i] * scratch_[i + 1];
    }
    x[0] = 0.0;
    for (std::size_t i = 0; i < nf; ++i) x[i + 1] = scratch_[i];
  }

 private:
  void factorize() {
    const std::size_t nf = diag_.size();
    dfac_ = diag_;
    lfac_.assign(nf > 0 ? nf - 1 : 0, 0.0);
    for (std::size_t i = 0; i + 1 < nf; ++i) {
      lfac_[i] = lower_[i] / dfac_[i];
      dfac_[i + 1] -= lfac_[i] * lower_[i];
    }
  }

  std::vector<double> diag_, lower_, dfac_, lfac_;
  mutable std::vector<double> scratch_;
};

double com_radius(const RadialGrid& grid, std::span<const double> u) {
  const double num = kernels::moment_rdr(grid.weights, grid.nodes, u, 2.0);
  double wr2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    wr2 += grid.weights[i] * grid.nodes[i] * grid.nodes[i] * u[i] * u[i];
  }
  return num > 0.0 ? wr2 / num : 0.0;
}

double default_el_tol(const RadialGrid& grid) {
  return 1e-8 * std::sqrt(static_cast<double>(grid.num_nodes()));
}

void project_abs(std::vector<double>& u) {
  for (double& v : u) v = std::fabs(v);
  u[0] = 0.0;
}

// Damped Newton on grad I = 0 via a central-difference Hessian and dense
// LU. Quadratic near any nondegenerate critical point, including saddles.
bool newton_refine(std::shared_ptr<const RadialGrid> grid, const Params& params,
                   std::vector<double>& u, double el_tol, int max_iter,
                   long& iters_used) {
  const std::size_t n = grid->num_nodes();
  const std::size_t nf = n - 1;
  if (nf > 9000) return false;  // dense LU too large; descent must finish

  EnergyEvaluator ev(grid, params);
  std::vector<double> g(n);
  ev.gradient(u, g);
  double gnorm = kernels::l2_norm(g);

  Eigen::MatrixXd H(nf, nf);
  Eigen::VectorXd rhs(nf), dx(nf);

  for (int it = 0; it < max_iter; ++it) {
    ++iters_used;
    if (gnorm <= el_tol) return true;

#pragma omp parallel
    {
      EnergyEvaluator ev_local(grid, params);
      std::vector<double> up(u.size()), gp(n), gm(n);
#pragma omp for schedule(dynamic, 32)
      for (std::ptrdiff_t j = 1; j < static_cast<std::ptrdiff_t>(n); ++j) {
        const double eps = 1e-6 * (1.0 + std::fabs(u[j]));
        std::copy(u.begin(), u.end(), up.begin());
        up[j] = u[j] + eps;
        ev_local.gradient(up, gp);
        up[j] = u[j] - eps;
        ev_local.gradient(up, gm);
        for (std::size_t i = 1; i < n; ++i) {
          H(i - 1, j - 1) = (gp[i] - gm[i]) / (2.0 * eps);
        }
      }
    }
    H = 0.5 * (H + H.transpose()).eval();

    for (std::size_t i = 1; i < n; ++i) rhs(i - 1) = -g[i];
    dx = H.partialPivLu().solve(rhs);
    if (!dx.allFinite()) return false;

    double t = 1.0;
    bool accepted = false;
    std::vector<double> trial(u);
    std::vector<double> gt(n);
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t i = 1; i < n; ++i) trial[i] = u[i] + t * dx(i - 1);
      ev.gradient(trial, gt);
      const double gn = kernels::l2_norm(gt);
      if (std::isfinite(gn) && gn < gnorm) {
        u = trial;
        g = gt;
        gnorm = gn;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) return false;
  }
  return gnorm <= el_tol;
}

struct LbfgsMemory {
  std::vector<std::vector<double>> s, y;
  std::vector<double> rho;
  int cap = 10;

  void clear() {
    s.clear();
    y.clear();
    rho.clear();
  }

  void push(std::vector<double> snew, std::vector<double> ynew) {
    const double sy = kernels::dot(snew, ynew);
    const double sn = kernels::l2_norm(snew);
    const double yn = kernels::l2_norm(ynew);
    if (!(sy > 1e-12 * sn * yn)) return;  // curvature too weak (projection step)
    s.push_back(std::move(snew));
    y.push_back(std::move(ynew));
    rho.push_back(1.0 / sy);
    if (static_cast<int>(s.size()) > cap) {
      s.erase(s.begin());
      y.erase(y.begin());
      rho.erase(rho.begin());
    }
  }
};

// d = -H g with H0 = gamma * M^{-1} in the two-loop recursion
void lbfgs_direction(const LbfgsMemory& mem, const H1Metric& metric,
                     std::span<const double> g, std::vector<double>& d,
                     std::vector<double>& q) {
  const std::size_t n = g.size();
  q.assign(g.begin(), g.end());
  const int k = static_cast<int>(mem.s.size());
  std::vector<double> alpha(k);
  for (int i = k - 1; i >= 0; --i) {
    alpha[i] = mem.rho[i] * kernels::dot(mem.s[i], q);
    kernels::axpy(-alpha[i], mem.y[i], q);
  }
  d.resize(n);
  metric.apply_inverse(q, d);
  if (k > 0) {
    std::vector<double> py(n);
    metric.apply_inverse(mem.y[k - 1], py);
    const double ypy = kernels::dot(mem.y[k - 1], py);
    const double sy = 1.0 / mem.rho[k - 1];
    if (ypy > 0.0) {
      const double gamma = sy / ypy;
      for (double& v : d) v *= gamma;
    }
  }
  for (int i = 0; i < k; ++i) {
    const double beta = mem.rho[i] * kernels::dot(mem.y[i], d);
    kernels::axpy(alpha[i] - beta, mem.s[i], d);
  }
  for (double& v : d) v = -v;
  d[0] = 0.0;
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged_nontrivial: return "converged_nontrivial";
    case SolveStatus::converged_zero: return "converged_zero";
    case SolveStatus::diverging_unbounded: return "diverging_unbounded";
    case SolveStatus::max_iter: return "max_iter";
  }
  return "unknown";
}

SolveReport minimize(const Params& params, const RadialProfile& start,
                     const SolveOptions& opts) {
  params.validate();
  if (opts.max_iter < 1 || opts.lbfgs_memory < 1) {
    throw std::invalid_argument("solve options: max_iter and lbfgs_memory must be positive");
  }
  if (opts.el_tol < 0.0 || opts.armijo_c <= 0.0 || opts.armijo_c >= 1.0) {
    throw std::invalid_argument("solve options: el_tol must be >= 0 and armijo_c in (0,1)");
  }
  auto grid = start.grid;
  const std::size_t n = grid->num_nodes();
  const double el_tol = opts.el_tol > 0.0 ? opts.el_tol : default_el_tol(*grid);

  EnergyEvaluator ev(grid, params);
  H1Metric metric(*grid, params);
  LbfgsMemory mem;
  mem.cap = opts.lbfgs_memory;

  SolveReport rep;
  rep.params = params;

  std::vector<double> u = start.values;
  project_abs(u);

  std::vector<double> g(n), d(n), q(n), unew(n), gnew(n);
  EnergyBreakdown eb = ev.evaluate(u);
  ev.gradient(u, g);

  double alpha_prev = 1.0;
  long it = 0;
  bool stalled = false;
  // after a failed Newton attempt wait for a 10x smaller gradient
  double next_polish_el =
      opts.newton_polish ? std::max(el_tol * 1e4, 1e-10) : 0.0;

  auto finish = [&](SolveStatus status, std::string msg) {
    rep.profile = RadialProfile{grid, u};
    rep.breakdown = ev.evaluate(u);
    rep.residuals = ev.residuals_of(u);
    rep.iterations = it;
    rep.status = status;
    rep.message = std::move(msg);
    return rep;
  };

  while (true) {
    double el = kernels::l2_norm(g);

    if (opts.newton_polish && el > el_tol && el <= next_polish_el) {
      long polish_iters = 0;
      std::vector<double> usave = u;
      if (newton_refine(grid, params, u, el_tol, 50, polish_iters)) {
        it += polish_iters;
        project_abs(u);
        ev.gradient(u, g);
        el = kernels::l2_norm(g);
      } else {
        u = usave;  // Newton basin not reached yet; keep descending
        it += polish_iters;
        next_polish_el = el * 0.1;
      }
    }

    if (el <= el_tol) {
      const bool zero = kernels::max_abs(u) < opts.zero_sup_norm;
      return finish(zero ? SolveStatus::converged_zero : SolveStatus::converged_nontrivial,
                    zero ? "collapsed to the zero solution" : "");
    }
    if (eb.total < opts.energy_floor) {
      return finish(SolveStatus::diverging_unbounded,
                    "energy fell below the configured floor");
    }
    if (opts.stop_when_negative && eb.total < opts.negative_trigger) {
      return finish(SolveStatus::max_iter, "stopped early: negative energy found");
    }
    if (it >= opts.max_iter || stalled) {
      return finish(SolveStatus::max_iter,
                    stalled ? "line search stalled" : "iteration cap reached");
    }

    if (opts.use_lbfgs && !mem.s.empty()) {
      lbfgs_direction(mem, metric, g, d, q);
    } else {
      metric.apply_inverse(g, d);
      for (double& v : d) v = -v;
    }
    double slope = kernels::dot(g, d);
    if (!(slope < 0.0)) {
      mem.clear();
      metric.apply_inverse(g, d);
      for (double& v : d) v = -v;
      slope = kernels::dot(g, d);
    }

    double alpha = opts.use_lbfgs ? 1.0 : std::min(alpha_prev * 1.5, 4.0);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < n; ++i) unew[i] = std::fabs(u[i] + alpha * d[i]);
      unew[0] = 0.0;
      const EnergyBreakdown etrial = ev.evaluate(unew);
      if (etrial.total <= eb.total + opts.armijo_c * alpha * slope) {
        ev.gradient(unew, gnew);
        std::vector<double> sv(n), yv(n);
        for (std::size_t i = 0; i < n; ++i) {
          sv[i] = unew[i] - u[i];
          yv[i] = gnew[i] - g[i];
        }
        if (opts.use_lbfgs) mem.push(std::move(sv), std::move(yv));
        u.swap(unew);
        g.swap(gnew);
        eb = etrial;
        alpha_prev = alpha;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (opts.use_lbfgs && !mem.s.empty()) {
        mem.clear();  // retry from plain preconditioned steepest descent
        alpha_prev = 1.0;
      } else {
        stalled = true;
      }
    }
    ++it;
    if (it % opts.escape_log_stride == 0) {
      rep.escape_radius.push_back(com_radius(*grid, u));
    }
  }
}

SolveReport mountain_pass(const Params& params, const RadialProfile& u_low,
                          const MountainPassOptions& opts, PathState* path_out) {
  params.validate();
  auto grid = u_low.grid;
  const std::size_t n = grid->num_nodes();
  EnergyEvaluator ev(grid, params);

  const double e_low = ev.evaluate(u_low.values).total;
  if (!(e_low < 0.0)) {
    throw std::runtime_error(
        "no mountain-pass geometry: energy(u_low) = " + std::to_string(e_low) +
        " >= 0; at this omega there is no negative-energy endpoint "
        "(bounded/collapse regime)");
  }
  const int K = std::max(opts.knots, 5);
  const double el_tol =
      opts.inner.el_tol > 0.0 ? opts.inner.el_tol : default_el_tol(*grid);

  H1Metric metric(*grid, params);
  const auto& w = grid->weights;
  const auto& r = grid->nodes;
  auto mnorm = [&](std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += kTwoPi * w[i] * r[i] * v[i] * v[i];
    return std::sqrt(s);
  };

  std::vector<std::vector<double>> knots(K, std::vector<double>(n, 0.0));
  for (int k = 0; k < K; ++k) {
    const double t = static_cast<double>(k) / (K - 1);
    for (std::size_t i = 0; i < n; ++i) knots[k][i] = t * u_low.values[i];
  }

  std::vector<double> energies(K), taus(K, 0.5);
  std::vector<double> g(n), pg(n);

  auto path_energies = [&]() {
    for (int k = 0; k < K; ++k) energies[k] = ev.evaluate(knots[k]).total;
  };

  long sweeps = 0;
  long total_iters = 0;
  double gate = -1.0;  // gradient level that triggers a Newton attempt
  double best_gnorm = std::numeric_limits<double>::infinity();
  long last_improve = 0;
  std::vector<double> candidate;

  path_energies();

  while (sweeps < opts.max_sweeps) {
    ++sweeps;

    // downhill move for each interior knot (Jacobi update), then
    // re-parameterize the polygon by arclength in the 2-D mass metric
#pragma omp parallel
    {
      EnergyEvaluator ev_local(grid, params);
      std::vector<double> gl(n), dl(n), trial(n);
#pragma omp for schedule(dynamic)
      for (int k = 1; k < K - 1; ++k) {
        ev_local.gradient(knots[k], gl);
        metric.apply_inverse(gl, dl);
        double tau = taus[k];
        const double e0 = energies[k];
        for (int bt = 0; bt < 3; ++bt) {
          for (std::size_t i = 0; i < n; ++i) {
            trial[i] = std::fabs(knots[k][i] - tau * dl[i]);
          }
          trial[0] = 0.0;
          if (ev_local.evaluate(trial).total <= e0) {
            knots[k] = trial;
            taus[k] = std::min(tau * 1.2, 4.0);
            break;
          }
          tau *= 0.4;
          taus[k] = tau;
        }
      }
    }

    std::vector<double> arc(K, 0.0);
    std::vector<double> diff(n);
    for (int k = 1; k < K; ++k) {
      for (std::size_t i = 0; i < n; ++i) diff[i] = knots[k][i] - knots[k - 1][i];
      arc[k] = arc[k - 1] + mnorm(diff);
    }
    std::vector<std::vector<double>> re(K);
    re[0] = knots[0];
    re[K - 1] = knots[K - 1];
    for (int k = 1; k < K - 1; ++k) {
      const double target = arc[K - 1] * k / (K - 1);
      std::size_t j = 1;
      while (j < static_cast<std::size_t>(K - 1) && arc[j] < target) ++j;
      const double denom = std::max(arc[j] - arc[j - 1], 1e-300);
      const double t = (target - arc[j - 1]) / denom;
      re[k].resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        re[k][i] = (1.0 - t) * knots[j - 1][i] + t * knots[j][i];
      }
    }
    knots.swap(re);

    path_energies();
    const int imax = static_cast<int>(
        std::max_element(energies.begin(), energies.end()) - energies.begin());
    ev.gradient(knots[imax], g);
    const double gnorm = kernels::l2_norm(g);
    if (gate < 0.0) gate = std::max(opts.deform_tol_rel * gnorm, el_tol);
    if (gnorm < best_gnorm * 0.99) {
      best_gnorm = gnorm;
      last_improve = sweeps;
    }
    const bool tol_hit = gnorm <= gate;
    const bool plateaued = sweeps - last_improve > 80;
    if (tol_hit || plateaued || sweeps == opts.max_sweeps) {
      candidate = knots[imax];
      long polish_iters = 0;
      std::vector<double> polished = candidate;
      const bool ok =
          newton_refine(grid, params, polished, el_tol, 60, polish_iters);
      total_iters = sweeps + polish_iters;
      const double sup = kernels::max_abs(polished);
      if (ok && sup >= opts.inner.zero_sup_norm) {
        if (path_out) {
          path_out->knots.clear();
          path_out->energies = energies;
          path_out->max_index = static_cast<std::size_t>(imax);
          for (auto& z : knots) {
            path_out->knots.push_back(RadialProfile{grid, z});
          }
        }
        SolveReport rep;
        rep.params = params;
        rep.profile = RadialProfile{grid, polished};
        rep.breakdown = ev.evaluate(polished);
        rep.residuals = ev.residuals_of(polished);
        rep.iterations = total_iters;
        rep.status = SolveStatus::converged_nontrivial;
        rep.message = "saddle via path deformation + Newton";
        return rep;
      }
      if (sweeps == opts.max_sweeps) break;
      // Newton missed (not converged, or fell into a trivial point):
      // demand a tighter path before the next attempt
      gate = std::max(gate * 0.2, el_tol);
      last_improve = sweeps;
      best_gnorm = gnorm;
    }
  }

  SolveReport rep;
  rep.params = params;
  const int imax = static_cast<int>(
      std::max_element(energies.begin(), energies.end()) - energies.begin());
  rep.profile = RadialProfile{grid, knots[imax]};
  rep.breakdown = ev.evaluate(knots[imax]);
  rep.residuals = ev.residuals_of(knots[imax]);
  rep.iterations = total_iters > 0 ? total_iters : sweeps;
  rep.status = SolveStatus::max_iter;
  rep.message = "path deformation did not settle within the sweep budget";
  return rep;
}

double min_omega_for_positivity(double p, double l) {
  if (!(p > 1.0) || !(p < 3.0)) {
    throw std::invalid_argument("exponent p must lie in (1,3)");
  }
  if (!(l > 0.0)) {
    throw std::invalid_argument("l must be positive");
  }
  // smallest omega with omega s^2 + s^4 >= A s^{p+1} for all s, i.e. the
  // max of A s^{p-1} - s^2, attained at s* = (A(p-1)/2)^{1/(3-p)}
  const double A = (p - 1.0) * l / (p + 1.0) + 1.0;
  const double sstar = std::pow(A * (p - 1.0) / 2.0, 1.0 / (3.0 - p));
  const double val = A * std::pow(sstar, p - 1.0) - sstar * sstar;
  return std::max(val, 0.0);
}

std::vector<RadialProfile> make_start_basket(const Params& params,
                                             std::shared_ptr<const RadialGrid> grid,
                                             int count, std::uint64_t seed) {
  params.validate();
  if (count < 1) throw std::invalid_argument("basket count must be positive");
  Rng rng(seed);
  std::vector<RadialProfile> out;
  out.reserve(count);

  // truncated soliton translates when the limit branch exists and fits
  const double m = compute_m(params.p);
  const KBranches kb = solve_k_branches(params.p, params.omega, m);
  if (kb.k2) {
    const double k2 = *kb.k2;
    const double support =
        -std::log(1e-6) / std::sqrt(k2);  // relative tail threshold 1e-6
    const double rho_max = grid->rmax() - support;
    const int slots = std::min(count / 2, 3);
    for (int i = 0; i < slots && out.size() + 1 <= static_cast<std::size_t>(count); ++i) {
      const double rho = 4.0 + (rho_max - 4.0) * (i + 1) / (slots + 1);
      if (rho < 4.0 || rho + support > grid->rmax()) continue;
      out.push_back(translate_profile(
          [&](double t) { return eval_wk(params.p, k2, t); }, support, rho, grid));
    }
  }

  // odd-reflected Gaussian bumps: exactly zero at the origin
  while (out.size() < static_cast<std::size_t>(count)) {
    const int nb = rng.uniform_int(1, 3);
    std::vector<double> amp(nb), cen(nb), sig(nb);
    for (int b = 0; b < nb; ++b) {
      amp[b] = rng.uniform(0.3, 2.5) * (rng.uniform() < 0.25 ? -1.0 : 1.0);
      cen[b] = rng.uniform(1.0, grid->rmax() / 3.0);
      sig[b] = rng.uniform(0.8, 4.0);
    }
    out.push_back(sample_profile(grid, [&](double rr) {
      double v = 0.0;
      for (int b = 0; b < nb; ++b) {
        const double dm = (rr - cen[b]) / sig[b];
        const double dp = (rr + cen[b]) / sig[b];
        v += amp[b] * (std::exp(-0.5 * dm * dm) - std::exp(-0.5 * dp * dp));
      }
      return v;
    }));
  }
  return out;
}

ProbeReport probe_nonexistence(const Params& params,
                               const std::vector<RadialProfile>& starts,
                               const SolveOptions& opts) {
  params.validate();
  ProbeReport rep;
  const int ns = static_cast<int>(starts.size());
  rep.statuses.resize(ns);
  rep.energies.resize(ns);
  int negative_index = -1;

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < ns; ++i) {
    const SolveReport r = minimize(params, starts[i], opts);
    rep.statuses[i] = r.status;
    rep.energies[i] = r.breakdown.total;
  }

  rep.all_zero = true;
  for (int i = 0; i < ns; ++i) {
    if (rep.statuses[i] != SolveStatus::converged_zero) rep.all_zero = false;
    if (rep.energies[i] < -1e-10 &&
        rep.statuses[i] == SolveStatus::converged_nontrivial && negative_index < 0) {
      negative_index = i;
    }
  }

  if (negative_index >= 0) {
    const SolveReport r0 = minimize(params, starts[negative_index], opts);
    MountainPassOptions mp;
    mp.inner = opts;
    try {
      const SolveReport mpr = mountain_pass(params, r0.profile, mp);
      rep.message = "negative-energy minimizer found; mountain pass status " +
                    to_string(mpr.status) +
                    ", energy " + std::to_string(mpr.breakdown.total);
    } catch (const std::exception& e) {
      rep.message = std::string("mountain pass attempt failed: ") + e.what();
    }
  } else {
    rep.message = "no negative-energy start; mountain-pass geometry absent";
  }
  return rep;
}

double estimate_omega_tilde(double p, int vortex, const OmegaTildeOptions& opts) {
  const double omega0 = compute_omega0(p);
  const double lo0 = opts.bracket_lo > 0.0 ? opts.bracket_lo : omega0 * (1.0 + 1e-3);
  if (lo0 <= omega0) {
    throw std::invalid_argument(
        "omega-tilde bracket must start above omega0: below it the "
        "functional is unbounded and there is no sign change to bracket");
  }
  auto grid = opts.grid ? opts.grid
                        : std::make_shared<const RadialGrid>(make_grid(50.0, 2500));
  const double tol = opts.omega_tol > 0.0 ? opts.omega_tol : 1e-3 * omega0;

  SolveOptions inner = opts.inner;
  inner.stop_when_negative = true;
  inner.use_lbfgs = true;
  if (inner.max_iter > 4000) inner.max_iter = 4000;

  auto has_negative = [&](double omega) {
    Params params{p, omega, vortex};
    const auto starts = make_start_basket(params, grid, opts.basket, opts.seed);
    int neg = 0;
#pragma omp parallel for schedule(dynamic) reduction(| : neg)
    for (int i = 0; i < static_cast<int>(starts.size()); ++i) {
      const SolveReport r = minimize(params, starts[i], inner);
      neg |= (r.breakdown.total < inner.negative_trigger) ? 1 : 0;
    }
    return neg != 0;
  };

  double lo = lo0;
  if (!has_negative(lo)) {
    throw std::runtime_error(
        "no negative-energy window detected just above omega0; grid or basket too coarse");
  }
  double hi = lo;
  do {
    hi *= 1.25;
    if (hi > 64.0 * omega0) {
      throw std::runtime_error("negative-energy window did not close below 64*omega0");
    }
  } while (has_negative(hi));

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (has_negative(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<SweepPoint> sweep_omega(double p, int vortex,
                                    std::span<const double> omegas,
                                    std::shared_ptr<const RadialGrid> grid,
                                    const SolveOptions& opts, int basket,
                                    std::uint64_t seed) {
  const double m = compute_m(p);
  std::vector<SweepPoint> out(omegas.size());

#pragma omp parallel for schedule(dynamic)
  for (int idx = 0; idx < static_cast<int>(omegas.size()); ++idx) {
    const double omega = omegas[idx];
    Params params{p, omega, vortex};
    SolveOptions local = opts;
    local.use_lbfgs = true;

    // below the threshold the translate witness fixes a reachable floor,
    // so the runaway regime registers as diverging_unbounded
    const KBranches kb = solve_k_branches(p, omega, m);
    if (kb.k2) {
      const double J = J_of_soliton(p, omega, *kb.k2);
      if (J < 0.0) {
        local.energy_floor =
            std::max(local.energy_floor, kTwoPi * J * 0.45 * grid->rmax() - 0.5);
      }
    }

    const auto starts = make_start_basket(params, grid, basket, seed + idx);
    SweepPoint pt;
    pt.omega = omega;
    pt.min_energy = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& s : starts) {
      const SolveReport r = minimize(params, s, local);
      if (r.status == SolveStatus::diverging_unbounded) {
        pt = {omega, r.breakdown.total, r.status, r.residuals.el_norm};
        any = true;
        break;
      }
      if (!any || r.breakdown.total < pt.min_energy) {
        pt = {omega, r.breakdown.total, r.status, r.residuals.el_norm};
        any = true;
      }
    }
    out[idx] = pt;
  }
  return out;
}

}
