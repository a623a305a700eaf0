#include "csvortex/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "csvortex/kernels.hpp"

namespace csvortex {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// piecewise-linear ramp: 0 on [0,1], 1 beyond 2
double phi0(double r) { return std::clamp(r - 1.0, 0.0, 1.0); }

double interp_linear(std::span<const double> x, std::span<const double> y,
                     double xq) {
  if (xq <= x.front() || xq >= x.back()) return 0.0;
  auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const double t = (xq - x[j - 1]) / (x[j] - x[j - 1]);
  return (1.0 - t) * y[j - 1] + t * y[j];
}

}

EnergyEvaluator::EnergyEvaluator(std::shared_ptr<const RadialGrid> grid,
                                 const Params& params)
    : grid_(std::move(grid)), params_(params) {
  params_.validate();
  if (!grid_) throw std::invalid_argument("evaluator grid must not be null");
  const std::size_t n = grid_->num_nodes();
  h_.resize(n);
  gnl_.resize(n);
  tail_.resize(n);
  gbuf_.resize(n);
}

EnergyBreakdown EnergyEvaluator::evaluate(std::span<const double> u) const {
  const auto& r = grid_->nodes;
  const auto& w = grid_->weights;
  const std::size_t n = r.size();
  const double N = static_cast<double>(params_.vortex);

  for (std::size_t i = 0; i < n; ++i) gnl_[i] = r[i] * u[i] * u[i];
  kernels::cumtrap(r, gnl_, h_);
  for (std::size_t i = 0; i < n; ++i) h_[i] *= 0.5;

  EnergyBreakdown out;
  out.kinetic = kPi * kernels::dirichlet_rdr(r, u);
  out.mass = kPi * params_.omega * kernels::mass_rdr(w, r, u);
  out.chern = kPi * kernels::chern_rdr(w, r, u, h_, N);
  out.power = -kTwoPi / (params_.p + 1.0) * kernels::moment_rdr(w, r, u, params_.p + 1.0);
  out.total = out.kinetic + out.mass + out.chern + out.power;
  return out;
}

void EnergyEvaluator::gradient(std::span<const double> u, std::span<double> g) const {
  const auto& r = grid_->nodes;
  const auto& w = grid_->weights;
  const std::size_t n = r.size();
  const std::size_t cells = n - 1;
  const double N = static_cast<double>(params_.vortex);
  const double p = params_.p;

  for (std::size_t i = 0; i < n; ++i) gnl_[i] = r[i] * u[i] * u[i];
  kernels::cumtrap(r, gnl_, h_);
  for (std::size_t i = 0; i < n; ++i) h_[i] *= 0.5;

  // gnl_i = w_i u_i^2 (h_i - N) / r_i, the nonlocal density the chain rule
  // sums over; tail_j = sum_{i>j} gnl_i
  gnl_[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    gnl_[i] = w[i] * u[i] * u[i] * (h_[i] - N) / r[i];
  }
  kernels::suffix_sum(gnl_, tail_);

  for (std::size_t j = 0; j < n; ++j) g[j] = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double coef = kPi * (r[c] + r[c + 1]) / (r[c + 1] - r[c]);
    const double du = u[c + 1] - u[c];
    g[c + 1] += coef * du;
    g[c] -= coef * du;
  }

  for (std::size_t j = 1; j < n; ++j) {
    const double d_prev = r[j] - r[j - 1];
    const double hd = h_[j] - N;
    double v = kTwoPi * params_.omega * w[j] * r[j] * u[j];
    v += kTwoPi * w[j] * u[j] * hd * hd / r[j];
    v += kTwoPi * r[j] * u[j] * (0.5 * d_prev * gnl_[j] + w[j] * tail_[j]);
    v -= kTwoPi * w[j] * r[j] * std::pow(std::fabs(u[j]), p - 1.0) * u[j];
    g[j] += v;
  }
  g[0] = 0.0;
}

Residuals EnergyEvaluator::residuals_of(std::span<const double> u) const {
  const auto& r = grid_->nodes;
  const auto& w = grid_->weights;
  const double N = static_cast<double>(params_.vortex);
  const double p = params_.p;

  const EnergyBreakdown b = evaluate(u);  // leaves h_ filled
  const double Q = kTwoPi * kernels::moment_rdr(w, r, u, p + 1.0);
  const double cross = kTwoPi * kernels::gauge_cross_rdr(w, r, u, h_, N);

  Residuals out;
  out.pohozaev = 2.0 * b.kinetic + 2.0 * b.chern - (p - 1.0) / (p + 1.0) * Q;
  out.nehari = 2.0 * b.kinetic + 2.0 * b.mass + 6.0 * b.chern + 2.0 * N * cross - Q;
  gradient(u, gbuf_);
  out.el_norm = kernels::l2_norm(gbuf_);
  return out;
}

double EnergyEvaluator::power_scale(std::span<const double> u) const {
  return kTwoPi * kernels::moment_rdr(grid_->weights, grid_->nodes, u,
                                      params_.p + 1.0);
}

EnergyBreakdown energy(const RadialProfile& u, const Params& params) {
  return EnergyEvaluator(u.grid, params).evaluate(u.values);
}

std::vector<double> grad_energy(const RadialProfile& u, const Params& params) {
  EnergyEvaluator ev(u.grid, params);
  std::vector<double> g(u.values.size());
  ev.gradient(u.values, g);
  return g;
}

Residuals residuals(const RadialProfile& u, const Params& params) {
  return EnergyEvaluator(u.grid, params).residuals_of(u.values);
}

double power_integral(const RadialProfile& u, const Params& params) {
  params.validate();
  return kTwoPi * kernels::moment_rdr(u.grid->weights, u.grid->nodes, u.values,
                                      params.p + 1.0);
}

RadialProfile translate_profile(const std::function<double(double)>& U,
                                double support_radius, double rho,
                                std::shared_ptr<const RadialGrid> grid) {
  if (!(rho >= 3.0)) {
    throw std::invalid_argument("translate rho must be >= 3, got " + std::to_string(rho));
  }
  if (rho + support_radius > grid->rmax()) {
    throw std::invalid_argument("translate does not fit: rho + support = " +
                                std::to_string(rho + support_radius) +
                                " exceeds rmax = " + std::to_string(grid->rmax()));
  }
  std::vector<double> v(grid->num_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = grid->nodes[i];
    v[i] = phi0(r) * U(r - rho);
  }
  v[0] = 0.0;
  return make_profile(std::move(grid), std::move(v));
}

RadialProfile translate_profile(const LineProfile& U, double rho,
                                std::shared_ptr<const RadialGrid> grid) {
  const double support = U.support_radius();
  const auto& x = U.grid.nodes;
  const auto& y = U.values;
  return translate_profile(
      [&](double t) { return interp_linear(x, y, t); }, support, rho,
      std::move(grid));
}

Rescaled rescale(const RadialProfile& u, const Params& params) {
  params.validate();
  const double s = std::sqrt(params.omega);
  const auto& r = u.grid->nodes;
  const auto& vals = u.values;
  const double rmax = u.grid->rmax();

  if (s > 1.0) {
    // nodes beyond rmax/s would sample u outside the grid; only allowed if
    // nothing lives out there
    const double sup = kernels::max_abs(vals);
    const double cut = rmax / s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] > cut && std::fabs(vals[i]) > 1e-12 * sup) {
        throw std::invalid_argument(
            "rescale: profile support extends past rmax/sqrt(omega); refusing to truncate");
      }
    }
  }

  std::vector<double> v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    v[i] = s * interp_linear(r, vals, s * r[i]);
  }
  v[0] = 0.0;
  Rescaled out{make_profile(u.grid, std::move(v)),
               std::pow(params.omega, 0.5 * (params.p - 3.0))};
  return out;
}

double i_lambda(const RadialProfile& u, const Params& params) {
  params.validate();
  Params unit = params;
  unit.omega = 1.0;
  const EnergyBreakdown b = energy(u, unit);
  const double lambda = std::pow(params.omega, 0.5 * (params.p - 3.0));
  const double Q = power_integral(u, params);
  return b.kinetic + b.mass + b.chern - lambda / (params.p + 1.0) * Q;
}

}
