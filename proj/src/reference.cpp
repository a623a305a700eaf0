#include "csvortex/reference.hpp"

#include <cmath>
#include <numbers>

namespace csvortex::refimpl {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double trapezoid(std::span<const double> w, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f[i];
  return s;
}

void cumtrap(std::span<const double> nodes, std::span<const double> f,
             std::span<double> out) {
  out[0] = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (nodes[i] - nodes[i - 1]) * (f[i] + f[i - 1]);
  }
}

void revcumtrap(std::span<const double> nodes, std::span<const double> f,
                std::span<double> out) {
  const std::size_t n = nodes.size();
  out[n - 1] = 0.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    out[i] = out[i + 1] + 0.5 * (nodes[i + 1] - nodes[i]) * (f[i] + f[i + 1]);
  }
}

void suffix_sum(std::span<const double> f, std::span<double> out) {
  const std::size_t n = f.size();
  out[n - 1] = 0.0;
  for (std::size_t i = n - 1; i-- > 0;) out[i] = out[i + 1] + f[i + 1];
}

double dirichlet_rdr(std::span<const double> nodes, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double du = u[i + 1] - u[i];
    s += du * du * (nodes[i] + nodes[i + 1]) / (2.0 * (nodes[i + 1] - nodes[i]));
  }
  return s;
}

double moment_rdr(std::span<const double> w, std::span<const double> r,
                  std::span<const double> u, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s += w[i] * r[i] * std::pow(std::fabs(u[i]), q);
  }
  return s;
}

double chern_rdr(std::span<const double> w, std::span<const double> r,
                 std::span<const double> u, std::span<const double> h,
                 double N) {
  double s = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double d = h[i] - N;
    s += w[i] * u[i] * u[i] * d * d / r[i];
  }
  return s;
}

EnergyBreakdown energy(const RadialGrid& grid, std::span<const double> u,
                       const Params& params) {
  const auto& r = grid.nodes;
  const auto& w = grid.weights;
  const std::size_t n = r.size();
  const double N = static_cast<double>(params.vortex);

  EnergyBreakdown out;
  out.kinetic = kPi * dirichlet_rdr(r, u);

  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) mass += w[i] * r[i] * u[i] * u[i];
  out.mass = kPi * params.omega * mass;

  std::vector<double> f(n), h(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = r[i] * u[i] * u[i];
  cumtrap(r, f, h);
  for (std::size_t i = 0; i < n; ++i) h[i] *= 0.5;
  out.chern = kPi * chern_rdr(w, r, u, h, N);

  out.power = -kTwoPi / (params.p + 1.0) * moment_rdr(w, r, u, params.p + 1.0);
  out.total = out.kinetic + out.mass + out.chern + out.power;
  return out;
}

std::vector<double> grad_energy_direct(const RadialGrid& grid,
                                       std::span<const double> u,
                                       const Params& params) {
  const auto& r = grid.nodes;
  const auto& w = grid.weights;
  const std::size_t n = r.size();
  const std::size_t cells = n - 1;
  const double N = static_cast<double>(params.vortex);

  std::vector<double> f(n), h(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = r[i] * u[i] * u[i];
  cumtrap(r, f, h);
  for (std::size_t i = 0; i < n; ++i) h[i] *= 0.5;

  std::vector<double> g(n, 0.0);

  // kinetic, cell by cell
  for (std::size_t c = 0; c < cells; ++c) {
    const double coef = kPi * (r[c] + r[c + 1]) / (r[c + 1] - r[c]);
    const double du = u[c + 1] - u[c];
    g[c + 1] += coef * du;
    g[c] -= coef * du;
  }

  for (std::size_t j = 0; j < n; ++j) {
    g[j] += kTwoPi * params.omega * w[j] * r[j] * u[j];
    g[j] -= kTwoPi * w[j] * r[j] * std::pow(std::fabs(u[j]), params.p - 1.0) * u[j];
  }

  // chern: direct part plus the explicit double loop over dh_i/du_j
  for (std::size_t j = 1; j < n; ++j) {
    const double d = h[j] - N;
    g[j] += kTwoPi * w[j] * u[j] * d * d / r[j];
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double d_prev = r[j] - r[j - 1];
    const double d_next = (j < cells) ? r[j + 1] - r[j] : 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      double dF_df = 0.0;  // d cumtrap(f)_i / d f_j
      if (i > j) {
        dF_df = 0.5 * (d_prev + d_next);
      } else if (i == j) {
        dF_df = 0.5 * d_prev;
      }
      if (dF_df == 0.0) continue;
      acc += w[i] * u[i] * u[i] * (h[i] - N) / r[i] * dF_df;
    }
    g[j] += kTwoPi * r[j] * u[j] * acc;
  }

  g[0] = 0.0;
  return g;
}

}
