#include "csvortex/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "csvortex/kernels.hpp"
#include "csvortex/params.hpp"

namespace csvortex {

void Params::validate() const {
  if (!(p > 1.0) || !(p < 3.0)) {
    throw std::invalid_argument("params.p must lie in (1,3), got " + std::to_string(p));
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("params.omega must be positive, got " + std::to_string(omega));
  }
  if (vortex < 0) {
    throw std::invalid_argument("params.vortex must be a nonnegative integer, got " +
                                std::to_string(vortex));
  }
}

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t c = 0; c + 1 < n; ++c) {
    const double half = 0.5 * (nodes[c + 1] - nodes[c]);
    w[c] += half;
    w[c + 1] += half;
  }
  return w;
}

}

RadialGrid make_grid(double rmax, int cells, Grading grading, double ratio) {
  if (!(rmax > 0.0) || !std::isfinite(rmax)) {
    throw std::invalid_argument("grid rmax must be positive, got " + std::to_string(rmax));
  }
  if (cells < 2) {
    throw std::invalid_argument("grid needs at least 2 cells, got " + std::to_string(cells));
  }
  RadialGrid g;
  g.nodes.resize(static_cast<std::size_t>(cells) + 1);
  if (grading == Grading::uniform) {
    for (int i = 0; i <= cells; ++i) {
      g.nodes[i] = rmax * static_cast<double>(i) / static_cast<double>(cells);
    }
  } else {
    if (!(ratio > 1.0) || !(ratio <= 1.1)) {
      throw std::invalid_argument("geometric grading ratio must lie in (1, 1.1], got " +
                                  std::to_string(ratio));
    }
    // spacings d0 * ratio^i summing to rmax
    const double d0 = rmax * (ratio - 1.0) / (std::pow(ratio, cells) - 1.0);
    g.nodes[0] = 0.0;
    double d = d0;
    for (int i = 1; i <= cells; ++i) {
      g.nodes[i] = g.nodes[i - 1] + d;
      d *= ratio;
    }
  }
  g.nodes[0] = 0.0;
  g.nodes[cells] = rmax;
  g.weights = trapezoid_weights(g.nodes);
  return g;
}

RadialGrid make_grid_from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 3) {
    throw std::invalid_argument("grid needs at least 3 nodes, got " +
                                std::to_string(nodes.size()));
  }
  if (nodes.front() != 0.0) {
    throw std::invalid_argument("grid nodes must start at r = 0");
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1]) || !std::isfinite(nodes[i + 1])) {
      throw std::invalid_argument("grid nodes must be finite and strictly increasing (node " +
                                  std::to_string(i + 1) + ")");
    }
  }
  RadialGrid g;
  g.nodes = std::move(nodes);
  g.weights = trapezoid_weights(g.nodes);
  return g;
}

RadialProfile make_profile(std::shared_ptr<const RadialGrid> grid,
                           std::vector<double> values) {
  if (!grid) throw std::invalid_argument("profile grid must not be null");
  if (values.size() != grid->num_nodes()) {
    throw std::invalid_argument("profile has " + std::to_string(values.size()) +
                                " values for " + std::to_string(grid->num_nodes()) + " nodes");
  }
  if (values[0] != 0.0) {
    throw std::invalid_argument("profile values[0] must be 0 (states vanish at the origin)");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("profile values must be finite");
  }
  return RadialProfile{std::move(grid), std::move(values)};
}

RadialProfile sample_profile(std::shared_ptr<const RadialGrid> grid,
                             const std::function<double(double)>& f) {
  if (!grid) throw std::invalid_argument("profile grid must not be null");
  std::vector<double> v(grid->num_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->nodes[i]);
  v[0] = 0.0;
  return make_profile(std::move(grid), std::move(v));
}

namespace {
void require_length(const RadialGrid& grid, std::span<const double> f) {
  if (f.size() != grid.num_nodes()) {
    throw std::invalid_argument("integrand has " + std::to_string(f.size()) +
                                " values for " + std::to_string(grid.num_nodes()) + " nodes");
  }
}
}

double integrate(const RadialGrid& grid, std::span<const double> f) {
  require_length(grid, f);
  return kernels::trapezoid(grid.weights, f);
}

std::vector<double> cumulative_integral(const RadialGrid& grid,
                                        std::span<const double> f) {
  require_length(grid, f);
  std::vector<double> out(f.size());
  kernels::cumtrap(grid.nodes, f, out);
  return out;
}

std::vector<double> reverse_cumulative_integral(const RadialGrid& grid,
                                                std::span<const double> f) {
  require_length(grid, f);
  std::vector<double> out(f.size());
  kernels::revcumtrap(grid.nodes, f, out);
  return out;
}

double dirichlet_integral_rdr(const RadialGrid& grid, std::span<const double> u) {
  require_length(grid, u);
  return kernels::dirichlet_rdr(grid.nodes, u);
}

}
