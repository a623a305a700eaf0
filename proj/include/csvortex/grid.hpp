#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace csvortex {

enum class Grading { uniform, geometric };

// Radial quadrature grid on [0, rmax]: strictly increasing nodes with
// nodes[0] = 0 exactly, plus trapezoid weights for integrals over [0, rmax].
// Weights are nonnegative and sum to rmax.
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t cells() const { return nodes.size() - 1; }
  double rmax() const { return nodes.back(); }
  double spacing(std::size_t cell) const { return nodes[cell + 1] - nodes[cell]; }
};

// cells+1 nodes. Geometric grading multiplies successive spacings by
// `ratio` (required in (1, 1.1]), clustering nodes near r = 0.
RadialGrid make_grid(double rmax, int cells, Grading grading = Grading::uniform,
                     double ratio = 1.0);

// Grid over an explicit ascending node list starting at 0 (profile files).
RadialGrid make_grid_from_nodes(std::vector<double> nodes);

// A radial function sampled on a grid. values[0] must be 0: the states
// this code works with are continuous with u(0) = 0, or the u^2/r^2
// integrals would diverge.
struct RadialProfile {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> values;
};

RadialProfile make_profile(std::shared_ptr<const RadialGrid> grid,
                           std::vector<double> values);

// Samples f on the grid nodes; the origin value is pinned to 0.
RadialProfile sample_profile(std::shared_ptr<const RadialGrid> grid,
                             const std::function<double(double)>& f);

double integrate(const RadialGrid& grid, std::span<const double> f);

// Forward F and reverse G cumulative integrals; F[0] = 0, G[n] = 0 and
// F[i] + G[i] equals integrate(f) at every node up to round-off.
std::vector<double> cumulative_integral(const RadialGrid& grid,
                                        std::span<const double> f);
std::vector<double> reverse_cumulative_integral(const RadialGrid& grid,
                                                std::span<const double> f);

// integral of u'(r)^2 r dr, exact for the piecewise-linear interpolant.
double dirichlet_integral_rdr(const RadialGrid& grid, std::span<const double> u);

}
