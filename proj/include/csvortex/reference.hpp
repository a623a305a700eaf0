#pragma once

#include <span>
#include <vector>

#include "csvortex/energy.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/params.hpp"

// Serial reference implementations. Plain loops, no OpenMP, no shared
// workspaces. The unit tests check the parallel kernels against these and
// the benchmark compares their throughput.

namespace csvortex::refimpl {

double trapezoid(std::span<const double> w, std::span<const double> f);
void cumtrap(std::span<const double> nodes, std::span<const double> f,
             std::span<double> out);
void revcumtrap(std::span<const double> nodes, std::span<const double> f,
                std::span<double> out);
void suffix_sum(std::span<const double> f, std::span<double> out);
double dirichlet_rdr(std::span<const double> nodes, std::span<const double> u);
double moment_rdr(std::span<const double> w, std::span<const double> r,
                  std::span<const double> u, double q);
double chern_rdr(std::span<const double> w, std::span<const double> r,
                 std::span<const double> u, std::span<const double> h, double N);

EnergyBreakdown energy(const RadialGrid& grid, std::span<const double> u,
                       const Params& params);

// Literal chain rule through the cumulative integral, O(n^2): every
// dh_i/du_j term is accumulated explicitly. Slow and obviously correct;
// the production gradient must match it to round-off.
std::vector<double> grad_energy_direct(const RadialGrid& grid,
                                       std::span<const double> u,
                                       const Params& params);

}
