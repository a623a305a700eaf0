#pragma once

#include <cstddef>
#include <span>

// Hot inner loops shared by the quadrature, field and energy code.
// All kernels are OpenMP-parallel above kParallelCutoff and plain serial
// below it; csvortex::refimpl holds the serial reference twins used by the
// tests and the benchmark.

namespace csvortex::kernels {

inline constexpr std::ptrdiff_t kParallelCutoff = 1 << 15;

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> a);
double max_abs(std::span<const double> a);

// sum_i w[i] f[i]
double trapezoid(std::span<const double> w, std::span<const double> f);

// out[i] = integral of f from nodes[0] to nodes[i], trapezoid per cell
void cumtrap(std::span<const double> nodes, std::span<const double> f,
             std::span<double> out);

// out[i] = integral of f from nodes[i] to nodes[n], trapezoid per cell
void revcumtrap(std::span<const double> nodes, std::span<const double> f,
                std::span<double> out);

// out[j] = sum_{i > j} f[i]
void suffix_sum(std::span<const double> f, std::span<double> out);

// integral of u'(r)^2 r dr for the piecewise-linear interpolant of u
double dirichlet_rdr(std::span<const double> nodes, std::span<const double> u);

// sum_i w[i] r[i] u[i]^2
double mass_rdr(std::span<const double> w, std::span<const double> r,
                std::span<const double> u);

// sum_i w[i] r[i] |u[i]|^q
double moment_rdr(std::span<const double> w, std::span<const double> r,
                  std::span<const double> u, double q);

// sum_{i>=1} w[i] u[i]^2 (h[i]-N)^2 / r[i]   (origin node dropped: u(0)=0)
double chern_rdr(std::span<const double> w, std::span<const double> r,
                 std::span<const double> u, std::span<const double> h, double N);

// sum_{i>=1} w[i] u[i]^2 (h[i]-N) / r[i]
double gauge_cross_rdr(std::span<const double> w, std::span<const double> r,
                       std::span<const double> u, std::span<const double> h,
                       double N);

// sum_{i>=1} w[i] u[i]^2 (h[i]^2 - 2 N h[i]) / r[i]
double k_form_rdr(std::span<const double> w, std::span<const double> r,
                  std::span<const double> u, std::span<const double> h,
                  double N);

void axpy(double a, std::span<const double> x, std::span<double> y);

}
