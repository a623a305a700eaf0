#include "csvortex/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csvortex::kernels {

namespace {
inline std::ptrdiff_t ssize(std::span<const double> s) {
  return static_cast<std::ptrdiff_t>(s.size());
}
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::ptrdiff_t n = ssize(a);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double max_abs(std::span<const double> a) {
  const std::ptrdiff_t n = ssize(a);
  double m = 0.0;
#pragma omp parallel for reduction(max : m) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

double trapezoid(std::span<const double> w, std::span<const double> f) {
  return dot(w, f);
}

void cumtrap(std::span<const double> nodes, std::span<const double> f,
             std::span<double> out) {
  const std::ptrdiff_t n = ssize(nodes);
  out[0] = 0.0;
  if (n < kParallelCutoff) {
    for (std::ptrdiff_t i = 1; i < n; ++i) {
      out[i] = out[i - 1] + 0.5 * (nodes[i] - nodes[i - 1]) * (f[i] + f[i - 1]);
    }
    return;
  }
#ifdef _OPENMP
  // two-pass blocked scan: per-block partial sums, then carry propagation
  const int nthreads = omp_get_max_threads();
  std::vector<double> carry(static_cast<std::size_t>(nthreads) + 1, 0.0);
#pragma omp parallel num_threads(nthreads)
  {
    const int tid = omp_get_thread_num();
    const std::ptrdiff_t cells = n - 1;
    const std::ptrdiff_t chunk = (cells + nthreads - 1) / nthreads;
    const std::ptrdiff_t lo = 1 + tid * chunk;
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n, lo + chunk);
    double local = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      local += 0.5 * (nodes[i] - nodes[i - 1]) * (f[i] + f[i - 1]);
      out[i] = local;
    }
    carry[tid + 1] = local;
#pragma omp barrier
#pragma omp single
    {
      for (int t = 1; t <= nthreads; ++t) carry[t] += carry[t - 1];
    }
    const double offset = carry[tid];
    for (std::ptrdiff_t i = lo; i < hi; ++i) out[i] += offset;
  }
#else
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    out[i] = out[i - 1] + 0.5 * (nodes[i] - nodes[i - 1]) * (f[i] + f[i - 1]);
  }
#endif
}

void revcumtrap(std::span<const double> nodes, std::span<const double> f,
                std::span<double> out) {
  const std::ptrdiff_t n = ssize(nodes);
  out[n - 1] = 0.0;
  for (std::ptrdiff_t i = n - 2; i >= 0; --i) {
    out[i] = out[i + 1] + 0.5 * (nodes[i + 1] - nodes[i]) * (f[i] + f[i + 1]);
  }
}

void suffix_sum(std::span<const double> f, std::span<double> out) {
  const std::ptrdiff_t n = ssize(f);
  out[n - 1] = 0.0;
  for (std::ptrdiff_t i = n - 2; i >= 0; --i) out[i] = out[i + 1] + f[i + 1];
}

double dirichlet_rdr(std::span<const double> nodes, std::span<const double> u) {
  const std::ptrdiff_t cells = ssize(nodes) - 1;
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (cells >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < cells; ++i) {
    const double du = u[i + 1] - u[i];
    s += du * du * (nodes[i] + nodes[i + 1]) / (2.0 * (nodes[i + 1] - nodes[i]));
  }
  return s;
}

double mass_rdr(std::span<const double> w, std::span<const double> r,
                std::span<const double> u) {
  const std::ptrdiff_t n = ssize(w);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += w[i] * r[i] * u[i] * u[i];
  return s;
}

double moment_rdr(std::span<const double> w, std::span<const double> r,
                  std::span<const double> u, double q) {
  const std::ptrdiff_t n = ssize(w);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    s += w[i] * r[i] * std::pow(std::fabs(u[i]), q);
  }
  return s;
}

double chern_rdr(std::span<const double> w, std::span<const double> r,
                 std::span<const double> u, std::span<const double> h,
                 double N) {
  const std::ptrdiff_t n = ssize(w);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    const double d = h[i] - N;
    s += w[i] * u[i] * u[i] * d * d / r[i];
  }
  return s;
}

double gauge_cross_rdr(std::span<const double> w, std::span<const double> r,
                       std::span<const double> u, std::span<const double> h,
                       double N) {
  const std::ptrdiff_t n = ssize(w);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    s += w[i] * u[i] * u[i] * (h[i] - N) / r[i];
  }
  return s;
}

double k_form_rdr(std::span<const double> w, std::span<const double> r,
                  std::span<const double> u, std::span<const double> h,
                  double N) {
  const std::ptrdiff_t n = ssize(w);
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    s += w[i] * u[i] * u[i] * (h[i] * h[i] - 2.0 * N * h[i]) / r[i];
  }
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::ptrdiff_t n = ssize(x);
#pragma omp parallel for if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}
