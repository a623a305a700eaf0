#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "csvortex/energy.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/params.hpp"

namespace csvortex {

enum class SolveStatus {
  converged_nontrivial,
  converged_zero,
  diverging_unbounded,
  max_iter,
};

std::string to_string(SolveStatus s);

struct SolveOptions {
  long max_iter = 50000;
  // 0 selects the default 1e-8 * sqrt(node count).
  double el_tol = 0.0;
  // Status flips to diverging_unbounded once the energy crosses this.
  double energy_floor = -1e6;
  bool use_lbfgs = false;
  int lbfgs_memory = 10;
  // Finish with damped Newton on the discrete gradient once descent gets
  // close; needed to reach el_tol in reasonable time on fine grids.
  bool newton_polish = false;
  double armijo_c = 1e-4;
  // converged iterates below this sup-norm count as the zero solution
  double zero_sup_norm = 1e-6;
  int escape_log_stride = 25;
  // Early exit for energy-sign probes: stop as soon as the energy is
  // decisively negative.
  bool stop_when_negative = false;
  double negative_trigger = -1e-8;
};

struct SolveReport {
  Params params;
  RadialProfile profile;
  EnergyBreakdown breakdown;
  Residuals residuals;
  long iterations = 0;
  SolveStatus status = SolveStatus::max_iter;
  // center-of-mass radius samples, one per escape_log_stride iterations
  std::vector<double> escape_radius;
  std::string message;
};

// Monotone descent on the discrete energy: preconditioned gradient descent
// with Armijo backtracking, optional L-BFGS acceleration, |u| taken after
// every accepted step so the iterates stay nonnegative.
SolveReport minimize(const Params& params, const RadialProfile& start,
                     const SolveOptions& opts = {});

struct MountainPassOptions {
  int knots = 21;
  long max_sweeps = 4000;
  // Deformation stops once the path maximum's gradient norm has dropped by
  // this factor (or stalls); Newton takes over from there.
  double deform_tol_rel = 5e-3;
  SolveOptions inner;  // el_tol etc. for the saddle itself
};

// Piecewise-linear path in profile space with the mountain-pass geometry:
// both endpoint energies sit below the maximum over the path.
struct PathState {
  std::vector<RadialProfile> knots;
  std::vector<double> energies;
  std::size_t max_index = 0;
};

// Saddle between 0 and a negative-energy profile: string-method path
// deformation (downhill knot moves + arclength reparameterization) until
// the path maximum settles, then Newton on the gradient. Throws if
// energy(u_low) >= 0, i.e. no barrier geometry in this regime.
SolveReport mountain_pass(const Params& params, const RadialProfile& u_low,
                          const MountainPassOptions& opts = {},
                          PathState* path_out = nullptr);

struct OmegaTildeOptions {
  double bracket_lo = 0.0;  // 0 selects omega0 * (1 + 1e-3)
  double omega_tol = 0.0;   // 0 selects 1e-3 * omega0
  int basket = 6;
  std::uint64_t seed = 1;
  std::shared_ptr<const RadialGrid> grid;  // null selects a default grid
  SolveOptions inner;
};

// Upper end of the negative-infimum window: bisection on omega of "some
// start in the basket reaches negative energy". Rejects brackets at or
// below omega0, where the functional is unbounded and there is no sign
// change to localize.
double estimate_omega_tilde(double p, int vortex, const OmegaTildeOptions& opts = {});

struct ProbeReport {
  std::vector<SolveStatus> statuses;
  std::vector<double> energies;
  bool all_zero = false;
  std::string message;
};

// Runs minimize from every start; if any of them finds negative energy, a
// mountain pass from it is attempted as well. At large omega every run is
// expected to collapse to zero.
ProbeReport probe_nonexistence(const Params& params,
                               const std::vector<RadialProfile>& starts,
                               const SolveOptions& opts = {});

// Smallest omega >= 0 making omega s^2 + s^4 >= ((p-1)l/(p+1) + 1) s^{p+1}
// for all s > 0, via the closed-form stationary point of A s^{p-1} - s^2.
double min_omega_for_positivity(double p, double l);

// Seeded starts: truncated soliton translates when the branch exists plus
// odd-reflected Gaussian bumps (so every start vanishes at the origin).
std::vector<RadialProfile> make_start_basket(const Params& params,
                                             std::shared_ptr<const RadialGrid> grid,
                                             int count, std::uint64_t seed);

struct SweepPoint {
  double omega = 0.0;
  double min_energy = 0.0;
  SolveStatus status = SolveStatus::max_iter;
  double el_norm = 0.0;
};

// Independent omega points run concurrently; each point reports the best
// basket run. For omega below the unbounded threshold the energy floor is
// set from the translate witness so the runaway is detected.
std::vector<SweepPoint> sweep_omega(double p, int vortex,
                                    std::span<const double> omegas,
                                    std::shared_ptr<const RadialGrid> grid,
                                    const SolveOptions& opts, int basket,
                                    std::uint64_t seed);

}
