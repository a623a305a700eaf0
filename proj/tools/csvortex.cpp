// Command-line driver: limit constants and branch tables, energy evaluation
// of profile files, descent and mountain-pass solves, omega sweeps,
// multi-start collapse probes and the seeded property suites.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure,
//             3 property-suite failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "csvortex/energy.hpp"
#include "csvortex/gauge.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/io.hpp"
#include "csvortex/limit.hpp"
#include "csvortex/selfcheck.hpp"
#include "csvortex/solve.hpp"
#include "csvortex/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using csvortex::Params;
using nlohmann::json;

struct CommonOpts {
  double p = 2.0;
  double omega = 0.1;
  int vortex = 1;
  double rmax = 40.0;
  int cells = 4000;
  std::string grading = "uniform";
  double ratio = 1.002;
  std::uint64_t seed = 12345;
  std::string out;
  int threads = 0;
};

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--p", o.p, "nonlinearity exponent, in (1,3)");
  cmd->add_option("--omega", o.omega, "frequency, > 0");
  cmd->add_option("--N", o.vortex, "vortex winding number, >= 0");
}

void add_grid_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--rmax", o.rmax, "grid radius");
  cmd->add_option("--n", o.cells, "grid cells");
  cmd->add_option("--grading", o.grading, "uniform | geometric")
      ->check(CLI::IsMember({"uniform", "geometric"}));
  cmd->add_option("--ratio", o.ratio, "geometric spacing ratio, in (1, 1.1]");
}

std::shared_ptr<const csvortex::RadialGrid> build_grid(const CommonOpts& o) {
  const auto grading = o.grading == "geometric" ? csvortex::Grading::geometric
                                                : csvortex::Grading::uniform;
  return std::make_shared<const csvortex::RadialGrid>(
      csvortex::make_grid(o.rmax, o.cells, grading, o.ratio));
}

json meta_json(const CommonOpts& o, const std::string& command) {
  json grid = {{"rmax", o.rmax},
               {"n", o.cells},
               {"grading", o.grading},
               {"ratio", o.grading == "geometric" ? o.ratio : 1.0}};
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  return json{{"version", csvortex::kVersion},
              {"command", command},
              {"seed", o.seed},
              {"threads", threads},
              {"params", {{"p", o.p}, {"omega", o.omega}, {"N", o.vortex}}},
              {"grid", grid}};
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::invalid_argument("cannot open for writing: " + out_path);
  f << text << "\n";
}

void apply_threads(const CommonOpts& o) {
#ifdef _OPENMP
  if (o.threads > 0) omp_set_num_threads(o.threads);
#endif
}

int cmd_limit(const CommonOpts& o, bool have_omega, double sweep_min,
              double sweep_max, int sweep_count, const std::string& sweep_out) {
  const csvortex::LimitConstants c = csvortex::limit_constants(o.p);
  json j = meta_json(o, "limit");
  j["m"] = c.m;
  j["omega0"] = c.omega0;
  j["omega1"] = c.omega1;
  j["p"] = c.p;
  if (have_omega) {
    j["branches"] = json::parse(csvortex::io::branch_json(
        csvortex::classify_branches(o.p, o.omega)));
  }
  emit(o.out, j.dump(2));

  if (sweep_count > 0) {
    if (sweep_out.empty()) {
      throw std::invalid_argument("--sweep-out is required with --sweep-count");
    }
    std::ofstream f(sweep_out);
    if (!f) throw std::invalid_argument("cannot open for writing: " + sweep_out);
    f << "omega,k1,k2,J_k1,J_k2\n";
    for (int i = 0; i < sweep_count; ++i) {
      const double omega =
          sweep_min + (sweep_max - sweep_min) * i / std::max(1, sweep_count - 1);
      const auto bc = csvortex::classify_branches(o.p, omega);
      f << csvortex::io::format_double(omega) << ","
        << (bc.branches.k1 ? csvortex::io::format_double(*bc.branches.k1) : "nan") << ","
        << (bc.branches.k2 ? csvortex::io::format_double(*bc.branches.k2) : "nan") << ","
        << (bc.J_k1 ? csvortex::io::format_double(*bc.J_k1) : "nan") << ","
        << (bc.J_k2 ? csvortex::io::format_double(*bc.J_k2) : "nan") << "\n";
    }
  }
  return 0;
}

int cmd_energy(const CommonOpts& o, const std::string& profile_path,
               const std::string& gauge_out) {
  const csvortex::RadialProfile u = csvortex::io::read_profile_csv(profile_path);
  Params params{o.p, o.omega, o.vortex};
  const auto b = csvortex::energy(u, params);
  const auto r = csvortex::residuals(u, params);
  json j = meta_json(o, "energy");
  j["profile"] = profile_path;
  j["energy"] = json::parse(csvortex::io::breakdown_json(b, r));
  emit(o.out, j.dump(2));
  if (!gauge_out.empty()) {
    csvortex::io::write_gauge_csv(gauge_out, *u.grid,
                                  csvortex::gauge_fields(u, params));
  }
  return 0;
}

csvortex::RadialProfile build_start(const CommonOpts& o, const std::string& kind,
                                    double rho, double amp, double width,
                                    double center, const std::string& file) {
  auto grid = build_grid(o);
  if (kind == "file") {
    if (file.empty()) throw std::invalid_argument("--start-file is required with --start file");
    return csvortex::io::read_profile_csv(file);
  }
  if (kind == "zero") {
    return csvortex::make_profile(grid, std::vector<double>(grid->num_nodes(), 0.0));
  }
  if (kind == "gaussian") {
    return csvortex::sample_profile(grid, [&](double r) {
      const double dm = (r - center) / width;
      const double dp = (r + center) / width;
      return amp * (std::exp(-0.5 * dm * dm) - std::exp(-0.5 * dp * dp));
    });
  }
  if (kind == "translate") {
    const double m = csvortex::compute_m(o.p);
    const auto kb = csvortex::solve_k_branches(o.p, o.omega, m);
    if (!kb.k2) {
      throw std::runtime_error(
          "translate start needs the k2 branch; none exists at this omega");
    }
    const double k2 = *kb.k2;
    const double support = -std::log(1e-6) / std::sqrt(k2);
    return csvortex::translate_profile(
        [&](double t) { return csvortex::eval_wk(o.p, k2, t); }, support, rho, grid);
  }
  throw std::invalid_argument("unknown start kind: " + kind);
}

int cmd_minimize(const CommonOpts& o, const csvortex::SolveOptions& sopts,
                 const std::string& start_kind, double rho, double amp,
                 double width, double center, const std::string& start_file,
                 const std::string& profile_out) {
  Params params{o.p, o.omega, o.vortex};
  const auto start = build_start(o, start_kind, rho, amp, width, center, start_file);
  const auto rep = csvortex::minimize(params, start, sopts);
  json j = meta_json(o, "minimize");
  j["report"] = json::parse(csvortex::io::solve_report_json(rep));
  emit(o.out, j.dump(2));
  if (!profile_out.empty()) csvortex::io::write_profile_csv(profile_out, rep.profile);
  return rep.status == csvortex::SolveStatus::max_iter ? 2 : 0;
}

int cmd_mountainpass(const CommonOpts& o, const csvortex::SolveOptions& sopts,
                     int knots, const std::string& low_file,
                     const std::string& start_kind, double rho, double amp,
                     double width, double center, const std::string& start_file,
                     const std::string& profile_out) {
  Params params{o.p, o.omega, o.vortex};
  csvortex::RadialProfile low =
      low_file.empty()
          ? csvortex::minimize(
                params,
                build_start(o, start_kind, rho, amp, width, center, start_file),
                sopts)
                .profile
          : csvortex::io::read_profile_csv(low_file);
  csvortex::MountainPassOptions mp;
  mp.knots = knots;
  mp.inner = sopts;
  const auto rep = csvortex::mountain_pass(params, low, mp);
  json j = meta_json(o, "mountainpass");
  j["report"] = json::parse(csvortex::io::solve_report_json(rep));
  emit(o.out, j.dump(2));
  if (!profile_out.empty()) csvortex::io::write_profile_csv(profile_out, rep.profile);
  return rep.status == csvortex::SolveStatus::max_iter ? 2 : 0;
}

int cmd_sweep(const CommonOpts& o, const csvortex::SolveOptions& sopts,
              double omega_min, double omega_max, int points, int basket,
              const std::string& csv_out) {
  if (csv_out.empty()) throw std::invalid_argument("--csv is required for sweep");
  std::vector<double> omegas(points);
  for (int i = 0; i < points; ++i) {
    omegas[i] = omega_min + (omega_max - omega_min) * i / std::max(1, points - 1);
  }
  auto grid = build_grid(o);
  const auto pts = csvortex::sweep_omega(o.p, o.vortex, omegas, grid, sopts,
                                         basket, o.seed);
  std::ofstream f(csv_out);
  if (!f) throw std::invalid_argument("cannot open for writing: " + csv_out);
  f << "omega,min_energy,status,el_norm\n";
  for (const auto& pt : pts) {
    f << csvortex::io::format_double(pt.omega) << ","
      << csvortex::io::format_double(pt.min_energy) << ","
      << csvortex::to_string(pt.status) << ","
      << csvortex::io::format_double(pt.el_norm) << "\n";
  }
  json j = meta_json(o, "sweep");
  j["csv"] = csv_out;
  j["points"] = points;
  emit(o.out, j.dump(2));
  return 0;
}

int cmd_probe(const CommonOpts& o, const csvortex::SolveOptions& sopts, int count) {
  Params params{o.p, o.omega, o.vortex};
  auto grid = build_grid(o);
  const auto starts = csvortex::make_start_basket(params, grid, count, o.seed);
  const auto rep = csvortex::probe_nonexistence(params, starts, sopts);
  json j = meta_json(o, "probe");
  json runs = json::array();
  for (std::size_t i = 0; i < rep.statuses.size(); ++i) {
    runs.push_back({{"status", csvortex::to_string(rep.statuses[i])},
                    {"total", rep.energies[i]}});
  }
  j["runs"] = runs;
  j["all_zero"] = rep.all_zero;
  j["message"] = rep.message;
  emit(o.out, j.dump(2));
  return 0;
}

int cmd_check(const CommonOpts& o, int fuzz) {
  csvortex::PropertyCheckOptions pc;
  pc.seed = o.seed;
  pc.fuzz_profiles = fuzz;
  const int failures = csvortex::run_property_checks(pc, std::cout);
  if (failures > 0) {
    std::cout << failures << " property suite(s) failed\n";
    return 3;
  }
  std::cout << "all property suites passed (seed " << o.seed << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial solver for stationary vortex states of the planar "
               "Chern-Simons-Schrodinger equation"};
  app.require_subcommand(1);

  CommonOpts o;
  csvortex::SolveOptions sopts;

  // limit
  auto* limit = app.add_subcommand("limit", "limit-theory constants and branches");
  add_param_flags(limit, o);
  double sweep_min = 0.01, sweep_max = 0.12;
  int limit_sweep_count = 0;
  std::string limit_sweep_out;
  bool limit_have_omega = false;
  limit->add_flag("--branches", limit_have_omega,
                  "include the k-branch table for --omega");
  limit->add_option("--sweep-min", sweep_min, "branch sweep start");
  limit->add_option("--sweep-max", sweep_max, "branch sweep end");
  limit->add_option("--sweep-count", limit_sweep_count, "branch sweep points");
  limit->add_option("--sweep-out", limit_sweep_out, "branch sweep CSV path");
  limit->add_option("-o,--out", o.out, "write JSON here instead of stdout");
  limit->add_option("--seed", o.seed, "recorded in the output");

  // energy
  auto* energy = app.add_subcommand("energy", "evaluate a profile CSV");
  add_param_flags(energy, o);
  std::string profile_path, gauge_out;
  energy->add_option("--profile", profile_path, "profile CSV 'r,u'")->required();
  energy->add_option("--gauge-out", gauge_out, "write induced fields CSV 'r,h,a0'");
  energy->add_option("-o,--out", o.out, "write JSON here instead of stdout");
  energy->add_option("--seed", o.seed, "recorded in the output");

  // shared solver flags
  std::string start_kind = "translate", start_file, profile_out, low_file;
  double rho = 12.0, amp = 1.0, width = 2.0, center = 6.0;
  int knots = 21, basket = 10, probe_count = 10, sweep_points = 9, fuzz = 300;
  double omega_min = 0.06, omega_max = 0.2;

  const auto add_solver_flags = [&](CLI::App* cmd) {
    add_param_flags(cmd, o);
    add_grid_flags(cmd, o);
    cmd->add_option("--max-iter", sopts.max_iter, "iteration cap");
    cmd->add_option("--tol", sopts.el_tol, "gradient-norm tolerance (0 = 1e-8 sqrt(n))");
    cmd->add_option("--floor", sopts.energy_floor, "divergence energy floor");
    cmd->add_flag("--lbfgs", sopts.use_lbfgs, "quasi-Newton acceleration");
    cmd->add_flag("--polish", sopts.newton_polish, "Newton finish");
    cmd->add_option("--threads", o.threads, "OpenMP threads (0 = default)");
    cmd->add_option("--seed", o.seed, "seed for generated starts");
    cmd->add_option("-o,--out", o.out, "write JSON here instead of stdout");
  };

  auto* minimize = app.add_subcommand("minimize", "descend to a critical point");
  add_solver_flags(minimize);
  minimize->add_option("--start", start_kind, "zero | gaussian | translate | file");
  minimize->add_option("--start-rho", rho, "translate offset");
  minimize->add_option("--start-amp", amp, "gaussian amplitude");
  minimize->add_option("--start-width", width, "gaussian width");
  minimize->add_option("--start-center", center, "gaussian center");
  minimize->add_option("--start-file", start_file, "profile CSV start");
  minimize->add_option("--profile-out", profile_out, "write the final profile CSV");

  auto* mountain = app.add_subcommand("mountainpass", "find the saddle between 0 and a minimizer");
  add_solver_flags(mountain);
  mountain->add_option("--knots", knots, "path knots");
  mountain->add_option("--low-file", low_file, "negative-energy endpoint CSV (otherwise minimize first)");
  mountain->add_option("--start", start_kind, "start used for the internal minimize");
  mountain->add_option("--start-rho", rho, "translate offset");
  mountain->add_option("--start-amp", amp, "gaussian amplitude");
  mountain->add_option("--start-width", width, "gaussian width");
  mountain->add_option("--start-center", center, "gaussian center");
  mountain->add_option("--start-file", start_file, "profile CSV start");
  mountain->add_option("--profile-out", profile_out, "write the saddle profile CSV");

  auto* sweep = app.add_subcommand("sweep", "omega sweep of the minimal energy");
  add_solver_flags(sweep);
  std::string sweep_csv;
  sweep->add_option("--omega-min", omega_min, "sweep start")->required();
  sweep->add_option("--omega-max", omega_max, "sweep end")->required();
  sweep->add_option("--points", sweep_points, "sweep points");
  sweep->add_option("--basket", basket, "starts per omega");
  sweep->add_option("--csv", sweep_csv, "output CSV path")->required();

  auto* probe = app.add_subcommand("probe", "multi-start collapse probe");
  add_solver_flags(probe);
  probe->add_option("--starts", probe_count, "number of seeded starts");

  auto* check = app.add_subcommand("check", "run the seeded property suites");
  check->add_option("--seed", o.seed, "fuzz seed");
  check->add_option("--fuzz", fuzz, "inequality fuzz profiles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    apply_threads(o);
    if (limit->parsed()) {
      return cmd_limit(o, limit_have_omega, sweep_min, sweep_max,
                       limit_sweep_count, limit_sweep_out);
    }
    if (energy->parsed()) return cmd_energy(o, profile_path, gauge_out);
    if (minimize->parsed()) {
      return cmd_minimize(o, sopts, start_kind, rho, amp, width, center,
                          start_file, profile_out);
    }
    if (mountain->parsed()) {
      return cmd_mountainpass(o, sopts, knots, low_file, start_kind, rho, amp,
                              width, center, start_file, profile_out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(o, sopts, omega_min, omega_max, sweep_points, basket,
                       sweep_csv);
    }
    if (probe->parsed()) return cmd_probe(o, sopts, probe_count);
    if (check->parsed()) return cmd_check(o, fuzz);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
