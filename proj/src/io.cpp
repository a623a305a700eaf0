#include "csvortex/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace csvortex::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open for writing: " + path);
  return f;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_field(const std::string& s, const std::string& path, int lineno,
                   const char* name) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                ": malformed field '" + std::string(name) + "'");
  }
}

}

void write_profile_csv(const std::string& path, const RadialProfile& u) {
  auto f = open_out(path);
  f << "r,u\n";
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    f << format_double(u.grid->nodes[i]) << "," << format_double(u.values[i]) << "\n";
  }
}

RadialProfile read_profile_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open profile file: " + path);
  std::string line;
  if (!std::getline(f, line) || (line != "r,u" && line != "r,u\r")) {
    throw std::invalid_argument(path + ": profile CSV must start with header 'r,u'");
  }
  std::vector<double> nodes, values;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected two fields 'r,u'");
    }
    nodes.push_back(parse_field(fields[0], path, lineno, "r"));
    values.push_back(parse_field(fields[1], path, lineno, "u"));
  }
  if (nodes.size() < 3) {
    throw std::invalid_argument(path + ": profile needs at least 3 rows");
  }
  if (nodes.front() != 0.0 || values.front() != 0.0) {
    throw std::invalid_argument(path + ": first row must be r=0,u=0");
  }
  auto grid = std::make_shared<const RadialGrid>(make_grid_from_nodes(std::move(nodes)));
  return make_profile(std::move(grid), std::move(values));
}

void write_grid_csv(const std::string& path, const RadialGrid& grid) {
  auto f = open_out(path);
  f << "r\n";
  for (double r : grid.nodes) f << format_double(r) << "\n";
}

void write_gauge_csv(const std::string& path, const RadialGrid& grid,
                     const GaugeFields& fields) {
  auto f = open_out(path);
  f << "r,h,a0\n";
  for (std::size_t i = 0; i < grid.num_nodes(); ++i) {
    f << format_double(grid.nodes[i]) << "," << format_double(fields.h[i]) << ","
      << format_double(fields.a0[i]) << "\n";
  }
}

std::string breakdown_json(const EnergyBreakdown& b, const Residuals& r) {
  json j;
  j["kinetic"] = b.kinetic;
  j["mass"] = b.mass;
  j["chern"] = b.chern;
  j["power"] = b.power;
  j["total"] = b.total;
  j["el_norm"] = r.el_norm;
  j["pohozaev"] = r.pohozaev;
  j["nehari"] = r.nehari;
  return j.dump(2);
}

std::string solve_report_json(const SolveReport& rep) {
  json j;
  j["params"] = {{"p", rep.params.p},
                 {"omega", rep.params.omega},
                 {"N", rep.params.vortex}};
  j["status"] = to_string(rep.status);
  j["iterations"] = rep.iterations;
  j["breakdown"] = {{"kinetic", rep.breakdown.kinetic},
                    {"mass", rep.breakdown.mass},
                    {"chern", rep.breakdown.chern},
                    {"power", rep.breakdown.power},
                    {"total", rep.breakdown.total}};
  j["residuals"] = {{"el_norm", rep.residuals.el_norm},
                    {"pohozaev", rep.residuals.pohozaev},
                    {"nehari", rep.residuals.nehari}};
  j["escape_radius"] = rep.escape_radius;
  j["message"] = rep.message;
  return j.dump(2);
}

std::string branch_json(const BranchClassification& c) {
  json j;
  j["p"] = c.p;
  j["omega"] = c.omega;
  j["omega0"] = c.omega0;
  j["omega1"] = c.omega1;
  j["regime"] = c.regime;
  j["k1"] = c.branches.k1 ? json(*c.branches.k1) : json();
  j["k2"] = c.branches.k2 ? json(*c.branches.k2) : json();
  j["J_k1"] = c.J_k1 ? json(*c.J_k1) : json();
  j["J_k2"] = c.J_k2 ? json(*c.J_k2) : json();
  return j.dump(2);
}

}
