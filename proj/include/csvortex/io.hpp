#pragma once

#include <memory>
#include <string>

#include "csvortex/energy.hpp"
#include "csvortex/gauge.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/limit.hpp"
#include "csvortex/solve.hpp"

// File formats:
//   profile  CSV "r,u"      nodes ascending, first row 0,0
//   grid     CSV "r"
//   gauge    CSV "r,h,a0"
//   reports  JSON (see to_json overloads in io.cpp)
// All numbers print with enough digits to round-trip exactly.

namespace csvortex::io {

std::string format_double(double x);

void write_profile_csv(const std::string& path, const RadialProfile& u);
RadialProfile read_profile_csv(const std::string& path);

void write_grid_csv(const std::string& path, const RadialGrid& grid);
void write_gauge_csv(const std::string& path, const RadialGrid& grid,
                     const GaugeFields& fields);

std::string breakdown_json(const EnergyBreakdown& b, const Residuals& r);
std::string solve_report_json(const SolveReport& rep);
std::string branch_json(const BranchClassification& c);

}
