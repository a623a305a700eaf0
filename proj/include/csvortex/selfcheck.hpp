#pragma once

#include <cstdint>
#include <ostream>

namespace csvortex {

struct PropertyCheckOptions {
  std::uint64_t seed = 7;
  int fuzz_profiles = 300;
  int gradient_profiles = 10;
};

// Seeded property suites: fundamental-inequality fuzz, gradient vs finite
// differences, cumulative-integral consistency, branch residuals, limit ODE
// residual, translate slope, rescaling identity. Prints one line per suite
// and returns the number of failures.
int run_property_checks(const PropertyCheckOptions& opts, std::ostream& out);

}
