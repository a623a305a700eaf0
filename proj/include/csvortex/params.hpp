#pragma once

namespace csvortex {

// Problem parameters for the vortex functional.
//
// p      : power of the local nonlinearity, restricted to (1,3) where the
//          nonlocal term competes with the power term;
// omega  : frequency of the stationary state, omega > 0;
// vortex : integer winding number N >= 0 of the phase at the origin
//          (N = 0 is the regular, vortex-free case).
struct Params {
  double p = 2.0;
  double omega = 0.1;
  int vortex = 1;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}
