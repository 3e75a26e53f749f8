#pragma once

#include <vector>

#include "carnot/groups.hpp"

namespace carnot {

struct SflatFitOptions {
  // Explicit sample times. Empty means a geometric grid of `points` times on
  // [t_hi / 100, t_hi], shrinking t_hi tenfold until the window check passes.
  std::vector<double> t_grid;
  double t_hi = 0.1;
  int points = 20;
  int max_shrinks = 4;
  double window_tol = 1e-4;  // relative change of the fit when the window is halved
  unsigned extra_bits = 32;
};

struct SflatSample {
  double t = 0;
  double aa = 0, ab = 0, bb = 0;  // entries of the 11-block of S(t)^-1
  double log2_condition = 0;
  bool dropped = false;
};

// Two-term fit t * S_ij(t) = lead + lin * t^2 of each entry.
struct SflatFit {
  double lead_a = 0, lead_b = 0, lin_a = 0;
  double lin_b = 0, lead_ab = 0, lin_ab = 0;
  double t_hi = 0;
  unsigned bits = 0;
  int taylor_terms = 0;
  bool window_ok = false;
  double window_change = 0;  // relative change of lin_a on the halved window
  std::vector<SflatSample> samples;
};

// Jacobi curve of an ample equiregular rational covector at the base origin,
// written as a graph over the horizontal half of the canonical Darboux frame
// at lambda0. The flow and its variational matrix come from a Taylor series
// in MPFR arithmetic; precision grows with the smallest sample time.
// Errors: NotAmpleEquiregular, SingularCovector, NotUnitSpeed, IllConditioned
// (more than half of the samples lose all but 40 bits in the graph solve).
SflatFit sflat_fit(const GroupModel& model, const std::vector<mpq_class>& h,
                   const SflatFitOptions& opt = {});

}  // namespace carnot
