#pragma once

#include <Eigen/Dense>
#include <vector>

#include "carnot/groups.hpp"

namespace carnot {

struct CostProbeOptions {
  double h_base = 0;           // finite-difference step; 0 means t / 100
  double integrator_step = 1e-4;
  int max_newton = 50;
  double residual_tol = 1e-10;
};

struct ShootingSolve {
  std::vector<double> base;   // start point x
  std::vector<double> p;      // initial momenta reaching gamma(t) in time t
  double residual = 0;
  int iterations = 0;
};

struct CostProbe {
  double t = 0, h_base = 0;
  std::vector<double> target;             // gamma(t)
  std::vector<std::vector<double>> dirs;  // pi_* F_a1, pi_* F_b1 at the origin
  Eigen::Matrix2d Q;                      // second derivatives of the cost derivative
  std::vector<ShootingSolve> solves;
  double max_residual = 0;
};

// Geodesic from `base` with momenta p that ends at `target` after time t.
// Damped Newton with the variational block dx/dp as Jacobian.
// ShootingDiverged when the residual stays above opt.residual_tol.
ShootingSolve shoot(const GroupModel& model, const std::vector<double>& base,
                    const std::vector<double>& target, double t, std::vector<double> p_guess,
                    const CostProbeOptions& opt = {});

// Finite-difference Hessian at the origin of x -> d/dt c_t(x), restricted to
// the span of pi_* F_a1 and pi_* F_b1. With u(x) the final control of the
// time-t geodesic from x to gamma(t) and u0 that of gamma itself,
// d/dt c_t(x) = |u(x) - u0|^2 / 2 - |u0|^2 / 2.
// StepUnbalanced when the odd part of a central difference exceeds half of
// the even part (the step is too coarse for the local quadratic model).
CostProbe cost_hessian_probe(const GroupModel& model, const std::vector<mpq_class>& h, double t,
                             const CostProbeOptions& opt = {});

}  // namespace carnot
