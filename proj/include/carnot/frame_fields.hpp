#pragma once

#include <vector>

#include "carnot/groups.hpp"

namespace carnot {

// Lifted frame of T*R^n in canonical (x, p) coordinates. Variable k < n is
// x_k, variable n + k is p_k. Every field here has polynomial coefficients.
struct CanonicalFields {
  int n = 0;
  std::vector<Poly> h;        // h_i = sum_j A_ij(x) p_j
  Poly H;                     // (h_1^2 + h_2^2) / 2
  VecField<Poly> Hvec;        // dH = sigma(., Hvec): x' = dH/dp, p' = -dH/dx
  std::vector<VecField<Poly>> Xhat;  // X_i lifted with h held fixed
  std::vector<VecField<Poly>> dh;    // d/dh_i: vertical, p-part = column i of A^-1
  VecField<Poly> euler;       // sum_j p_j d/dp_j
  VecField<Poly> dtheta;      // h1 d/dh2 - h2 d/dh1
  VecField<Poly> Xtheta;      // h2 X1 - h1 X2
  VecField<Poly> Xbar;        // h1 X1 + h2 X2
};

CanonicalFields canonical_fields(const GroupModel& model);

// Polynomial right-hand side of the geodesic flow (the components of Hvec)
// and its Jacobian, both over the 2n canonical variables.
struct FlowPolys {
  int n = 0;
  std::vector<Poly> rhs;
  std::vector<std::vector<Poly>> jac;
};

FlowPolys flow_polys(const GroupModel& model);

}  // namespace carnot
