#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carnot/groups.hpp"

namespace carnot {

struct JacobiValues {
  double sn, cn, dn;
};

// Descending Landen transformation, at most 12 steps; k = 0 and k = 1 use
// the circular and hyperbolic closed forms.
JacobiValues jacobi_sn_cn_dn(double u, double k);

// Complete elliptic integral of the first kind via the AGM.
// ModulusOutOfRange unless 0 <= k < 1.
double complete_K(double k);

// Incomplete integral F(phi, k) for any real amplitude (used to invert the
// elliptic charts).
double incomplete_F(double phi, double k);

enum class Stratum { C1, C2, C3, C4, C5, C6, C7 };

// Default boundary tolerance for |E -+ alpha|, |alpha|, |c| and the angle test.
inline constexpr double kClassTolerance = 1e-10;

// Pendulum chart of a unit-speed covector of the Engel or Cartan group.
// The pendulum angle is theta - beta with alpha >= 0; for Engel, beta is 0
// when alpha > 0 and pi when alpha < 0 (the reflection to the alpha > 0 case).
struct PendulumChart {
  GroupKind kind = GroupKind::Goursat;
  Stratum stratum = Stratum::C7;
  int alpha_sign = 0;  // sign of the Engel alpha; +1 for Cartan when alpha > 0
  double theta = 0, c = 0;
  double alpha = 0;  // signed for Engel, >= 0 for Cartan
  double beta = 0;   // Cartan only
  double E = 0;
  bool boundary_uncertain = false;
  // elliptic coordinates, set by elliptic_coords on C1, C2, C3
  std::optional<double> k, phi, K;

  std::string name() const;  // "C1+", "C3-", "C6", ...
  double pendulum_alpha() const { return std::abs(alpha); }
  double pendulum_shift() const;  // beta for Cartan, 0 or pi for Engel
};

std::string stratum_name(Stratum s);

PendulumChart classify_pendulum(const GroupModel& model, const Covector& lambda,
                                double eps = kClassTolerance);
PendulumChart classify_pendulum(const GroupModel& model, const std::vector<double>& h,
                                double eps = kClassTolerance);

// Adds (k, phi, K) to a chart in C1, C2 or C3; WrongStratum otherwise.
PendulumChart elliptic_coords(const GroupModel& model, const Covector& lambda,
                              double eps = kClassTolerance);

// Fiber components h(t) from the stratum's closed form. C1 to C3 need the
// elliptic coordinates; C4, C5 and C7 are equilibria and C6 rotates uniformly.
std::vector<double> pendulum_closed_form(const PendulumChart& chart, double t);

// Fiber components of a chart state (theta, c) with the chart's alpha, beta.
std::vector<double> chart_to_h(const PendulumChart& chart, double theta, double c);

}  // namespace carnot
