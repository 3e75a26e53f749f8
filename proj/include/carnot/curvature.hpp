#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carnot/groups.hpp"

namespace carnot {

// Closed forms A1(n) = (n+3)(n-2)(n-3)(n-4)/8, A2(n) = (n-2)(n-3)(n-4)/3.
std::pair<mpq_class, mpq_class> coeff_A(int n);
// The same coefficients from their finite double sums.
std::pair<mpq_class, mpq_class> coeff_A_double_sum(int n);

// Coefficient of the linear term of S(t)^-1 for rows of lengths na, nb.
mpq_class omega(int na, int nb);

// Pole magnitude below which the checked evaluators throw SingularCovector.
inline constexpr double kPoleTolerance = 1e-8;

// R_aa,11 for the Goursat group of dimension n (h4 taken as 0 when n = 3):
// -(n-1)(12 + n(4n-17))(h3^2 + h2 h4)/6 - (n-1)(n-2)(n-3) h3^2 h2^2 / h1^2.
mpq_class r11_goursat(int n, const std::vector<mpq_class>& h);
double r11_goursat(int n, const std::vector<double>& h);
double r11_goursat_unchecked(int n, const std::vector<double>& h);

// R_aa,11 for the Cartan group: 6E - 8 (h1 h4 + h2 h5)^2 / h3^2.
mpq_class r11_cartan(const std::vector<mpq_class>& h);
double r11_cartan(const std::vector<double>& h);
double r11_cartan_unchecked(const std::vector<double>& h);

// Pendulum energies: Engel h3^2/2 - h2 h4, Cartan h3^2/2 + h1 h5 - h2 h4.
double energy_engel(const std::vector<double>& h);
double energy_cartan(const std::vector<double>& h);
mpq_class energy_cartan(const std::vector<mpq_class>& h);

using Mat2q = std::array<std::array<mpq_class, 2>, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

struct CurvatureReport {
  std::string group;
  std::vector<double> covector;  // h at the origin
  int na = 0, nb = 1;
  Mat2q I;
  Mat2 R;
  double r11 = 0;
  std::optional<mpq_class> r11_exact;  // set when the covector is rational
  std::optional<Mat2q> R_exact;
  mpq_class omega_aa;
  mpq_class r_coefficient;  // 3 * omega(na, na)
  int trace_I = 0;
  std::optional<double> bound;  // 4E (Engel) or 6E (Cartan)
  std::string bound_kind;
  std::string basis = "canonical-frame projection";
};

// Requires a unit-speed covector, ample and equiregular at t = 0.
CurvatureReport curvature_operator(const GroupModel& model, const Covector& lambda);

// Model of S(t)^-1 in the basis {pi_* F_a1, pi_* F_b1}:
// -delta_ab n_a^2 / t + R_ab,11 Omega(n_a, n_b) t with only R_aa,11 nonzero.
Mat2 sflat_model(int na, int nb, double r11, double t);

}  // namespace carnot
