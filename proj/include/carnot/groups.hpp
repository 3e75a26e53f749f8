#pragma once

#include <string>
#include <utility>
#include <vector>

#include "carnot/errors.hpp"
#include "carnot/poly.hpp"
#include "carnot/vecfield.hpp"

namespace carnot {

enum class GroupKind { Goursat, Cartan };

struct StructureEntry {
  int k;          // 0-based index of X_{k+1}
  mpq_class c;
};

// Rank-two Carnot group realized by polynomial frame fields on R^n.
// A[i][j] is the d/dx_j coefficient of X_{i+1}; polynomial variable j is x_j.
struct GroupModel {
  GroupKind kind = GroupKind::Goursat;
  int n = 0;
  int rank = 2;
  std::vector<std::vector<Poly>> A;
  std::vector<std::vector<Poly>> Ainv;
  // structure[i][j]: [X_{i+1}, X_{j+1}] = sum c X_{k+1}
  std::vector<std::vector<std::vector<StructureEntry>>> structure;
  std::vector<int> strata;
  std::vector<std::string> base_names;
  bool repaired = false;  // realization differed from the printed one and was fixed

  int step() const { return static_cast<int>(strata.size()); }
  bool is_engel() const { return kind == GroupKind::Goursat && n == 4; }
  // length of the long row of the Young diagram
  int na() const { return kind == GroupKind::Cartan ? 4 : n - 1; }
  std::string name() const;
  VecField<Poly> frame_field(int i) const;  // X_{i+1} as a field with zero fiber part
};

GroupModel build_group(GroupKind kind, int n = 0);
// "goursat:<n>", "cartan", or the aliases "heisenberg" (n = 3) and "engel" (n = 4)
GroupModel build_group(const std::string& name);

// Checks every bracket [X_i, X_j] of the polynomial realization against the
// structure table; returns the failing pairs as text (empty when consistent).
std::vector<std::string> realization_mismatches(const GroupModel& model);

template <class T>
struct FiberMap {
  std::vector<std::vector<T>> A, Ainv;

  std::vector<T> to_h(const std::vector<T>& p) const { return mul(A, p); }
  std::vector<T> to_p(const std::vector<T>& h) const { return mul(Ainv, h); }

  static std::vector<T> mul(const std::vector<std::vector<T>>& M, const std::vector<T>& v) {
    std::vector<T> r(M.size(), T(0));
    for (size_t i = 0; i < M.size(); ++i)
      for (size_t j = 0; j < v.size(); ++j) r[i] += M[i][j] * v[j];
    return r;
  }
};

FiberMap<mpq_class> fiber_transform(const GroupModel& model, const std::vector<mpq_class>& base);
FiberMap<double> fiber_transform(const GroupModel& model, const std::vector<double>& base);

struct EngelChart {
  double theta, c, alpha;
};
struct CartanChart {
  double theta, c, alpha, beta;
};

// Point of T*R^n. The canonical momenta p are primary; h = A(base) p.
struct Covector {
  std::vector<double> base, p, h;
  bool exact = false;
  std::vector<mpq_class> base_q, p_q, h_q;

  double H() const { return 0.5 * (h[0] * h[0] + h[1] * h[1]); }
  double rho() const;
  bool unit_speed(double tol = 1e-12) const;

  // z = (x, p), the integrator state
  std::vector<double> state() const;
};

Covector covector_from_h(const GroupModel& model, const std::vector<double>& h,
                         const std::vector<double>& base = {});
Covector covector_from_h(const GroupModel& model, const std::vector<mpq_class>& h,
                         const std::vector<mpq_class>& base = {});
Covector covector_from_state(const GroupModel& model, const std::vector<double>& z);

// Engel: h1 = -sin(theta), h2 = cos(theta), h3 = c, h4 = alpha.
EngelChart engel_chart(const std::vector<double>& h);
std::vector<double> engel_h(const EngelChart& chart);
// Cartan: h1 = cos(theta), h2 = sin(theta), h3 = c, h4 = alpha sin(beta), h5 = -alpha cos(beta).
CartanChart cartan_chart(const std::vector<double>& h);
std::vector<double> cartan_h(const CartanChart& chart);

// Rational point ((1-s^2)/(1+s^2), 2s/(1+s^2)) of the unit circle.
std::pair<mpq_class, mpq_class> rational_unit_circle(const mpq_class& s);

}  // namespace carnot
