#include "carnot/curvature.hpp"

#include <cmath>

#include "carnot/regularity.hpp"

namespace carnot {

std::pair<mpq_class, mpq_class> coeff_A(int n) {
  mpq_class a1 = mpq_class(n + 3) * (n - 2) * (n - 3) * (n - 4) / 8;
  mpq_class a2 = mpq_class(n - 2) * (n - 3) * (n - 4) / 3;
  return {a1, a2};
}

std::pair<mpq_class, mpq_class> coeff_A_double_sum(int n) {
  mpq_class a1 = 0, a2 = 0;
  for (int k = 0; k <= n - 5; ++k) {
    mpq_class inner = 0;
    for (int j = 0; j <= n - 5 - k; ++j) inner += k + j + 2;
    a1 += (3 + k) * inner;
    a2 += inner;
  }
  return {a1, a2};
}

mpq_class omega(int na, int nb) {
  int d = std::abs(na - nb);
  if (d >= 2) return 0;
  if (d == 1) return mpq_class(1, 4 * (na + nb));
  return mpq_class(na, 4 * na * na - 1);
}

namespace {

template <class T>
T goursat_formula(int n, const std::vector<T>& h) {
  const T& h1 = h[0];
  const T& h2 = h[1];
  const T& h3 = h[2];
  T h4 = n >= 4 ? h[3] : T(0);
  T c1 = T(-(n - 1) * (12 + n * (4 * n - 17))) / T(6);
  T c2 = T(-(n - 1) * (n - 2) * (n - 3));
  T r = c1 * (h3 * h3 + h2 * h4);
  if (n > 3) r += c2 * h3 * h3 * h2 * h2 / (h1 * h1);
  return r;
}

template <class T>
T cartan_formula(const std::vector<T>& h) {
  T e = h[2] * h[2] / T(2) + h[0] * h[4] - h[1] * h[3];
  T cross = h[0] * h[3] + h[1] * h[4];
  return T(6) * e - T(8) * cross * cross / (h[2] * h[2]);
}

void need(size_t got, size_t want) {
  if (got < want)
    throw Error(ErrorCode::DimensionMismatch, "covector has " + std::to_string(got) +
                                                  " components, need " + std::to_string(want));
}

}  // namespace

mpq_class r11_goursat(int n, const std::vector<mpq_class>& h) {
  need(h.size(), n);
  if (n > 3 && h[0] == 0) throw Error(ErrorCode::SingularCovector, "r11: h1 = 0 is a pole");
  return goursat_formula(n, h);
}

double r11_goursat(int n, const std::vector<double>& h) {
  need(h.size(), n);
  if (n > 3 && std::abs(h[0]) < kPoleTolerance)
    throw Error(ErrorCode::SingularCovector, "r11: |h1| below pole tolerance");
  return goursat_formula(n, h);
}

double r11_goursat_unchecked(int n, const std::vector<double>& h) {
  need(h.size(), n);
  return goursat_formula(n, h);
}

mpq_class r11_cartan(const std::vector<mpq_class>& h) {
  need(h.size(), 5);
  if (h[2] == 0) throw Error(ErrorCode::SingularCovector, "r11: h3 = 0 is a pole");
  return cartan_formula(h);
}

double r11_cartan(const std::vector<double>& h) {
  need(h.size(), 5);
  if (std::abs(h[2]) < kPoleTolerance)
    throw Error(ErrorCode::SingularCovector, "r11: |h3| below pole tolerance");
  return cartan_formula(h);
}

double r11_cartan_unchecked(const std::vector<double>& h) {
  need(h.size(), 5);
  return cartan_formula(h);
}

double energy_engel(const std::vector<double>& h) { return 0.5 * h[2] * h[2] - h[1] * h[3]; }

double energy_cartan(const std::vector<double>& h) {
  return 0.5 * h[2] * h[2] + h[0] * h[4] - h[1] * h[3];
}

mpq_class energy_cartan(const std::vector<mpq_class>& h) {
  return h[2] * h[2] / 2 + h[0] * h[4] - h[1] * h[3];
}

CurvatureReport curvature_operator(const GroupModel& m, const Covector& lambda) {
  if (!lambda.unit_speed(1e-9))
    throw Error(ErrorCode::NotUnitSpeed, "curvature needs a unit-speed covector (h1^2 + h2^2 = 1)");
  GrowthReport g = growth_vector_closed_form(m, lambda.h);
  if (!g.ample) throw Error(ErrorCode::NotAmpleEquiregular, "geodesic is not ample (abnormal)");
  if (!g.equiregular)
    throw Error(ErrorCode::SingularCovector,
                "geodesic is not equiregular at t = 0: the invariant has a pole here");

  CurvatureReport rep;
  rep.group = m.name();
  rep.covector = lambda.h;
  rep.na = m.na();
  rep.nb = 1;
  rep.omega_aa = omega(rep.na, rep.na);
  rep.r_coefficient = 3 * rep.omega_aa;
  rep.I = {{{mpq_class(rep.na * rep.na), mpq_class(0)}, {mpq_class(0), mpq_class(1)}}};
  rep.trace_I = rep.na * rep.na + 1;

  if (m.kind == GroupKind::Cartan) {
    rep.r11 = r11_cartan(lambda.h);
    rep.bound = 6 * energy_cartan(lambda.h);
    rep.bound_kind = "6E";
  } else {
    rep.r11 = r11_goursat(m.n, lambda.h);
    if (m.is_engel()) {
      rep.bound = 4 * energy_engel(lambda.h);
      rep.bound_kind = "4E";
    }
  }
  if (lambda.exact) {
    mpq_class r = m.kind == GroupKind::Cartan ? r11_cartan(lambda.h_q) : r11_goursat(m.n, lambda.h_q);
    rep.r11_exact = r;
    rep.R_exact = Mat2q{{{rep.r_coefficient * r, mpq_class(0)}, {mpq_class(0), mpq_class(0)}}};
  }
  double coeff = to_double(rep.r_coefficient);
  rep.R = {{{coeff * rep.r11, 0.0}, {0.0, 0.0}}};
  return rep;
}

Mat2 sflat_model(int na, int nb, double r11, double t) {
  Mat2 s{};
  s[0][0] = -double(na * na) / t + r11 * to_double(omega(na, na)) * t;
  s[1][1] = -double(nb * nb) / t;
  return s;
}

}  // namespace carnot
