#include "carnot/elliptic.hpp"

#include <boost/math/special_functions/ellint_1.hpp>
#include <cmath>
#include <numbers>

namespace carnot {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
  // to (-pi, pi]
  a = std::remainder(a, 2 * kPi);
  if (a <= -kPi) a += 2 * kPi;
  return a;
}

}  // namespace

JacobiValues jacobi_sn_cn_dn(double u, double k) {
  if (!(k >= 0 && k <= 1)) throw Error(ErrorCode::ModulusOutOfRange, "jacobi: modulus outside [0,1]");
  if (k == 0) return {std::sin(u), std::cos(u), 1.0};
  if (k == 1) {
    double s = 1 / std::cosh(u);
    return {std::tanh(u), s, s};
  }
  constexpr int kCap = 12;
  double a[kCap + 1], c[kCap + 1];
  a[0] = 1;
  c[0] = k;
  double b = std::sqrt((1 - k) * (1 + k));
  int N = 0;
  while (N < kCap && std::abs(c[N]) > 1e-16) {
    double an = 0.5 * (a[N] + b);
    c[N + 1] = 0.5 * (a[N] - b);
    b = std::sqrt(a[N] * b);
    a[++N] = an;
  }
  double phi = std::ldexp(a[N] * u, N);
  for (int i = N; i >= 1; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  double sn = std::sin(phi);
  return {sn, std::cos(phi), std::sqrt(1 - k * k * sn * sn)};
}

double complete_K(double k) {
  if (!(k >= 0 && k < 1))
    throw Error(ErrorCode::ModulusOutOfRange, "complete_K: modulus must lie in [0,1)");
  double a = 1, b = std::sqrt((1 - k) * (1 + k));
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2 * a);
}

double incomplete_F(double phi, double k) {
  if (!(k >= 0 && k < 1))
    throw Error(ErrorCode::ModulusOutOfRange, "incomplete_F: modulus must lie in [0,1)");
  return boost::math::ellint_1(k, phi);
}

std::string stratum_name(Stratum s) {
  static const char* names[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7"};
  return names[static_cast<int>(s)];
}

std::string PendulumChart::name() const {
  std::string s = stratum_name(stratum);
  if (kind == GroupKind::Goursat && static_cast<int>(stratum) <= 4)
    s += alpha_sign > 0 ? "+" : "-";
  return s;
}

double PendulumChart::pendulum_shift() const {
  if (kind == GroupKind::Cartan) return beta;
  return alpha < 0 ? kPi : 0.0;
}

PendulumChart classify_pendulum(const GroupModel& m, const std::vector<double>& h, double eps) {
  if (!(m.kind == GroupKind::Cartan || m.is_engel()))
    throw Error(ErrorCode::UnsupportedGroup, "pendulum strata are defined for Engel and Cartan only");
  if (std::abs(h[0] * h[0] + h[1] * h[1] - 1) > 1e-9)
    throw Error(ErrorCode::NotUnitSpeed, "pendulum classification needs h1^2 + h2^2 = 1");
  PendulumChart ch;
  ch.kind = m.kind;
  if (m.kind == GroupKind::Cartan) {
    CartanChart cc = cartan_chart(h);
    ch.theta = cc.theta;
    ch.c = cc.c;
    ch.alpha = cc.alpha;
    ch.beta = cc.beta;
    ch.alpha_sign = cc.alpha > 0 ? 1 : 0;
  } else {
    EngelChart ec = engel_chart(h);
    ch.theta = ec.theta;
    ch.c = ec.c;
    ch.alpha = ec.alpha;
    ch.alpha_sign = ec.alpha > 0 ? 1 : (ec.alpha < 0 ? -1 : 0);
  }
  double a = ch.pendulum_alpha();
  double ang = wrap_pi(ch.theta - ch.pendulum_shift());
  ch.E = 0.5 * ch.c * ch.c - a * std::cos(ang);

  // distance to the nearest boundary decides the uncertainty flag
  auto near = [&](double d) {
    if (d != 0 && d <= 1e3 * eps) ch.boundary_uncertain = true;
    return d <= eps;
  };
  if (near(a)) {
    ch.stratum = near(std::abs(ch.c)) ? Stratum::C7 : Stratum::C6;
    return ch;
  }
  double below = std::abs(ch.E + a), above = std::abs(ch.E - a);
  if (near(below)) {
    ch.stratum = Stratum::C4;
  } else if (near(above)) {
    bool degenerate = m.kind == GroupKind::Cartan ? near(std::abs(wrap_pi(ang - kPi)))
                                                  : near(std::abs(ch.c));
    ch.stratum = degenerate ? Stratum::C5 : Stratum::C3;
  } else {
    ch.stratum = ch.E < a ? Stratum::C1 : Stratum::C2;
  }
  return ch;
}

PendulumChart classify_pendulum(const GroupModel& m, const Covector& lambda, double eps) {
  if (!lambda.unit_speed(1e-9))
    throw Error(ErrorCode::NotUnitSpeed, "pendulum classification needs h1^2 + h2^2 = 1");
  return classify_pendulum(m, lambda.h, eps);
}

PendulumChart elliptic_coords(const GroupModel& m, const Covector& lambda, double eps) {
  PendulumChart ch = classify_pendulum(m, lambda, eps);
  double a = ch.pendulum_alpha();
  double sa = std::sqrt(a);
  double ang = wrap_pi(ch.theta - ch.pendulum_shift());
  double s2 = std::sin(ang / 2), c2 = std::cos(ang / 2);
  double sgn = ch.c < 0 ? -1.0 : 1.0;
  switch (ch.stratum) {
    case Stratum::C1: {
      double k = std::sqrt(s2 * s2 + ch.c * ch.c / (4 * a));
      // sn = sin(ang/2)/k, cn = c/(2k sqrt(a)); amplitude in [0, 2pi)
      double am = std::atan2(s2 / k, ch.c / (2 * k * sa));
      if (am < 0) am += 2 * kPi;
      ch.k = k;
      ch.K = complete_K(k);
      ch.phi = incomplete_F(am, k) / sa;
      break;
    }
    case Stratum::C2: {
      double k = 1 / std::sqrt(s2 * s2 + ch.c * ch.c / (4 * a));
      // sn = sgn(c) sin(ang/2), cn = cos(ang/2); amplitude in [0, pi)
      double am = std::atan2(sgn * s2, c2);
      if (am < 0) am += kPi;
      ch.k = k;
      ch.K = complete_K(k);
      ch.phi = k * incomplete_F(am, k) / sa;
      break;
    }
    case Stratum::C3:
      ch.k = 1.0;
      ch.phi = std::atanh(sgn * s2) / sa;
      break;
    default:
      throw Error(ErrorCode::WrongStratum,
                  "elliptic coordinates exist on C1, C2, C3 only; covector is in " + ch.name());
  }
  return ch;
}

std::vector<double> chart_to_h(const PendulumChart& ch, double theta, double c) {
  if (ch.kind == GroupKind::Cartan) return cartan_h({theta, c, ch.alpha, ch.beta});
  return engel_h({theta, c, ch.alpha});
}

std::vector<double> pendulum_closed_form(const PendulumChart& ch, double t) {
  double a = ch.pendulum_alpha();
  double sa = std::sqrt(a);
  double shift = ch.pendulum_shift();
  double sgn = ch.c < 0 ? -1.0 : 1.0;
  auto need_coords = [&] {
    if (!ch.k || !ch.phi)
      throw Error(ErrorCode::WrongStratum, "chart has no elliptic coordinates; use elliptic_coords");
  };
  switch (ch.stratum) {
    case Stratum::C1: {
      need_coords();
      double k = *ch.k;
      JacobiValues j = jacobi_sn_cn_dn(sa * (*ch.phi + t), k);
      double ang = 2 * std::atan2(k * j.sn, j.dn);
      return chart_to_h(ch, ang + shift, 2 * k * sa * j.cn);
    }
    case Stratum::C2: {
      need_coords();
      double k = *ch.k;
      JacobiValues j = jacobi_sn_cn_dn(sa * (*ch.phi + t) / k, k);
      double ang = 2 * std::atan2(sgn * j.sn, j.cn);
      return chart_to_h(ch, ang + shift, sgn * 2 * sa / k * j.dn);
    }
    case Stratum::C3: {
      need_coords();
      double u = sa * (*ch.phi + t);
      double ang = 2 * std::atan2(sgn * std::tanh(u), 1 / std::cosh(u));
      return chart_to_h(ch, ang + shift, sgn * 2 * sa / std::cosh(u));
    }
    case Stratum::C6:
      return chart_to_h(ch, ch.theta + ch.c * t, ch.c);
    case Stratum::C4:
    case Stratum::C5:
    case Stratum::C7:
      return chart_to_h(ch, ch.theta, ch.c);
  }
  throw Error(ErrorCode::WrongStratum, "unknown stratum");
}

}  // namespace carnot
