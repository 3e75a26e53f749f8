#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>

#include "carnot/elliptic.hpp"
#include "carnot/hamiltonian.hpp"

using namespace carnot;
constexpr double kPi = std::numbers::pi;

// pendulum angle on the separatrix at elliptic coordinate u (c > 0)
double separatrix_angle(double u) { return 2 * std::atan2(std::tanh(u), 1 / std::cosh(u)); }

TEST_CASE("Jacobi functions: degenerate moduli and u = 0") {
  for (double k : {0.0, 0.3, 0.9, 1.0}) {
    auto j = jacobi_sn_cn_dn(0, k);
    CHECK(j.sn == 0);
    CHECK(j.cn == 1);
    CHECK(j.dn == 1);
  }
  auto c = jacobi_sn_cn_dn(0.7, 0);
  CHECK(c.sn == doctest::Approx(std::sin(0.7)));
  CHECK(c.cn == doctest::Approx(std::cos(0.7)));
  auto h = jacobi_sn_cn_dn(0.7, 1);
  CHECK(h.sn == doctest::Approx(std::tanh(0.7)));
  CHECK(h.cn == doctest::Approx(1 / std::cosh(0.7)));
  CHECK(h.dn == doctest::Approx(1 / std::cosh(0.7)));
  CHECK_THROWS_AS(jacobi_sn_cn_dn(1, 1.5), Error);
}

TEST_CASE("Jacobi functions against the reference implementation") {
  for (double k : {0.1, 0.5, 0.8, 0.99, 0.999999}) {
    for (double u = -7; u <= 7; u += 0.37) {
      double cn, dn;
      double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
      auto j = jacobi_sn_cn_dn(u, k);
      CHECK(std::abs(j.sn - sn) < 1e-12);
      CHECK(std::abs(j.cn - cn) < 1e-12);
      CHECK(std::abs(j.dn - dn) < 1e-12);
    }
  }
}

TEST_CASE("complete integral against quadrature") {
  CHECK(complete_K(0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(complete_K(1), Error);
  CHECK(complete_K(0.999999) > complete_K(0.9999));
  for (double k : {std::sqrt(0.5), 0.2, 0.95}) {
    auto f = [k](double t) { return 1 / std::sqrt(1 - k * k * std::sin(t) * std::sin(t)); };
    double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2, 15, 1e-15);
    CHECK(std::abs(complete_K(k) - q) < 1e-12);
  }
}

TEST_CASE("stratum classification") {
  GroupModel e = build_group("engel"), c = build_group("cartan");
  CHECK(classify_pendulum(e, engel_h({0, 1, 0})).stratum == Stratum::C6);
  CHECK(classify_pendulum(e, engel_h({0, 0, 0})).stratum == Stratum::C7);
  auto ch = classify_pendulum(c, cartan_h({0, 1, 1, 0}));
  CHECK(ch.stratum == Stratum::C1);
  CHECK(ch.E == doctest::Approx(-0.5));
  CHECK(classify_pendulum(e, engel_h({0.3, 0, -1})).name() == "C1-");
  CHECK(classify_pendulum(e, engel_h({0.3, 3, 1})).name() == "C2+");
  CHECK(classify_pendulum(e, engel_h({0, 2, 1})).name() == "C3+");
  CHECK(classify_pendulum(e, engel_h({0, 0, 1})).name() == "C4+");
  CHECK(classify_pendulum(e, engel_h({kPi, 0, 1})).name() == "C5+");
  CHECK(classify_pendulum(c, cartan_h({0.5, 0, 1, 0.5})).stratum == Stratum::C4);
  CHECK(classify_pendulum(c, cartan_h({0.5 + kPi, 0, 1, 0.5})).stratum == Stratum::C5);
  CHECK(classify_pendulum(c, cartan_h({1.5, 0.1, 0, 0})).stratum == Stratum::C6);
  // separatrix within tolerance but off the boundary: flagged
  auto near = classify_pendulum(e, engel_h({0, 2 + 1e-9, 1}));
  CHECK(near.boundary_uncertain);
  CHECK_THROWS_AS(classify_pendulum(build_group("goursat:5"), std::vector<double>{1, 0, 0, 0, 0}), Error);
  CHECK_THROWS_AS(classify_pendulum(e, std::vector<double>{0.5, 0.5, 0, 0}), Error);
}

TEST_CASE("elliptic coordinates") {
  GroupModel e = build_group("engel"), c = build_group("cartan");
  const double a = 1.7, k0 = 0.6;
  auto ch = elliptic_coords(e, covector_from_h(e, engel_h({0, 2 * k0 * std::sqrt(a), a})));
  CHECK(*ch.k == doctest::Approx(k0));
  CHECK(std::abs(*ch.phi) < 1e-14);
  auto c3 = elliptic_coords(e, covector_from_h(e, engel_h({0, 2 * std::sqrt(a), a})));
  CHECK(c3.stratum == Stratum::C3);
  CHECK(*c3.k == 1);
  CHECK(std::abs(*c3.phi) < 1e-14);
  const double th = 0.4, cc = 2.5, al = 0.8, be = -0.3;
  auto c2 = elliptic_coords(c, covector_from_h(c, cartan_h({th, cc, al, be})));
  CHECK(c2.stratum == Stratum::C2);
  double s = std::sin((th - be) / 2);
  CHECK(*c2.k == doctest::Approx(1 / std::sqrt(s * s + cc * cc / (4 * al))));
  CHECK(*c2.k < 1);
  CHECK_THROWS_AS(elliptic_coords(e, covector_from_h(e, engel_h({0, 1, 0}))), Error);
}

TEST_CASE("closed forms of the pendulum") {
  GroupModel e = build_group("engel");
  // C6 rotates uniformly
  auto c6 = classify_pendulum(e, engel_h({0.2, 0.7, 0}));
  for (double t : {0.0, 1.0, 3.3}) {
    auto h = pendulum_closed_form(c6, t);
    CHECK(engel_chart(h).theta == doctest::Approx(std::remainder(0.2 + 0.7 * t, 2 * kPi)));
  }
  // C3 with alpha = 1: h1 = -2 sgn(c) tanh(phi + t) / cosh(phi + t)
  auto c3 = elliptic_coords(e, covector_from_h(e, engel_h({separatrix_angle(-0.8), 2 / std::cosh(0.8), 1})));
  double phi = *c3.phi;
  CHECK(phi == doctest::Approx(-0.8));
  for (double t : {0.0, 0.5, 2.0}) {
    auto h = pendulum_closed_form(c3, t);
    CHECK(h[0] == doctest::Approx(-2 * std::tanh(phi + t) / std::cosh(phi + t)));
  }
  // C1 with alpha = 1: h1 = -2k sn dn
  auto c1 = elliptic_coords(e, covector_from_h(e, engel_h({0.5, 0.3, 1})));
  for (double t : {0.0, 0.9, 4.0}) {
    auto j = jacobi_sn_cn_dn(*c1.phi + t, *c1.k);
    CHECK(pendulum_closed_form(c1, t)[0] == doctest::Approx(-2 * *c1.k * j.sn * j.dn));
  }
}

TEST_CASE("closed forms follow the flow") {
  struct Case {
    const char* group;
    std::vector<double> h;
  };
  std::vector<Case> cases{
      {"engel", engel_h({0.5, 0.3, 1.3})},   {"engel", engel_h({0.5, -0.3, -1.3})},
      {"engel", engel_h({0.2, 2.5, 0.9})},   {"engel", engel_h({2.0, -2.5, -0.9})},
      {"engel", engel_h({separatrix_angle(-0.4), 2 / std::cosh(0.4), 1})}, {"engel", engel_h({0.3, -0.8, 0})},
      {"cartan", cartan_h({0.4, 0.5, 1.1, -0.6})}, {"cartan", cartan_h({0.4, 2.5, 0.7, 0.6})},
      {"cartan", cartan_h({0.3 + separatrix_angle(-0.5), 2 * std::sqrt(0.6) / std::cosh(0.5), 0.6, 0.3})},
      {"cartan", cartan_h({1.0, -0.4, 0, 0})}};
  for (const auto& cs : cases) {
    GroupModel m = build_group(cs.group);
    Covector l = covector_from_h(m, cs.h);
    PendulumChart ch = classify_pendulum(m, l);
    if (ch.stratum <= Stratum::C3) ch = elliptic_coords(m, l);
    CAPTURE(ch.name());
    FlowSystem s(m);
    IntegrateOptions opt;
    opt.sample_every = 50;
    Trajectory tr = integrate_flow(s, l, 5.0, opt);
    double err = 0;
    for (size_t i = 0; i < tr.times.size(); ++i) {
      auto h = covector_from_state(m, tr.states[i]).h;
      auto cf = pendulum_closed_form(ch, tr.times[i]);
      for (int k = 0; k < m.n; ++k) err = std::max(err, std::abs(h[k] - cf[k]));
    }
    CHECK(err < 1e-6);
  }
}
