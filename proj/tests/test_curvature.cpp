#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/curvature.hpp"

using namespace carnot;

TEST_CASE("A1 and A2 coefficients") {
  CHECK(coeff_A(4) == std::make_pair(mpq_class(0), mpq_class(0)));
  CHECK(coeff_A(3) == std::make_pair(mpq_class(0), mpq_class(0)));
  CHECK(coeff_A(5) == std::make_pair(mpq_class(6), mpq_class(2)));
  CHECK(coeff_A(6) == std::make_pair(mpq_class(27), mpq_class(8)));
  for (int n = 5; n <= 12; ++n) CHECK(coeff_A(n) == coeff_A_double_sum(n));
}

TEST_CASE("Omega") {
  CHECK(omega(4, 4) == mpq_class(4, 63));
  CHECK(omega(2, 1) == mpq_class(1, 12));
  CHECK(omega(5, 1) == 0);
  CHECK(omega(3, 3) == mpq_class(3, 35));
  for (int n = 3; n <= 20; ++n) CHECK(3 * omega(n - 1, n - 1) == mpq_class(mpq_class(3 * (n - 1)) / (4 * (n - 1) * (n - 1) - 1)));
  CHECK(3 * omega(2, 2) == mpq_class(2, 5));
  CHECK(3 * omega(4, 4) == mpq_class(4, 21));
}

TEST_CASE("closed-form r11") {
  CHECK(r11_goursat(4, std::vector<mpq_class>{1, 0, 1, 0}) == -4);
  CHECK(r11_cartan(std::vector<mpq_class>{1, 0, 1, 0, 0}) == 3);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (int i = 0; i < 100; ++i) {
    std::vector<mpq_class> h{mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)),
                             mpq_class(num(rng), den(rng))};
    for (auto& q : h) q.canonicalize();
    CHECK(r11_goursat(3, h) == h[2] * h[2]);
  }
  try {
    r11_goursat(5, std::vector<mpq_class>{0, 1, 1, 0, 0});
    FAIL("expected SingularCovector");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularCovector);
  }
  CHECK_THROWS_AS(r11_cartan(std::vector<double>{1, 0, 1e-9, 0, 0}), Error);
  CHECK(std::isfinite(r11_cartan_unchecked({1, 0, 1e-9, 0, 0})));
}

TEST_CASE("Engel identity and energy bounds") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> th(-3.1, 3.1), cc(-3, 3), al(-3, 3), be(-3.1, 3.1);
  for (int i = 0; i < 2000; ++i) {
    double t = th(rng), c = cc(rng), a = al(rng);
    if (std::abs(std::sin(t)) < 1e-3) continue;
    auto h = engel_h({t, c, a});
    double E = energy_engel(h);
    double r = r11_goursat(4, h);
    double square = 6 * c * c / (std::sin(t) * std::sin(t));
    CHECK(std::abs(r - (4 * E - square)) <= 1e-12 * std::max(1.0, square));
    CHECK(r <= 4 * E);
  }
  for (int i = 0; i < 2000; ++i) {
    double t = th(rng), c = cc(rng), a = std::abs(al(rng)), b = be(rng);
    if (std::abs(c) < 1e-3) continue;
    auto h = cartan_h({t, c, a, b});
    double E = energy_cartan(h);
    CHECK(E == doctest::Approx(c * c / 2 - a * std::cos(t - b)));
    double r = r11_cartan(h);
    double square = 8 * a * a * std::pow(std::sin(t - b), 2) / (c * c);
    CHECK(std::abs(6 * E - r - square) <= 1e-10 * std::max(1.0, square));
    CHECK(r <= 6 * E);
  }
}

TEST_CASE("curvature operator") {
  GroupModel h = build_group("heisenberg");
  auto r = curvature_operator(h, covector_from_h(h, std::vector<mpq_class>{1, 0, 2}));
  CHECK(r.I[0][0] == 4);
  CHECK(r.I[1][1] == 1);
  REQUIRE(r.R_exact);
  CHECK((*r.R_exact)[0][0] == mpq_class(8, 5));
  CHECK((*r.R_exact)[0][1] == 0);
  CHECK((*r.R_exact)[1][1] == 0);
  GroupModel g5 = build_group("goursat:5");
  CHECK(curvature_operator(g5, covector_from_h(g5, std::vector<double>{0.6, 0.8, 1, 2, 3})).trace_I == 17);
  GroupModel c = build_group("cartan");
  auto rc = curvature_operator(c, covector_from_h(c, std::vector<mpq_class>{1, 0, 1, 0, 0}));
  CHECK((*rc.R_exact)[0][0] == mpq_class(4, 7));
  CHECK(rc.trace_I == 17);
  CHECK(rc.r_coefficient == mpq_class(4, 21));
  REQUIRE(rc.bound);
  CHECK(*rc.bound == doctest::Approx(3));
  auto code = [&](const GroupModel& m, std::vector<double> hh) {
    try {
      curvature_operator(m, covector_from_h(m, hh));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Parse;
  };
  CHECK(code(c, {1, 0, 0, 1, 0}) == ErrorCode::SingularCovector);
  CHECK(code(c, {1, 0, 0, 0, 1}) == ErrorCode::NotAmpleEquiregular);
  CHECK(code(c, {1, 1, 1, 0, 0}) == ErrorCode::NotUnitSpeed);
}

TEST_CASE("S-flat model") {
  auto s = sflat_model(3, 1, -4, 0.1);
  CHECK(s[0][0] == doctest::Approx(-90.0342857142857).epsilon(1e-13));
  CHECK(s[1][1] == doctest::Approx(-10).epsilon(1e-15));
  CHECK(s[0][1] == 0);
  CHECK(s[1][0] == 0);
}
