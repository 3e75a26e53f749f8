#include <doctest.h>

#include <cmath>
#include <numbers>

#include "carnot/groups.hpp"

using namespace carnot;

TEST_CASE("group models") {
  GroupModel h = build_group(GroupKind::Goursat, 3);
  CHECK(h.n == 3);
  CHECK(h.strata == std::vector<int>{2, 1});
  GroupModel e = build_group("engel");
  CHECK(e.n == 4);
  CHECK(e.strata == std::vector<int>{2, 1, 1});
  CHECK(e.is_engel());
  GroupModel c = build_group("cartan");
  CHECK(c.n == 5);
  CHECK(c.strata == std::vector<int>{2, 1, 2});
  CHECK(lie_bracket(c.frame_field(1), c.frame_field(2)) == c.frame_field(4));
  for (int n = 3; n <= 10; ++n) CHECK(realization_mismatches(build_group(GroupKind::Goursat, n)).empty());
  CHECK(realization_mismatches(c).empty());
  CHECK(build_group("goursat:7").na() == 6);
  CHECK(c.na() == 4);
}

TEST_CASE("unsupported and malformed group specs") {
  auto code = [](const std::string& s) {
    try {
      build_group(s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::RealizationMismatch;
  };
  CHECK(code("goursat:2") == ErrorCode::UnsupportedGroup);
  CHECK(code("goursat:x") == ErrorCode::Parse);
  CHECK(code("heisenberg7") == ErrorCode::UnsupportedGroup);
  try {
    build_group("goursat:2");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("unsupported group") != std::string::npos);
  }
}

TEST_CASE("frame matrix at a base point") {
  GroupModel h = build_group(GroupKind::Goursat, 3);
  auto f0 = fiber_transform(h, std::vector<mpq_class>(3, 0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(f0.A[i][j] == (i == j ? 1 : 0));
  GroupModel c = build_group(GroupKind::Cartan);
  auto fc = fiber_transform(c, std::vector<mpq_class>(5, 0));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(fc.A[i][j] == (i == j ? 1 : 0));

  // Engel at x = 1: X_{i+2} has x^(j-i)/(j-i)! on d/dy_j
  GroupModel e = build_group(GroupKind::Goursat, 4);
  auto f1 = fiber_transform(e, std::vector<mpq_class>{1, 0, 0, 0});
  std::vector<std::vector<mpq_class>> expect{
      {1, 0, 0, 0}, {0, 1, 1, mpq_class(1, 2)}, {0, 0, 1, 1}, {0, 0, 0, 1}};
  CHECK(f1.A == expect);
}

TEST_CASE("p to h round trip") {
  GroupModel c = build_group(GroupKind::Cartan);
  std::vector<mpq_class> base{mpq_class(1, 3), -2, mpq_class(5, 7), 1, 3};
  auto f = fiber_transform(c, base);
  std::vector<mpq_class> p{1, mpq_class(-2, 3), 4, mpq_class(1, 9), -1};
  CHECK(f.to_p(f.to_h(p)) == p);
  auto fd = fiber_transform(c, std::vector<double>{1.0 / 3, -2, 5.0 / 7, 1, 3});
  std::vector<double> pd{1, -2.0 / 3, 4, 1.0 / 9, -1};
  auto back = fd.to_p(fd.to_h(pd));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(back[i] - pd[i]) <= 1e-12 * std::max(1.0, std::abs(pd[i])));
}

TEST_CASE("unit speed and the rational circle") {
  GroupModel e = build_group(GroupKind::Goursat, 4);
  for (int k = -5; k <= 5; ++k) {
    auto [a, b] = rational_unit_circle(mpq_class(k) / 3);
    CHECK(a * a + b * b == 1);
    Covector l = covector_from_h(e, std::vector<mpq_class>{a, b, 1, 2});
    CHECK(l.unit_speed());
  }
  Covector l = covector_from_h(e, std::vector<double>{0.6, 0.8001, 0, 0});
  CHECK(!l.unit_speed());
}

TEST_CASE("pendulum charts round trip") {
  EngelChart ec{0.7, -1.2, 0.4};
  auto h = engel_h(ec);
  CHECK(h[0] == doctest::Approx(-std::sin(0.7)));
  CHECK(h[1] == doctest::Approx(std::cos(0.7)));
  auto back = engel_chart(h);
  CHECK(back.theta == doctest::Approx(0.7));
  CHECK(back.c == doctest::Approx(-1.2));
  CHECK(back.alpha == doctest::Approx(0.4));
  CartanChart cc{-2.0, 0.5, 1.5, 0.3};
  auto hc = cartan_h(cc);
  CHECK(hc[3] == doctest::Approx(1.5 * std::sin(0.3)));
  CHECK(hc[4] == doctest::Approx(-1.5 * std::cos(0.3)));
  auto cb = cartan_chart(hc);
  CHECK(cb.theta == doctest::Approx(-2.0));
  CHECK(cb.alpha == doctest::Approx(1.5));
  CHECK(cb.beta == doctest::Approx(0.3));
}
