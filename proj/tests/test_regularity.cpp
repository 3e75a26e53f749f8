#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "carnot/elliptic.hpp"
#include "carnot/regularity.hpp"

using namespace carnot;
constexpr double kPi = std::numbers::pi;

TEST_CASE("closed-form growth vectors") {
  auto g5 = growth_vector_closed_form(build_group("goursat:5"), {1, 0, 0, 0, 1});
  CHECK(g5.growth == std::vector<int>{2, 3, 4, 5});
  CHECK(g5.equiregular);
  CHECK(g5.young_diagram == std::make_pair(4, 1));
  auto ge = growth_vector_closed_form(build_group("engel"), {0, 1, 1, 0});
  CHECK(ge.growth == std::vector<int>{2, 3, 3, 4});
  CHECK(ge.ample);
  CHECK(!ge.equiregular);
  auto g7 = growth_vector_closed_form(build_group("goursat:7"), {0, 1, 2, 0, 0, 0, 0});
  CHECK(g7.growth == std::vector<int>{2, 3, 3, 4, 4, 5, 5, 6, 6, 7});
  auto gc = growth_vector_closed_form(build_group("cartan"), {1, 0, 0, 1, 0});
  CHECK(gc.growth == std::vector<int>{2, 3, 4, 4, 5});
  CHECK(gc.young_diagram == std::make_pair(4, 1));
  auto ab = growth_vector_closed_form(build_group("cartan"), {1, 0, 0, 0, 1});
  CHECK(ab.abnormal);
  CHECK(!ab.young_diagram);
}

TEST_CASE("rank oracle examples") {
  RankOracle e(build_group("engel"));
  CHECK(e.growth({1, 0, 1, 1}).growth == std::vector<int>{2, 3, 4});
  auto abn = e.growth({0, 1, 0, 1});
  CHECK(abn.abnormal);
  CHECK(abn.growth.size() == 8);
  CHECK(abn.growth.back() == 3);
  RankOracle c(build_group("cartan"));
  CHECK(c.growth({1, 0, 1, 0, 0}).growth == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("rank oracle agrees with the closed form on every stratum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2), ang(-kPi, kPi);
  for (int n = 3; n <= 6; ++n) {
    GroupModel m = build_group(GroupKind::Goursat, n);
    RankOracle oracle(m);
    for (int s = 0; s < 30; ++s) {
      double th = ang(rng);
      std::vector<double> h{std::cos(th), std::sin(th)};
      for (int i = 2; i < n; ++i) h.push_back(u(rng));
      if (s % 3 != 0) {
        h[0] = 0;
        h[1] = 1;
        h[2] = s % 3 == 1 ? 1 + std::abs(u(rng)) : 0;  // h3 != 0, or abnormal
      }
      auto a = oracle.growth(h), b = growth_vector_closed_form(m, h);
      CAPTURE(n);
      CHECK(a.growth == b.growth);
      CHECK(a.abnormal == b.abnormal);
      CHECK(a.equiregular == b.equiregular);
    }
  }
  GroupModel c = build_group("cartan");
  RankOracle oracle(c);
  for (int s = 0; s < 30; ++s) {
    std::vector<double> h = cartan_h({ang(rng), u(rng), std::abs(u(rng)), ang(rng)});
    if (s % 3 == 1) h[2] = 0;
    if (s % 3 == 2) {
      h[2] = 0;
      h[3] = -h[1];  // h1 h4 + h2 h5 = 0
      h[4] = h[0];
    }
    auto a = oracle.growth(h), b = growth_vector_closed_form(c, h);
    CHECK(a.growth == b.growth);
    CHECK(a.abnormal == b.abnormal);
  }
}

TEST_CASE("growth along a geodesic") {
  GroupModel e = build_group("engel");
  FlowSystem s(e);
  RankOracle oracle(e);
  // C6 from theta = 0.5: h1 = -sin(theta + t) vanishes at t = pi - 0.5
  Covector l = covector_from_h(e, engel_h({0.5, 1, 0}));
  auto at = growth_along_geodesic(oracle, s, l, kPi - 0.5);
  CHECK(at.growth == std::vector<int>{2, 3, 3, 4});
  CHECK(at.loss_times.size() == 1);
  CHECK(at.loss_times[0] == doctest::Approx(kPi - 0.5).epsilon(1e-9));
  auto before = growth_along_geodesic(oracle, s, l, 1.0);
  CHECK(before.growth == std::vector<int>{2, 3, 4});
}

TEST_CASE("loss times") {
  GroupModel e = build_group("engel");
  FlowSystem s(e);
  // C3 with phi = -1, alpha = 1: exactly one loss, at t = 1
  double th = 2 * std::atan2(std::tanh(-1.0), 1 / std::cosh(1.0));
  auto c3 = equiregularity_loss_times(s, covector_from_h(e, engel_h({th, 2 / std::cosh(1.0), 1})), 10);
  REQUIRE(c3.size() == 1);
  CHECK(std::abs(c3[0] - 1) < 1e-8);
  // C6 with theta0 = 0, c = 1: h1 = -sin t vanishes at t = k pi
  auto c6 = equiregularity_loss_times(s, covector_from_h(e, engel_h({0, 1, 0})), 10);
  REQUIRE(c6.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(c6[k] - k * kPi) < 1e-8);
  CHECK(std::abs(int(c6.size()) - int(std::floor(10 / kPi))) <= 1);
  // C1 is periodic with period 2K / sqrt(alpha) between zeros of sn
  Covector l1 = covector_from_h(e, engel_h({0.5, 0.3, 1}));
  auto c1 = equiregularity_loss_times(s, l1, 15);
  PendulumChart ch = elliptic_coords(e, l1);
  REQUIRE(c1.size() >= 3);
  for (size_t i = 1; i < c1.size(); ++i) CHECK(std::abs(c1[i] - c1[i - 1] - 2 * *ch.K) < 1e-7);

  GroupModel c = build_group("cartan");
  FlowSystem sc(c);
  CHECK(equiregularity_loss_times(sc, covector_from_h(c, cartan_h({0.4, 2.5, 0.7, 0.6})), 10).empty());
  CHECK(!equiregularity_loss_times(sc, covector_from_h(c, cartan_h({0.4, 0.5, 1.1, -0.6})), 10).empty());
  CHECK_THROWS_AS(equiregularity_loss_times(s, covector_from_h(e, engel_h({0, 0, 0})), 1), Error);
}
