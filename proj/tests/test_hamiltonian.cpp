#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carnot/hamiltonian.hpp"
#include "carnot/taylor_flow.hpp"

using namespace carnot;

namespace {

void check_vec(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("vertical velocities") {
  GroupModel e = build_group(GroupKind::Goursat, 4);
  FlowSystem se(e);
  check_vec(flow_rhs_h(se, covector_from_h(e, std::vector<double>{0, 1, 0, 0.7})), {0, 0, 0, 0}, 0);
  GroupModel h = build_group(GroupKind::Goursat, 3);
  FlowSystem sh(h);
  check_vec(flow_rhs_h(sh, covector_from_h(h, std::vector<double>{1, 0, 1})), {0, 1, 0}, 0);
  GroupModel c = build_group(GroupKind::Cartan);
  FlowSystem sc(c);
  check_vec(flow_rhs_h(sc, covector_from_h(c, std::vector<double>{1, 0, 1, 0, 0})), {0, 1, 0, 0, 0}, 0);
}

TEST_CASE("straight line in the Heisenberg group") {
  GroupModel h = build_group(GroupKind::Goursat, 3);
  FlowSystem s(h);
  Trajectory tr = integrate_flow(s, covector_from_h(h, std::vector<double>{1, 0, 0}), 1.0);
  check_vec(tr.states.back(), {1, 0, 0, 1, 0, 0}, 1e-12);
}

TEST_CASE("Engel uniform rotation") {
  GroupModel e = build_group(GroupKind::Goursat, 4);
  FlowSystem s(e);
  const double theta0 = 0.3, c = 0.8;
  IntegrateOptions opt;
  opt.sample_every = 100;
  Trajectory tr = integrate_flow(s, covector_from_h(e, engel_h({theta0, c, 0})), 5.0, opt);
  for (size_t i = 0; i < tr.times.size(); ++i) {
    auto h = covector_from_state(e, tr.states[i]).h;
    auto expect = engel_h({theta0 + c * tr.times[i], c, 0});
    check_vec(h, expect, 1e-9);
  }
}

TEST_CASE("conservation and symplecticity over T = 10") {
  for (const char* g : {"goursat:3", "engel", "goursat:6", "cartan"}) {
    CAPTURE(g);
    GroupModel m = build_group(g);
    FlowSystem s(m);
    std::vector<double> h = m.kind == GroupKind::Cartan ? cartan_h({0.4, 0.9, 0.7, -0.5})
                                                        : std::vector<double>{0.6, 0.8, 0.5, -0.3, 0.2, 0.1};
    h.resize(m.n);
    IntegrateOptions opt;
    opt.variational = true;
    opt.sample_every = 1000;
    Trajectory tr = integrate_flow(s, covector_from_h(m, h), 10.0, opt);
    for (const auto& [k, v] : tr.max_drift) {
      CAPTURE(k);
      CHECK(v < 1e-9);
    }
    CHECK(symplectic_defect(tr.M.back()) < 1e-6);
  }
  GroupModel c = build_group(GroupKind::Cartan);
  auto q = conserved_quantities(c, {1, 0, 1, 0, 0});
  CHECK(q.at("E") == doctest::Approx(0.5));
  auto qe = conserved_quantities(build_group("engel"), engel_h({0, 1, 0}));
  CHECK(qe.at("E") == doctest::Approx(0.5));
  // E = c^2/2 - alpha cos(theta - beta) on the Cartan chart
  auto qc = conserved_quantities(c, cartan_h({1.1, 0.4, 0.9, 0.2}));
  CHECK(qc.at("E") == doctest::Approx(0.08 - 0.9 * std::cos(0.9)));
}

TEST_CASE("coarse steps are rejected") {
  GroupModel m = build_group(GroupKind::Cartan);
  FlowSystem s(m);
  IntegrateOptions opt;
  opt.step = 0.5;
  try {
    integrate_flow(s, covector_from_h(m, std::vector<double>{0.6, 0.8, 3, 2, -1}), 20.0, opt);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
  }
}

TEST_CASE("backward flow inverts forward flow") {
  GroupModel m = build_group(GroupKind::Goursat, 5);
  FlowSystem s(m);
  Covector l = covector_from_h(m, std::vector<double>{0.6, 0.8, 0.3, -0.2, 0.5});
  Trajectory fw = integrate_flow(s, l, 2.0);
  Trajectory bw = integrate_flow(s, covector_from_state(m, fw.states.back()), -2.0);
  check_vec(bw.states.back(), l.state(), 1e-11);
}

TEST_CASE("Richardson error estimate is small and honest") {
  GroupModel m = build_group(GroupKind::Goursat, 4);
  FlowSystem s(m);
  IntegrateOptions opt;
  opt.richardson = true;
  opt.step = 1e-2;
  Trajectory tr = integrate_flow(s, covector_from_h(m, engel_h({0.2, 1.0, 0.5})), 2.0, opt);
  CHECK(tr.richardson_error > 0);
  CHECK(tr.richardson_error < 1e-8);
}

TEST_CASE("Taylor series flow matches RK4") {
  GroupModel m = build_group(GroupKind::Cartan);
  std::vector<mpq_class> p{mpq_class(3, 5), mpq_class(4, 5), mpq_class(1, 2), -1, mpq_class(2, 3)};
  PrecisionScope scope(200);
  TaylorFlow tf(m, p, Real("0.5"), 200);
  CHECK(tf.converged());
  auto z = tf.state(Real("0.5"));
  FlowSystem s(m);
  IntegrateOptions opt;
  opt.step = 1e-4;
  opt.variational = true;
  std::vector<double> h;
  for (const auto& q : p) h.push_back(to_double(q));
  Trajectory tr = integrate_flow(s, covector_from_h(m, h), 0.5, opt);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(z[i].convert_to<double>() - tr.states.back()[i]) < 1e-12);
  RealMatrix M = tf.variational(Real("0.5"));
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) CHECK(std::abs(M[i][j].convert_to<double>() - tr.M.back()(i, j)) < 1e-10);
}

TEST_CASE("multiprecision linear solve") {
  PrecisionScope scope(128);
  RealMatrix A{{Real(2), Real(1)}, {Real(1), Real(3)}};
  Real cond;
  auto x = solve_linear(A, {Real(3), Real(5)}, &cond);
  CHECK(abs(x[0] - Real(4) / 5) < Real("1e-35"));
  CHECK(abs(x[1] - Real(7) / 5) < Real("1e-35"));
  CHECK(cond > 1);
  CHECK_THROWS_AS(solve_linear({{Real(1), Real(2)}, {Real(2), Real(4)}}, {Real(1), Real(1)}),
                  std::domain_error);
}

TEST_CASE("trajectory CSV layout") {
  GroupModel e = build_group("engel");
  FlowSystem s(e);
  IntegrateOptions opt;
  opt.sample_every = 500;
  Trajectory tr = integrate_flow(s, covector_from_h(e, engel_h({0, 1, 0.5})), 1.0, opt);
  std::ostringstream os;
  write_trajectory_csv(os, e, tr, "hello");
  std::string out = os.str();
  CHECK(out.rfind("# hello\nt,x1,x2,x3,x4,h1,h2,h3,h4,H,E\n", 0) == 0);
  CHECK(std::count(out.begin(), out.end(), '\n') == 2 + 3);
}
