#include "carnot/cost_probe.hpp"

#include <cmath>
#include <sstream>

#include "carnot/hamiltonian.hpp"
#include "carnot/oracle.hpp"

namespace carnot {

namespace {

struct EndPoint {
  std::vector<double> z;
  Eigen::MatrixXd M;
};

EndPoint flow_to(const FlowSystem& sys, const std::vector<double>& z0, double t, double step) {
  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / step - 1e-9)));
  double dt = t / steps;
  EndPoint e{z0, Eigen::MatrixXd::Identity(sys.dim(), sys.dim())};
  for (int s = 0; s < steps; ++s) rk4_step(sys, e.z, dt, &e.M);
  return e;
}

std::vector<double> final_control(const GroupModel& m, const std::vector<double>& z) {
  Covector c = covector_from_state(m, z);
  return {c.h[0], c.h[1]};
}

}  // namespace

ShootingSolve shoot(const GroupModel& m, const std::vector<double>& base,
                    const std::vector<double>& target, double t, std::vector<double> p,
                    const CostProbeOptions& opt) {
  FlowSystem sys(m);
  const int n = m.n;
  auto residual = [&](const std::vector<double>& pp, EndPoint* out) {
    std::vector<double> z(base);
    z.insert(z.end(), pp.begin(), pp.end());
    EndPoint e = flow_to(sys, z, t, opt.integrator_step);
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r(i) = e.z[i] - target[i];
    if (out) *out = std::move(e);
    return r;
  };
  ShootingSolve s;
  s.base = base;
  EndPoint e;
  Eigen::VectorXd r = residual(p, &e);
  int it = 0;
  for (; it < opt.max_newton && r.norm() > opt.residual_tol; ++it) {
    Eigen::MatrixXd Jxp = e.M.block(0, n, n, n);
    Eigen::VectorXd dp = Jxp.colPivHouseholderQr().solve(-r);
    double lambda = 1;
    bool improved = false;
    for (int k = 0; k < 30; ++k, lambda *= 0.5) {
      std::vector<double> trial(p);
      for (int i = 0; i < n; ++i) trial[i] += lambda * dp(i);
      EndPoint et;
      Eigen::VectorXd rt = residual(trial, &et);
      if (rt.norm() < r.norm()) {
        p = std::move(trial);
        r = rt;
        e = std::move(et);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  s.p = p;
  s.residual = r.norm();
  s.iterations = it;
  if (!(s.residual <= opt.residual_tol)) {
    std::ostringstream msg;
    msg << "shooting did not converge: residual " << s.residual << " after " << it << " iterations";
    throw Error(ErrorCode::ShootingDiverged, msg.str());
  }
  return s;
}

CostProbe cost_hessian_probe(const GroupModel& m, const std::vector<mpq_class>& hq, double t,
                             const CostProbeOptions& opt) {
  const int n = m.n;
  ExactOracle oracle(m);
  std::vector<mpq_class> Ea = oracle.E_at(oracle.na(), hq);
  std::vector<double> h;
  for (const auto& v : hq) h.push_back(to_double(v));
  FlowSystem sys(m);
  Covector l0 = covector_from_h(m, h);

  CostProbe out;
  out.t = t;
  out.h_base = opt.h_base > 0 ? opt.h_base : t / 100;
  std::vector<double> va(n), vb(n);
  std::vector<double> hv = flow_rhs(sys, l0);
  for (int i = 0; i < n; ++i) {
    va[i] = -to_double(Ea[i]);
    vb[i] = hv[i];
  }
  out.dirs = {va, vb};

  EndPoint g = flow_to(sys, l0.state(), t, opt.integrator_step);
  out.target.assign(g.z.begin(), g.z.begin() + n);
  std::vector<double> u0 = final_control(m, g.z);

  auto cdot = [&](const std::vector<double>& x) {
    ShootingSolve s = shoot(m, x, out.target, t, l0.p, opt);
    std::vector<double> z(x);
    z.insert(z.end(), s.p.begin(), s.p.end());
    std::vector<double> u = final_control(m, flow_to(sys, z, t, opt.integrator_step).z);
    out.max_residual = std::max(out.max_residual, s.residual);
    out.solves.push_back(std::move(s));
    double du = (u[0] - u0[0]) * (u[0] - u0[0]) + (u[1] - u0[1]) * (u[1] - u0[1]);
    return 0.5 * du - 0.5 * (u0[0] * u0[0] + u0[1] * u0[1]);
  };
  const double eps = out.h_base;
  auto at = [&](double a, double b) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = eps * (a * va[i] + b * vb[i]);
    return cdot(x);
  };
  double f0 = at(0, 0);
  auto second = [&](double a, double b) {
    double fp = at(a, b), fm = at(-a, -b);
    double even = fp + fm - 2 * f0;
    if (std::abs(fp - fm) > 0.5 * std::abs(even))
      throw Error(ErrorCode::StepUnbalanced, "cost probe: central difference dominated by its odd part");
    return even / (eps * eps);
  };
  double daa = second(1, 0), dbb = second(0, 1);
  double dsum = second(1, 1);
  double dab = 0.5 * (dsum - daa - dbb);
  out.Q << daa, dab, dab, dbb;
  return out;
}

}  // namespace carnot
