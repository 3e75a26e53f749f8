#include "carnot/hamiltonian.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "carnot/curvature.hpp"

namespace carnot {

CompiledPoly::CompiledPoly(const Poly& p) {
  start_.push_back(0);
  for (const auto& t : p.terms()) {
    coeffs_.push_back(to_double(t.c));
    for (int v = 0; v < kMaxVars; ++v)
      if (t.m.e[v] != 0) factors_.push_back({v, t.m.e[v]});
    start_.push_back(static_cast<int>(factors_.size()));
  }
}

double CompiledPoly::eval(const double* z) const {
  double s = 0;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    double t = coeffs_[k];
    for (int f = start_[k]; f < start_[k + 1]; ++f) {
      double b = z[factors_[f].first];
      int e = factors_[f].second;
      if (e < 0) {
        b = 1 / b;
        e = -e;
      }
      for (; e > 1; --e) t *= b;
      t *= b;
    }
    s += t;
  }
  return s;
}

FlowSystem::FlowSystem(const GroupModel& model)
    : model_(model), n_(model.n), polys_(flow_polys(model)) {
  for (const auto& r : polys_.rhs) rhs_.emplace_back(r);
  jac_.resize(2 * n_);
  for (int i = 0; i < 2 * n_; ++i)
    for (int j = 0; j < 2 * n_; ++j) {
      jac_[i].emplace_back(polys_.jac[i][j]);
      if (!polys_.jac[i][j].is_zero()) jac_nonzero_.push_back({i, j});
    }
}

void FlowSystem::rhs(const double* z, double* dz) const {
  for (int i = 0; i < 2 * n_; ++i) dz[i] = rhs_[i].eval(z);
}

Eigen::MatrixXd FlowSystem::jacobian(const double* z) const {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
  for (auto [i, j] : jac_nonzero_) J(i, j) = jac_[i][j].eval(z);
  return J;
}

std::vector<double> flow_rhs(const FlowSystem& sys, const Covector& lambda) {
  std::vector<double> z = lambda.state(), dz(z.size());
  sys.rhs(z.data(), dz.data());
  return dz;
}

std::vector<double> flow_rhs_h(const FlowSystem& sys, const Covector& lambda) {
  // h' = (DA . x') p + A p'
  const int n = sys.n();
  std::vector<double> z = lambda.state(), dz(z.size());
  sys.rhs(z.data(), dz.data());
  const GroupModel& m = sys.model();
  std::vector<double> hd(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Poly& a = m.A[i][j];
      if (a.is_zero()) continue;
      double rate = 0;
      for (int k = 0; k < n; ++k) {
        Poly d = a.derivative(k);
        if (!d.is_zero()) rate += d.eval(lambda.base) * dz[k];
      }
      hd[i] += rate * z[n + j] + a.eval(lambda.base) * dz[n + j];
    }
  return hd;
}

void rk4_step(const FlowSystem& sys, std::vector<double>& z, double dt, Eigen::MatrixXd* M) {
  const int d = sys.dim();
  std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
  Eigen::MatrixXd J1, J2, J3, J4, M1, M2, M3, M4;
  sys.rhs(z.data(), k1.data());
  if (M) J1 = sys.jacobian(z.data());
  for (int i = 0; i < d; ++i) tmp[i] = z[i] + 0.5 * dt * k1[i];
  sys.rhs(tmp.data(), k2.data());
  if (M) J2 = sys.jacobian(tmp.data());
  for (int i = 0; i < d; ++i) tmp[i] = z[i] + 0.5 * dt * k2[i];
  sys.rhs(tmp.data(), k3.data());
  if (M) J3 = sys.jacobian(tmp.data());
  for (int i = 0; i < d; ++i) tmp[i] = z[i] + dt * k3[i];
  sys.rhs(tmp.data(), k4.data());
  if (M) J4 = sys.jacobian(tmp.data());
  for (int i = 0; i < d; ++i) z[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  if (M) {
    M1 = J1 * (*M);
    M2 = J2 * (*M + 0.5 * dt * M1);
    M3 = J3 * (*M + 0.5 * dt * M2);
    M4 = J4 * (*M + dt * M3);
    *M += dt / 6.0 * (M1 + 2 * M2 + 2 * M3 + M4);
  }
}

std::map<std::string, double> conserved_quantities(const GroupModel& m, const std::vector<double>& h) {
  std::map<std::string, double> q;
  q["H"] = 0.5 * (h[0] * h[0] + h[1] * h[1]);
  if (m.kind == GroupKind::Cartan) {
    q["h4"] = h[3];
    q["h5"] = h[4];
    q["E"] = energy_cartan(h);
  } else {
    q["h" + std::to_string(m.n)] = h[m.n - 1];
    if (m.is_engel()) q["E"] = energy_engel(h);
  }
  return q;
}

namespace {

std::vector<double> h_of_state(const GroupModel& m, const std::vector<double>& z) {
  const int n = m.n;
  std::vector<double> x(z.begin(), z.begin() + n), h(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m.A[i][j].is_zero()) h[i] += m.A[i][j].eval(x) * z[n + j];
  return h;
}

Trajectory run(const FlowSystem& sys, const Covector& lambda0, double T, const IntegrateOptions& opt,
               double step) {
  const GroupModel& m = sys.model();
  Trajectory tr;
  tr.group = m.name();
  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(T) / step - 1e-9)));
  double dt = T / steps;
  std::vector<double> z = lambda0.state();
  Eigen::MatrixXd M;
  if (opt.variational) M = Eigen::MatrixXd::Identity(sys.dim(), sys.dim());
  auto q0 = conserved_quantities(m, lambda0.h);
  for (auto& [k, v] : q0) tr.max_drift[k] = 0;
  int every = std::max(1, opt.sample_every);
  auto record = [&](double t) {
    tr.times.push_back(t);
    tr.states.push_back(z);
    if (opt.variational) tr.M.push_back(M);
  };
  record(0);
  for (int s = 1; s <= steps; ++s) {
    rk4_step(sys, z, dt, opt.variational ? &M : nullptr);
    auto q = conserved_quantities(m, h_of_state(m, z));
    for (auto& [k, v] : q) tr.max_drift[k] = std::max(tr.max_drift[k], std::abs(v - q0[k]));
    if (s % every == 0 || s == steps) record(s * dt);
  }
  return tr;
}

}  // namespace

Trajectory integrate_flow(const FlowSystem& sys, const Covector& lambda0, double T,
                          const IntegrateOptions& opt) {
  if (!(opt.step > 0)) throw Error(ErrorCode::StepTooLarge, "integration step must be positive");
  Trajectory tr = run(sys, lambda0, T, opt, opt.step);
  for (auto& [k, v] : tr.max_drift)
    if (!(v <= opt.drift_bound)) {
      std::ostringstream msg;
      msg << "conserved quantity " << k << " drifted by " << v << " > " << opt.drift_bound
          << "; reduce the step";
      throw Error(ErrorCode::StepTooLarge, msg.str());
    }
  if (opt.richardson) {
    IntegrateOptions half = opt;
    half.variational = false;
    Trajectory fine = run(sys, lambda0, T, half, opt.step / 2);
    double e = 0;
    const auto& a = tr.states.back();
    const auto& b = fine.states.back();
    for (size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    tr.richardson_error = e / 15.0;
  }
  return tr;
}

Eigen::MatrixXd symplectic_matrix(int n) {
  // sigma(v, w) = v^T J w with sigma = sum v_p w_x - v_x w_p
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(n + i, i) = 1;
    J(i, n + i) = -1;
  }
  return J;
}

double symplectic_defect(const Eigen::MatrixXd& M) {
  Eigen::MatrixXd J = symplectic_matrix(static_cast<int>(M.rows() / 2));
  return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

void write_trajectory_csv(std::ostream& os, const GroupModel& m, const Trajectory& tr,
                          const std::string& header_comment) {
  const int n = m.n;
  bool has_e = m.kind == GroupKind::Cartan || m.is_engel();
  if (!header_comment.empty()) os << "# " << header_comment << "\n";
  os << "t";
  for (int i = 0; i < n; ++i) os << ",x" << i + 1;
  for (int i = 0; i < n; ++i) os << ",h" << i + 1;
  os << ",H";
  if (has_e) os << ",E";
  os << "\n";
  os << std::setprecision(17);
  for (size_t k = 0; k < tr.times.size(); ++k) {
    const auto& z = tr.states[k];
    auto h = h_of_state(m, z);
    os << tr.times[k];
    for (int i = 0; i < n; ++i) os << "," << z[i];
    for (int i = 0; i < n; ++i) os << "," << h[i];
    os << "," << 0.5 * (h[0] * h[0] + h[1] * h[1]);
    if (has_e) os << "," << (m.kind == GroupKind::Cartan ? energy_cartan(h) : energy_engel(h));
    os << "\n";
  }
}

}  // namespace carnot
