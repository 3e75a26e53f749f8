#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "carnot/frame_fields.hpp"

namespace carnot {

// Polynomial flattened for fast floating-point evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);
  double eval(const double* z) const;
  bool is_zero() const { return coeffs_.empty(); }

 private:
  std::vector<double> coeffs_;
  std::vector<int> start_;                   // offsets into factors_, size terms + 1
  std::vector<std::pair<int, int>> factors_;  // (variable, exponent)
};

// Geodesic flow z' = Hvec(z) on z = (x, p) with its exact Jacobian.
class FlowSystem {
 public:
  explicit FlowSystem(const GroupModel& model);
  int dim() const { return 2 * n_; }
  int n() const { return n_; }
  void rhs(const double* z, double* dz) const;
  Eigen::MatrixXd jacobian(const double* z) const;
  const FlowPolys& polys() const { return polys_; }
  const GroupModel& model() const { return model_; }

 private:
  GroupModel model_;
  int n_;
  FlowPolys polys_;
  std::vector<CompiledPoly> rhs_;
  std::vector<std::vector<CompiledPoly>> jac_;
  std::vector<std::pair<int, int>> jac_nonzero_;
};

// Right-hand side at lambda in canonical coordinates.
std::vector<double> flow_rhs(const FlowSystem& sys, const Covector& lambda);
// The same velocity expressed on the fiber coordinates h (d/dt h_i).
std::vector<double> flow_rhs_h(const FlowSystem& sys, const Covector& lambda);

struct IntegrateOptions {
  double step = 1e-3;
  bool variational = false;
  double drift_bound = 1e-8;  // StepTooLarge when a conserved quantity drifts further
  int sample_every = 1;       // keep one sample per this many steps
  bool richardson = false;    // also estimate the error by step halving
};

struct Trajectory {
  std::string group;
  std::vector<double> times;
  std::vector<std::vector<double>> states;  // (x, p)
  std::vector<Eigen::MatrixXd> M;          // variational matrices, when requested
  std::map<std::string, double> max_drift;  // per conserved quantity
  double richardson_error = 0;
};

// Fixed-step classical RK4 on [0, T] (T may be negative for backward flow).
Trajectory integrate_flow(const FlowSystem& sys, const Covector& lambda0, double T,
                          const IntegrateOptions& opt = {});

// One RK4 step of size dt on the state and, if M is given, on M' = J(z) M.
void rk4_step(const FlowSystem& sys, std::vector<double>& z, double dt, Eigen::MatrixXd* M = nullptr);

// H and the other first integrals: h_n (Goursat), plus E for Engel;
// h4, h5 and E for Cartan.
std::map<std::string, double> conserved_quantities(const GroupModel& model,
                                                   const std::vector<double>& h);

// max |M^T J M - J| entry, J the canonical symplectic matrix of sigma.
double symplectic_defect(const Eigen::MatrixXd& M);
Eigen::MatrixXd symplectic_matrix(int n);

// CSV columns t, x1..xn, h1..hn, H[, E]; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const GroupModel& model, const Trajectory& traj,
                          const std::string& header_comment = "");

}  // namespace carnot
