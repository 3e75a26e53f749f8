#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <vector>

#include "carnot/frame_fields.hpp"

namespace carnot {

using Real = boost::multiprecision::mpfr_float;

// Sets the default MPFR precision (in bits) for the enclosing scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
};

Real to_real(const mpq_class& q);

using RealMatrix = std::vector<std::vector<Real>>;

// Power series in t of the geodesic flow and its variational matrix, from
// the base origin with rational momenta p0 (= h there). Coefficients are
// generated by the recurrence z_(k+1) = [f(z)]_k / (k+1), with products of
// series formed incrementally for every monomial of the right-hand side and
// of its Jacobian.
class TaylorFlow {
 public:
  // Adds terms until the last ones fall below 2^-bits at t_max (cap max_terms).
  TaylorFlow(const GroupModel& model, const std::vector<mpq_class>& p0, const Real& t_max,
             unsigned bits, int max_terms = 600);

  int terms() const { return static_cast<int>(z_.size()); }
  bool converged() const { return converged_; }
  std::vector<Real> state(const Real& t) const;
  RealMatrix variational(const Real& t) const;

 private:
  int dim_;
  bool converged_ = false;
  std::vector<std::vector<Real>> z_;  // z_[k][i]
  std::vector<RealMatrix> M_;         // M_[k]
};

// Solves A x = b by Gaussian elimination with partial pivoting; also returns
// the infinity-norm condition number of A (through the explicit inverse).
std::vector<Real> solve_linear(RealMatrix A, std::vector<Real> b, Real* condition = nullptr);

}  // namespace carnot
