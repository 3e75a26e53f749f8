#pragma once

#include <string>
#include <vector>

#include "carnot/frame_fields.hpp"

namespace carnot {

struct PairingCheck {
  std::string name;
  mpq_class expected, actual;
  bool pass = false;
};

struct DarbouxReport {
  std::vector<PairingCheck> checks;
  bool all_pass() const;
};

// Conditions of the frame lemma at a covector: pi_* E^(k) = 0 for k < na,
// sigma(E^(na), E^(na-1)) = 1.
struct LemmaReport {
  std::vector<int> nonvertical_orders;  // k < na with pi_* E^(k) != 0
  mpq_class normalization;              // sigma(E^(na), E^(na-1))
  bool pass = false;
};

struct HigherDiagonalReport {
  std::vector<mpq_class> R;     // R_aa,ii for i = 1..i_max
  bool routes_agree = false;    // unrolled sum equals the step-by-step recursion
  mpq_class structural_residual;  // max |component| of F'_ai - R_ii E_ai + F_a(i+1)
  bool closure_checked = false;   // only when i_max = na
  bool closes = false;            // F'_a,na = R_na,na E_a,na
  DarbouxReport darboux;          // pairings among E_ai, F_ai
};

// Split of a tangent vector at the base origin into frame components:
// v = sum a_i Xhat_i + sum b_i d/dh_i.
struct FrameComponents {
  std::vector<mpq_class> a, b;
};

// Jets at the base origin of the fields ad_H^k E_top, where E_top is the
// closed-form top field of the canonical frame: h1^(2-na) d/dh_n for Goursat
// groups, (h2/h3) d/dh4 - (h1/h3) d/dh5 for the Cartan group. Everything is
// exact; the fiber variables stay symbolic (Laurent in h1 resp. p3).
class ExactOracle {
 public:
  // Keeps ad_H^k E_top for k <= na + 1 + extra_orders. Closing the whole
  // frame (higher_diagonal with i_max = na) needs extra_orders = na - 1.
  explicit ExactOracle(const GroupModel& model, int extra_orders = 0);

  const GroupModel& model() const { return model_; }
  int na() const { return na_; }
  int start_order() const { return order_; }
  int max_k() const { return static_cast<int>(E_.size()) - 1; }

  // ad_H^k E_top as a jet field (valid up to base degree start_order - k).
  const VecField<Jet>& E_jet(int k) const { return E_.at(k); }
  // ad_H^k E_top at (x = 0, h); checks the covector.
  std::vector<mpq_class> E_at(int k, const std::vector<mpq_class>& h) const;

  mpq_class r11(const std::vector<mpq_class>& h) const;
  LemmaReport lemma_conditions(const std::vector<mpq_class>& h) const;
  DarbouxReport frame_darboux_check(const std::vector<mpq_class>& h) const;
  // Coefficients of E^(i) on d/dh_{n-j}, j = 0..i (Goursat only).
  std::vector<mpq_class> aij_bracket(int i, const std::vector<mpq_class>& h) const;
  HigherDiagonalReport higher_diagonal(int i_max, const std::vector<mpq_class>& h) const;

  FrameComponents frame_components(const std::vector<mpq_class>& v,
                                   const std::vector<mpq_class>& h) const;

  // Unit speed, right length, nonzero pole coordinate.
  void check_covector(const std::vector<mpq_class>& h) const;

 private:
  GroupModel model_;
  CanonicalFields cf_;
  int na_;
  int order_;
  std::vector<VecField<Jet>> E_;
  VecField<Jet> Hjet_;
};

// The closed-form top field as a rational vector field on T*R^n.
VecField<RatFunc> canonical_E_top(const GroupModel& model);

// sigma(ad_H^(na+1) E_top, ad_H^na E_top) at (0, h), one-shot.
mpq_class r11_exact(const GroupModel& model, const std::vector<mpq_class>& h);

// Same quantity computed in the left-invariant frame {Xhat_i, d/dh_i}, where
// coefficients are rational functions of h alone and brackets use the
// structure table instead of the polynomial realization.
mpq_class r11_frame_route(const GroupModel& model, const std::vector<mpq_class>& h);

// Closed forms (a_ii, a_i,i-1, a_i,i-2), where a_ij is the coefficient of
// E^(i) on d/dh_{n-j}, with Hvec acting on functions of h through
// the vertical equations. Entries that do not exist for small i are omitted.
// IndexOutOfRange unless 0 <= i <= n - 3.
std::vector<mpq_class> aij_closed_form(int n, int i, const std::vector<mpq_class>& h);

// d/dt at 0 of M(t)^-1 W(lambda(t)) for W = ad_H^k E_top, by central
// differences with Richardson extrapolation over steps s and s/10, compared
// with ad_H^(k+1) E_top at lambda0. Returns the max abs deviation.
double pullback_derivative_deviation(const ExactOracle& oracle, int k,
                                     const std::vector<double>& h, double s = 1e-3);

}  // namespace carnot
