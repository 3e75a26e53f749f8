#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "carnot/hamiltonian.hpp"

namespace carnot {

// Growth vector (dim F^1, dim F^2, ...) of the flag of the geodesic with
// initial covector h. For ample geodesics the sequence stops at n; otherwise
// it lists max_order entries.
struct GrowthReport {
  std::vector<int> growth;
  int step = 0;  // first i with dim F^i = n (0 when never reached)
  bool ample = false;
  bool equiregular = false;
  bool abnormal = false;
  std::optional<std::pair<int, int>> young_diagram;  // row lengths (na, nb)
  std::vector<double> loss_times;  // filled by growth_along_geodesic
};

// Closed form. Goursat: (2,3,...,n) if h1 != 0, (2,3,3,4,4,...,n-1,n-1,n)
// if h1 = 0 and h3 != 0, abnormal otherwise. Cartan: (2,3,4,5) if h3 != 0,
// (2,3,4,4,5) if h3 = 0 and h1 h4 + h2 h5 != 0, abnormal otherwise.
// |value| <= zero_tol counts as zero.
GrowthReport growth_vector_closed_form(const GroupModel& model, const std::vector<double>& h,
                                       double zero_tol = 0.0, int max_order = 0);

// Numerical rank of span{ad_H^k d/dp_j : k < i} at a covector, from exact
// brackets. The fields are left invariant, so they are evaluated at the
// base origin with the same h.
class RankOracle {
 public:
  explicit RankOracle(const GroupModel& model, int max_order = 0);
  int max_order() const { return max_order_; }
  // dim F^i for i = 1..max_order; RankUnstable if the singular value gap
  // around the 1e-8 relative threshold is below 1e2.
  std::vector<int> flag_dims(const std::vector<double>& h) const;
  GrowthReport growth(const std::vector<double>& h) const;

 private:
  GroupModel model_;
  int max_order_;
  // fields_[k][j]: ad_H^k d/dp_j at x = 0, polynomial in p
  std::vector<std::vector<std::vector<CompiledPoly>>> fields_;
};

// Times in [0, T] where the geodesic from lambda0 leaves the equiregular
// set (h1 = 0 for Goursat, n >= 4; h3 = 0 for Cartan), refined by bisection
// to 1e-10 and deduplicated within 1e-9. NotAmple if lambda0 is abnormal.
std::vector<double> equiregularity_loss_times(const FlowSystem& sys, const Covector& lambda0,
                                              double T, double step = 1e-3);

// Rank-oracle growth vector at lambda(t), after integrating the flow from
// lambda0 (given at the base origin), plus the loss times on [0, t] when
// lambda0 is ample.
GrowthReport growth_along_geodesic(const RankOracle& oracle, const FlowSystem& sys,
                                   const Covector& lambda0, double t, double step = 1e-3);

}  // namespace carnot
