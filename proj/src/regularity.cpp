#include "carnot/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace carnot {

namespace {

int default_order(const GroupModel& m) { return 2 * m.n; }

void fill_ample(GrowthReport& g, const GroupModel& m, std::vector<int> seq) {
  g.growth = std::move(seq);
  g.step = static_cast<int>(g.growth.size());
  g.ample = true;
  g.young_diagram = std::make_pair(m.na(), 1);
}

}  // namespace

GrowthReport growth_vector_closed_form(const GroupModel& m, const std::vector<double>& h,
                                       double zero_tol, int max_order) {
  if (static_cast<int>(h.size()) != m.n)
    throw Error(ErrorCode::DimensionMismatch, "growth vector: covector has wrong length");
  if (max_order <= 0) max_order = default_order(m);
  auto zero = [&](double v) { return std::abs(v) <= zero_tol; };
  GrowthReport g;
  const int n = m.n;
  if (m.kind == GroupKind::Goursat) {
    if (n == 3) {
      fill_ample(g, m, {2, 3});
      g.equiregular = true;
      return g;
    }
    if (!zero(h[0])) {
      std::vector<int> seq;
      for (int k = 2; k <= n; ++k) seq.push_back(k);
      fill_ample(g, m, seq);
      g.equiregular = true;
      return g;
    }
    if (!zero(h[2])) {
      std::vector<int> seq{2};
      for (int k = 3; k < n; ++k) {
        seq.push_back(k);
        seq.push_back(k);
      }
      seq.push_back(n);
      fill_ample(g, m, seq);
      return g;
    }
    g.abnormal = true;
    g.growth.assign(max_order, 3);
    g.growth[0] = 2;
    return g;
  }
  if (!zero(h[2])) {
    fill_ample(g, m, {2, 3, 4, 5});
    g.equiregular = true;
    return g;
  }
  if (!zero(h[0] * h[3] + h[1] * h[4])) {
    fill_ample(g, m, {2, 3, 4, 4, 5});
    return g;
  }
  g.abnormal = true;
  g.growth.assign(max_order, 4);
  g.growth[0] = 2;
  if (max_order > 1) g.growth[1] = 3;
  return g;
}

RankOracle::RankOracle(const GroupModel& m, int max_order)
    : model_(m), max_order_(max_order > 0 ? max_order : default_order(m)) {
  const int n = m.n;
  CanonicalFields cf = canonical_fields(m);
  // ad_H^k V at x = 0 needs the k-jet of V; start every field at order max_order.
  VecField<Jet> H = to_jet(cf.Hvec, max_order_);
  fields_.resize(max_order_ + 1);
  for (int j = 0; j < n; ++j) {
    VecField<Jet> V(n);
    for (int k = 0; k < 2 * n; ++k) V.c[k] = Jet(Poly(), n, max_order_);
    V.p(j) = Jet(Poly(1), n, max_order_);
    for (int k = 0; k <= max_order_; ++k) {
      std::vector<CompiledPoly> comp;
      for (int c = 0; c < 2 * n; ++c) comp.emplace_back(V.c[c].at_origin());
      fields_[k].push_back(std::move(comp));
      if (k < max_order_) V = lie_bracket(H, V);
    }
  }
}

std::vector<int> RankOracle::flag_dims(const std::vector<double>& h) const {
  const int n = model_.n;
  if (static_cast<int>(h.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "rank oracle: covector has wrong length");
  // A(0) = I, so p = h at the base origin
  std::vector<double> z(2 * n, 0.0);
  for (int i = 0; i < n; ++i) z[n + i] = h[i];
  std::vector<Eigen::VectorXd> cols;
  std::vector<int> dims;
  for (int k = 0; k <= max_order_; ++k) {
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd v(2 * n);
      for (int c = 0; c < 2 * n; ++c) v(c) = fields_[k][j][c].eval(z.data());
      double nv = v.norm();
      if (nv > 1e-300) cols.push_back(v / nv);
    }
    if (k == 0) continue;
    Eigen::MatrixXd M(2 * n, cols.size());
    for (size_t c = 0; c < cols.size(); ++c) M.col(c) = cols[c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    int rank = 0;
    double kept_min = 0, dropped_max = 0;
    for (int i = 0; i < s.size(); ++i) {
      if (s(i) > 1e-12 * smax) {
        ++rank;
        kept_min = s(i);
      } else {
        dropped_max = std::max(dropped_max, s(i));
      }
    }
    if (dropped_max > 0 && kept_min / dropped_max < 1e2) {
      std::ostringstream msg;
      msg << "numerical rank unstable at order " << k << ": singular value gap "
          << kept_min / dropped_max;
      throw Error(ErrorCode::RankUnstable, msg.str());
    }
    dims.push_back(rank - n);
  }
  return dims;
}

GrowthReport RankOracle::growth(const std::vector<double>& h) const {
  std::vector<int> d = flag_dims(h);
  GrowthReport g;
  const int n = model_.n;
  auto it = std::find(d.begin(), d.end(), n);
  if (it == d.end()) {
    g.abnormal = true;
    g.growth = d;
    return g;
  }
  fill_ample(g, model_, std::vector<int>(d.begin(), it + 1));
  // equiregular geodesics gain one dimension per order after the first
  g.equiregular = true;
  for (size_t i = 1; i < g.growth.size(); ++i)
    if (g.growth[i] != g.growth[i - 1] + 1) g.equiregular = false;
  return g;
}

namespace {

double singular_component(const GroupModel& m, const std::vector<double>& h) {
  return m.kind == GroupKind::Cartan ? h[2] : h[0];
}

}  // namespace

std::vector<double> equiregularity_loss_times(const FlowSystem& sys, const Covector& lambda0,
                                              double T, double step) {
  const GroupModel& m = sys.model();
  GrowthReport g0 = growth_vector_closed_form(m, lambda0.h);
  if (!g0.ample) throw Error(ErrorCode::NotAmple, "loss times: the geodesic is abnormal");
  std::vector<double> out;
  if (m.kind == GroupKind::Goursat && m.n == 3) return out;

  auto f_of = [&](const std::vector<double>& z) {
    return singular_component(m, covector_from_state(m, z).h);
  };
  int steps = std::max(1, static_cast<int>(std::ceil(T / step - 1e-9)));
  double dt = T / steps;
  std::vector<double> z = lambda0.state();
  double f0 = f_of(z);
  auto push = [&](double t) {
    if (out.empty() || t - out.back() > 1e-9) out.push_back(t);
  };
  if (f0 == 0) push(0);
  for (int s = 0; s < steps; ++s) {
    std::vector<double> z1 = z;
    rk4_step(sys, z1, dt);
    double f1 = f_of(z1);
    if (f1 == 0) {
      push((s + 1) * dt);
    } else if (f0 != 0 && (f0 < 0) != (f1 < 0)) {
      // bisection on the sub-step length from the left grid point
      double lo = 0, hi = dt, flo = f0;
      while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        std::vector<double> zm = z;
        rk4_step(sys, zm, mid);
        double fm = f_of(zm);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      push(s * dt + 0.5 * (lo + hi));
    }
    z = std::move(z1);
    f0 = f1;
  }
  return out;
}

GrowthReport growth_along_geodesic(const RankOracle& oracle, const FlowSystem& sys,
                                   const Covector& lambda0, double t, double step) {
  std::vector<double> h = lambda0.h;
  if (t != 0) {
    IntegrateOptions opt;
    opt.step = step;
    opt.sample_every = std::max(1, static_cast<int>(std::abs(t) / step));
    Trajectory tr = integrate_flow(sys, lambda0, t, opt);
    h = covector_from_state(sys.model(), tr.states.back()).h;
  }
  GrowthReport g = oracle.growth(h);
  if (growth_vector_closed_form(sys.model(), lambda0.h).ample && t > 0) {
    g.loss_times = equiregularity_loss_times(sys, lambda0, t, step);
    // a zero landing on t itself shows up in the growth but not as a sign change
    if (!g.equiregular && (g.loss_times.empty() || t - g.loss_times.back() > 1e-6))
      g.loss_times.push_back(t);
  }
  return g;
}

}  // namespace carnot
