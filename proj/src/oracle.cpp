#include "carnot/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "carnot/hamiltonian.hpp"

namespace carnot {

bool DarbouxReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

std::vector<mpq_class> origin_point(int n, const std::vector<mpq_class>& h) {
  std::vector<mpq_class> z(2 * n);
  for (int i = 0; i < n; ++i) z[n + i] = h[i];
  return z;
}

mpq_class eval_scalar(const Jet& f, int n, const std::vector<mpq_class>& h) {
  if (f.order() < 0) throw std::logic_error("jet truncated below order 0");
  return f.at_origin().eval(origin_point(n, h));
}

mpq_class max_abs(const std::vector<mpq_class>& v) {
  mpq_class m = 0;
  for (const auto& x : v) m = std::max<mpq_class>(m, abs(x));
  return m;
}

void add_pairing(DarbouxReport& rep, const std::string& name, const std::vector<mpq_class>& v,
                 const std::vector<mpq_class>& w, int expected) {
  PairingCheck c;
  c.name = name;
  c.expected = expected;
  c.actual = sigma_pair(v, w);
  c.pass = c.actual == c.expected;
  rep.checks.push_back(std::move(c));
}

}  // namespace

VecField<RatFunc> canonical_E_top(const GroupModel& m) {
  CanonicalFields cf = canonical_fields(m);
  const int n = m.n;
  VecField<RatFunc> dh_last = to_ratfunc(cf.dh[n - 1]);
  if (m.kind == GroupKind::Goursat) {
    int N = m.na();
    RatFunc f = N <= 2 ? RatFunc(Poly::var(n, 2 - N)) : RatFunc(Poly(1), Poly::var(n, N - 2));
    return f * dh_last;
  }
  RatFunc h3(cf.h[2]);
  return RatFunc(cf.h[1]) / h3 * to_ratfunc(cf.dh[3]) - RatFunc(cf.h[0]) / h3 * dh_last;
}

ExactOracle::ExactOracle(const GroupModel& m, int extra_orders)
    : model_(m), cf_(canonical_fields(m)), na_(m.na()) {
  const int n = m.n;
  order_ = na_ + 1 + std::max(0, extra_orders);
  Hjet_ = to_jet(cf_.Hvec, order_);
  VecField<Jet> top;
  if (m.kind == GroupKind::Goursat) {
    // h1 = p1 exactly, so the prefactor is a Laurent monomial
    Jet pre(Poly::monomial(Monomial::var(n, 2 - na_), mpq_class(1)), n);
    top = pre * to_jet(cf_.dh[n - 1], order_);
  } else {
    Jet inv_h3 = Jet(cf_.h[2], n, order_).inverse();
    Jet c4 = Jet(cf_.h[1], n, order_) * inv_h3;
    Jet c5 = -(Jet(cf_.h[0], n, order_) * inv_h3);
    top = c4 * to_jet(cf_.dh[3], order_) + c5 * to_jet(cf_.dh[4], order_);
  }
  E_.push_back(top);
  for (int k = 1; k <= order_; ++k) E_.push_back(lie_bracket(Hjet_, E_.back()));
}

void ExactOracle::check_covector(const std::vector<mpq_class>& h) const {
  if (static_cast<int>(h.size()) != model_.n)
    throw Error(ErrorCode::DimensionMismatch, "covector length does not match the group");
  if (h[0] * h[0] + h[1] * h[1] != 1)
    throw Error(ErrorCode::NotUnitSpeed, "exact oracle needs h1^2 + h2^2 = 1 exactly");
  if (model_.kind == GroupKind::Cartan && h[2] == 0)
    throw Error(ErrorCode::SingularCovector, "h3 = 0: the frame has a pole");
  if (model_.kind == GroupKind::Goursat && model_.n > 3 && h[0] == 0)
    throw Error(ErrorCode::SingularCovector, "h1 = 0: the frame has a pole");
}

std::vector<mpq_class> ExactOracle::E_at(int k, const std::vector<mpq_class>& h) const {
  check_covector(h);
  if (k < 0 || k > max_k()) throw Error(ErrorCode::IndexOutOfRange, "derivative order out of range");
  return eval_at_origin(E_[k], h);
}

mpq_class ExactOracle::r11(const std::vector<mpq_class>& h) const {
  return sigma_pair(E_at(na_ + 1, h), E_at(na_, h));
}

LemmaReport ExactOracle::lemma_conditions(const std::vector<mpq_class>& h) const {
  LemmaReport rep;
  for (int k = 0; k < na_; ++k) {
    auto v = E_at(k, h);
    for (int i = 0; i < model_.n; ++i)
      if (v[i] != 0) {
        rep.nonvertical_orders.push_back(k);
        break;
      }
  }
  rep.normalization = sigma_pair(E_at(na_, h), E_at(na_ - 1, h));
  rep.pass = rep.nonvertical_orders.empty() && rep.normalization == 1;
  return rep;
}

DarbouxReport ExactOracle::frame_darboux_check(const std::vector<mpq_class>& h) const {
  check_covector(h);
  const int n = model_.n;
  std::vector<std::vector<mpq_class>> Ea(na_ + 1);
  for (int i = 1; i <= na_; ++i) Ea[i] = E_at(na_ - i, h);
  std::vector<mpq_class> Fa1 = E_at(na_, h);
  for (auto& x : Fa1) x = -x;
  auto pt = origin_point(n, h);
  std::vector<mpq_class> Eb = eval_field(cf_.euler, pt), Fb = eval_field(cf_.Hvec, pt);

  DarbouxReport rep;
  auto ea = [](int i) { return "E_a" + std::to_string(i); };
  for (int i = 1; i <= na_; ++i) {
    for (int j = i + 1; j <= na_; ++j) add_pairing(rep, ea(i) + "," + ea(j), Ea[i], Ea[j], 0);
    add_pairing(rep, ea(i) + ",E_b1", Ea[i], Eb, 0);
    add_pairing(rep, ea(i) + ",F_a1", Ea[i], Fa1, i == 1 ? 1 : 0);
    add_pairing(rep, ea(i) + ",F_b1", Ea[i], Fb, 0);
  }
  add_pairing(rep, "E_b1,F_a1", Eb, Fa1, 0);
  add_pairing(rep, "E_b1,F_b1", Eb, Fb, 1);
  add_pairing(rep, "F_a1,F_b1", Fa1, Fb, 0);
  return rep;
}

FrameComponents ExactOracle::frame_components(const std::vector<mpq_class>& v,
                                              const std::vector<mpq_class>& h) const {
  const int n = model_.n;
  auto pt = origin_point(n, h);
  FrameComponents fc;
  // X_i(0) = d/dx_i, so the horizontal coefficients are the x-part of v
  fc.a.assign(v.begin(), v.begin() + n);
  fc.b.assign(v.begin() + n, v.end());
  for (int i = 0; i < n; ++i) {
    if (fc.a[i] == 0) continue;
    auto xh = eval_field(cf_.Xhat[i], pt);
    for (int r = 0; r < n; ++r) fc.b[r] -= fc.a[i] * xh[n + r];
  }
  return fc;
}

std::vector<mpq_class> ExactOracle::aij_bracket(int i, const std::vector<mpq_class>& h) const {
  if (model_.kind != GroupKind::Goursat)
    throw Error(ErrorCode::UnsupportedGroup, "a_ij coefficients are defined for Goursat groups");
  const int n = model_.n;
  if (i < 0 || i > n - 3) throw Error(ErrorCode::IndexOutOfRange, "a_ij needs 0 <= i <= n - 3");
  FrameComponents fc = frame_components(E_at(i, h), h);
  std::vector<mpq_class> out;
  for (int j = 0; j <= i; ++j) out.push_back(fc.b[n - 1 - j]);
  return out;
}

HigherDiagonalReport ExactOracle::higher_diagonal(int i_max, const std::vector<mpq_class>& h) const {
  check_covector(h);
  if (i_max < 1 || i_max > na_)
    throw Error(ErrorCode::IndexOutOfRange, "higher diagonal needs 1 <= i_max <= na");
  if (order_ < na_ + i_max)
    throw Error(ErrorCode::IndexOutOfRange,
                "oracle jets too short for i_max; construct with extra_orders >= i_max - 1");
  const int n = model_.n;
  auto at = [&](const VecField<Jet>& v) { return eval_at_origin(v, h); };
  std::vector<const VecField<Jet>*> Ea(na_ + 1);
  for (int i = 1; i <= na_; ++i) Ea[i] = &E_[na_ - i];

  // Route 1: F_a(i+1) = R_ii E_ai - [H, F_ai].
  std::vector<VecField<Jet>> F(i_max + 2);
  std::vector<Jet> Rj(i_max + 1);
  F[1] = -E_[na_];
  VecField<Jet> dF_last;
  for (int i = 1; i <= i_max; ++i) {
    VecField<Jet> dF = lie_bracket(Hjet_, F[i]);
    Rj[i] = sigma_field(dF, F[i]);
    if (i < na_) F[i + 1] = Rj[i] * *Ea[i] - dF;
    if (i == i_max) dF_last = dF;
  }

  // Route 2: F_ai = sum_{j=1}^{i-1} (-1)^(j-1) ad^(j-1)(R_{i-j} E_a(i-j)) + (-1)^(i-1) ad^(i-1) F_a1,
  // with each R_kk recomputed from the F_ak of this route.
  std::vector<VecField<Jet>> G(i_max + 2);
  std::vector<Jet> Rg(i_max + 1);
  std::vector<VecField<Jet>> adF1{-E_[na_]};  // ad^j F_a1
  int top = std::min(i_max + 1, na_);
  for (int i = 1; i <= top; ++i) {
    while (static_cast<int>(adF1.size()) < i) adF1.push_back(lie_bracket(Hjet_, adF1.back()));
    VecField<Jet> g = (i % 2 == 1) ? adF1[i - 1] : -adF1[i - 1];
    for (int j = 1; j <= i - 1; ++j) {
      VecField<Jet> term = Rg[i - j] * *Ea[i - j];
      for (int r = 0; r < j - 1; ++r) term = lie_bracket(Hjet_, term);
      g = (j % 2 == 1) ? g + term : g - term;
    }
    G[i] = std::move(g);
    if (i <= i_max) Rg[i] = sigma_field(lie_bracket(Hjet_, G[i]), G[i]);
  }

  HigherDiagonalReport rep;
  rep.routes_agree = true;
  for (int i = 1; i <= i_max; ++i) {
    mpq_class r1 = eval_scalar(Rj[i], n, h), r2 = eval_scalar(Rg[i], n, h);
    rep.R.push_back(r1);
    if (r1 != r2 || at(F[i]) != at(G[i])) rep.routes_agree = false;
  }
  // structural equations on route 2: G'_i - R_ii E_ai + G_(i+1) = 0
  rep.structural_residual = 0;
  for (int i = 1; i <= std::min(i_max, na_ - 1); ++i) {
    VecField<Jet> res = lie_bracket(Hjet_, G[i]) - Rg[i] * *Ea[i] + G[i + 1];
    rep.structural_residual = std::max(rep.structural_residual, max_abs(at(res)));
  }
  if (i_max == na_) {
    rep.closure_checked = true;
    VecField<Jet> res = dF_last - Rj[na_] * *Ea[na_];
    rep.closes = max_abs(at(res)) == 0;
  }

  auto pt = origin_point(n, h);
  std::vector<mpq_class> Eb = eval_field(cf_.euler, pt), Fb = eval_field(cf_.Hvec, pt);
  std::vector<std::vector<mpq_class>> Ev(na_ + 1), Fv(i_max + 1);
  for (int i = 1; i <= na_; ++i) Ev[i] = at(*Ea[i]);
  for (int i = 1; i <= i_max; ++i) Fv[i] = at(F[i]);
  auto nm = [](const char* s, int i) { return std::string(s) + std::to_string(i); };
  for (int i = 1; i <= na_; ++i)
    for (int j = 1; j <= i_max; ++j)
      add_pairing(rep.darboux, nm("E_a", i) + "," + nm("F_a", j), Ev[i], Fv[j], i == j ? 1 : 0);
  for (int i = 1; i <= i_max; ++i) {
    for (int j = i + 1; j <= i_max; ++j)
      add_pairing(rep.darboux, nm("F_a", i) + "," + nm("F_a", j), Fv[i], Fv[j], 0);
    add_pairing(rep.darboux, nm("F_a", i) + ",E_b1", Fv[i], Eb, 0);
    add_pairing(rep.darboux, nm("F_a", i) + ",F_b1", Fv[i], Fb, 0);
  }
  return rep;
}

mpq_class r11_exact(const GroupModel& m, const std::vector<mpq_class>& h) {
  return ExactOracle(m).r11(h);
}

namespace {

// sum a_i Xhat_i + b_i d/dh_i with coefficients in h1..hn
struct FrameField {
  std::vector<RatFunc> a, b;
};

RatFunc apply_vertical(const FrameField& f, const RatFunc& g) {
  RatFunc r;
  for (size_t i = 0; i < f.b.size(); ++i)
    if (!f.b[i].is_zero()) r += f.b[i] * g.derivative(static_cast<int>(i));
  return r;
}

FrameField frame_bracket(const GroupModel& m, const FrameField& f, const FrameField& g) {
  const int n = m.n;
  FrameField r{std::vector<RatFunc>(n), std::vector<RatFunc>(n)};
  for (int i = 0; i < n; ++i) {
    if (f.a[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (g.a[j].is_zero()) continue;
      for (const auto& e : m.structure[i][j]) r.a[e.k] += RatFunc(e.c) * f.a[i] * g.a[j];
    }
  }
  for (int j = 0; j < n; ++j) {
    r.a[j] += apply_vertical(f, g.a[j]) - apply_vertical(g, f.a[j]);
    r.b[j] += apply_vertical(f, g.b[j]) - apply_vertical(g, f.b[j]);
  }
  return r;
}

// sigma at a point: sigma(d/dh_i, Xhat_j) = delta_ij, sigma(Xhat_i, Xhat_j) = -<lambda, [X_i, X_j]>
mpq_class frame_sigma(const GroupModel& m, const std::vector<mpq_class>& fa,
                      const std::vector<mpq_class>& fb, const std::vector<mpq_class>& ga,
                      const std::vector<mpq_class>& gb, const std::vector<mpq_class>& h) {
  const int n = m.n;
  mpq_class s = 0;
  for (int i = 0; i < n; ++i) {
    s += fb[i] * ga[i] - fa[i] * gb[i];
    for (int j = 0; j < n; ++j)
      for (const auto& e : m.structure[i][j]) s -= fa[i] * ga[j] * e.c * h[e.k];
  }
  return s;
}

}  // namespace

mpq_class r11_frame_route(const GroupModel& m, const std::vector<mpq_class>& h) {
  ExactOracle(m, 0).check_covector(h);
  const int n = m.n;
  const int N = m.na();
  auto hv = [](int i) { return RatFunc(Poly::var(i)); };
  FrameField H{std::vector<RatFunc>(n), std::vector<RatFunc>(n)};
  H.a[0] = hv(0);
  H.a[1] = hv(1);
  // h_i' = sum_{j=1,2} h_j <lambda, [X_j, X_i]>
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& e : m.structure[j][i]) H.b[i] += RatFunc(e.c) * hv(j) * hv(e.k);
  FrameField E{std::vector<RatFunc>(n), std::vector<RatFunc>(n)};
  if (m.kind == GroupKind::Goursat) {
    E.b[n - 1] = N <= 2 ? RatFunc(Poly::var(0, 2 - N)) : RatFunc(Poly(1), Poly::var(0, N - 2));
  } else {
    E.b[3] = hv(1) / hv(2);
    E.b[4] = -(hv(0) / hv(2));
  }
  auto at = [&](const std::vector<RatFunc>& c) {
    std::vector<mpq_class> v;
    for (const auto& f : c) v.push_back(f.eval(h));
    return v;
  };
  for (int k = 0; k < N; ++k) E = frame_bracket(m, H, E);
  FrameField E1 = frame_bracket(m, H, E);
  return frame_sigma(m, at(E1.a), at(E1.b), at(E.a), at(E.b), h);
}

std::vector<mpq_class> aij_closed_form(int n, int i, const std::vector<mpq_class>& h) {
  if (n < 3 || i < 0 || i > n - 3) throw Error(ErrorCode::IndexOutOfRange, "a_ij needs 0 <= i <= n - 3");
  if (static_cast<int>(h.size()) != n) throw Error(ErrorCode::DimensionMismatch, "covector length");
  if (n > 3 && h[0] == 0) throw Error(ErrorCode::SingularCovector, "h1 = 0: the frame has a pole");
  const int N = n - 1;
  // functions of h1..hn; Hvec acts through h1' = -h2 h3, h_i' = h1 h_(i+1), h_n' = 0
  std::vector<RatFunc> hdot(n);
  hdot[0] = RatFunc(-(Poly::var(1) * Poly::var(2)));
  for (int k = 1; k < n - 1; ++k) hdot[k] = RatFunc(Poly::var(0) * Poly::var(k + 1));
  auto Hd = [&](const RatFunc& f) {
    RatFunc r;
    for (int k = 0; k < n; ++k)
      if (!hdot[k].is_zero()) r += hdot[k] * f.derivative(k);
    return r;
  };
  auto h1pow = [](int e) {
    return e >= 0 ? RatFunc(Poly::var(0, e)) : RatFunc(Poly(1), Poly::var(0, -e));
  };
  auto sgn = [](int e) { return e % 2 == 0 ? 1 : -1; };

  std::vector<RatFunc> out;
  out.push_back(RatFunc(mpq_class(sgn(i))) * h1pow(2 - N + i));
  if (i >= 1) {
    RatFunc s;
    for (int k = 0; k <= i - 1; ++k) s += h1pow(k) * Hd(h1pow(2 - N + (i - 1) - k));
    out.push_back(RatFunc(mpq_class(sgn(i - 1))) * s);
  }
  if (i >= 2) {
    RatFunc s;
    for (int k = 0; k <= i - 2; ++k) {
      RatFunc inner;
      for (int l = 0; l <= i - 2 - k; ++l) inner += h1pow(l) * Hd(h1pow(2 - N + (i - 2) - k - l));
      s += h1pow(k) * Hd(inner);
    }
    out.push_back(RatFunc(mpq_class(sgn(i - 2))) * s);
  }
  std::vector<mpq_class> vals;
  for (const auto& f : out) vals.push_back(f.eval(h));
  return vals;
}

double pullback_derivative_deviation(const ExactOracle& oracle, int k, const std::vector<double>& h,
                                     double s) {
  if (k < 0 || k + 1 > oracle.max_k())
    throw Error(ErrorCode::IndexOutOfRange, "pullback check: derivative order out of range");
  // the jets are evaluated off the origin; keep a safety margin of orders
  if (oracle.start_order() - (k + 1) < 5)
    throw Error(ErrorCode::IndexOutOfRange, "pullback check: construct the oracle with more orders");
  const GroupModel& m = oracle.model();
  const int n = m.n;
  FlowSystem sys(m);
  Covector l0 = covector_from_h(m, h);
  const VecField<Jet>& W = oracle.E_jet(k);

  auto pulled = [&](double t) {
    IntegrateOptions opt;
    opt.step = std::abs(t) / 10;
    opt.variational = true;
    opt.drift_bound = 1e-6;
    Trajectory tr = integrate_flow(sys, l0, t, opt);
    const auto& z = tr.states.back();
    Eigen::VectorXd w(2 * n);
    for (int c = 0; c < 2 * n; ++c) w(c) = W.c[c].poly().eval(z);
    return Eigen::VectorXd(tr.M.back().partialPivLu().solve(w));
  };
  auto central = [&](double d) { return Eigen::VectorXd((pulled(d) - pulled(-d)) / (2 * d)); };
  Eigen::VectorXd coarse = central(s), fine = central(s / 10);
  Eigen::VectorXd extrap = (100 * fine - coarse) / 99;

  std::vector<double> z0 = l0.state();
  const VecField<Jet>& W1 = oracle.E_jet(k + 1);
  double dev = 0;
  for (int c = 0; c < 2 * n; ++c) dev = std::max(dev, std::abs(extrap(c) - W1.c[c].poly().eval(z0)));
  return dev;
}

}  // namespace carnot
