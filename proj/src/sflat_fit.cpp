#include "carnot/sflat_fit.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/oracle.hpp"
#include "carnot/regularity.hpp"
#include "carnot/taylor_flow.hpp"

namespace carnot {

namespace {

struct EntryFit {
  double lead = 0, lin = 0;
};

// Least squares y = a + b s on s = t^2, y = t * S(t).
EntryFit fit_two_term(const std::vector<Real>& t, const std::vector<Real>& S) {
  Real n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    Real x = t[i] * t[i], y = t[i] * S[i];
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  Real det = n * sxx - sx * sx;
  Real b = (n * sxy - sx * sy) / det;
  Real a = (sy - b * sx) / n;
  return {a.convert_to<double>(), b.convert_to<double>()};
}

struct Pass {
  SflatFit fit;
  std::vector<Real> t, aa, ab, bb;
};

std::vector<mpq_class> hvec_at(const GroupModel& m, const std::vector<mpq_class>& h) {
  FlowPolys fp = flow_polys(m);
  std::vector<mpq_class> z(2 * m.n, 0);
  for (int i = 0; i < m.n; ++i) z[m.n + i] = h[i];
  std::vector<mpq_class> out;
  for (const auto& r : fp.rhs) out.push_back(r.eval(z));
  return out;
}

Pass run_grid(const GroupModel& m, const std::vector<mpq_class>& h, const std::vector<double>& grid,
              const std::vector<mpq_class>& Fa, const std::vector<mpq_class>& Fb, unsigned extra) {
  const int n = m.n;
  const int na = m.na();
  double t_lo = *std::min_element(grid.begin(), grid.end());
  double t_hi = *std::max_element(grid.begin(), grid.end());
  unsigned bits =
      64 + static_cast<unsigned>(std::ceil((2 * na + 4) * std::log2(1 / std::min(t_lo, 0.5)))) + extra;
  PrecisionScope scope(bits);
  TaylorFlow tf(m, h, Real(t_hi), bits);

  std::vector<Real> fa(2 * n), fb(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    fa[i] = to_real(Fa[i]);
    fb[i] = to_real(Fb[i]);
  }
  Pass out;
  out.fit.bits = bits;
  out.fit.t_hi = t_hi;
  out.fit.taylor_terms = tf.terms();
  for (double td : grid) {
    Real t(td);
    RealMatrix M = tf.variational(t);
    RealMatrix Mxp(n, std::vector<Real>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Mxp[i][j] = M[i][n + j];
    // u in the vertical space at lambda0 with M (F + u) vertical at lambda(t)
    auto graph = [&](const std::vector<Real>& F, Real* cond) {
      std::vector<Real> rhs(n);
      for (int i = 0; i < n; ++i) {
        Real s = 0;
        for (int j = 0; j < 2 * n; ++j) s += M[i][j] * F[j];
        rhs[i] = -s;
      }
      return solve_linear(Mxp, rhs, cond);
    };
    // E-coefficient of a vertical u is sigma(u, F) = sum u_p F_x
    auto coeff = [&](const std::vector<Real>& up, const std::vector<Real>& F) {
      Real s = 0;
      for (int i = 0; i < n; ++i) s += up[i] * F[i];
      return s;
    };
    SflatSample smp;
    smp.t = td;
    Real ca = 0, cb = 0;
    std::vector<Real> ua, ub;
    try {
      ua = graph(fa, &ca);
      ub = graph(fb, &cb);
    } catch (const std::domain_error&) {
      smp.dropped = true;
      smp.log2_condition = std::numeric_limits<double>::infinity();
      out.fit.samples.push_back(smp);
      continue;
    }
    Real cond = std::max(ca, cb);
    smp.log2_condition = log2(cond).convert_to<double>();
    if (smp.log2_condition > static_cast<double>(bits) - 40) {
      smp.dropped = true;
      out.fit.samples.push_back(smp);
      continue;
    }
    Real aa = coeff(ua, fa), ab = coeff(ub, fa), bb = coeff(ub, fb);
    smp.aa = aa.convert_to<double>();
    smp.ab = ab.convert_to<double>();
    smp.bb = bb.convert_to<double>();
    out.fit.samples.push_back(smp);
    out.t.push_back(t);
    out.aa.push_back(aa);
    out.ab.push_back(ab);
    out.bb.push_back(bb);
  }
  size_t dropped = out.fit.samples.size() - out.t.size();
  if (2 * dropped > out.fit.samples.size() || out.t.size() < 2)
    throw Error(ErrorCode::IllConditioned, "sflat fit: graph-map solve ill-conditioned on most samples");
  EntryFit a = fit_two_term(out.t, out.aa), b = fit_two_term(out.t, out.bb),
           c = fit_two_term(out.t, out.ab);
  out.fit.lead_a = a.lead;
  out.fit.lin_a = a.lin;
  out.fit.lead_b = b.lead;
  out.fit.lin_b = b.lin;
  out.fit.lead_ab = c.lead;
  out.fit.lin_ab = c.lin;
  return out;
}

// Refit on the samples with t <= t_hi / 2 and compare.
double window_change(const Pass& p) {
  std::vector<Real> t, aa;
  Real half = Real(p.fit.t_hi) / 2;
  for (size_t i = 0; i < p.t.size(); ++i)
    if (p.t[i] <= half) {
      t.push_back(p.t[i]);
      aa.push_back(p.aa[i]);
    }
  if (t.size() < 3) return std::numeric_limits<double>::infinity();
  EntryFit f = fit_two_term(t, aa);
  double scale = std::max(std::abs(p.fit.lin_a), 1e-9 * std::abs(p.fit.lead_a));
  double dlead = std::abs(f.lead - p.fit.lead_a) / std::abs(p.fit.lead_a);
  return std::max(std::abs(f.lin - p.fit.lin_a) / scale, dlead);
}

std::vector<double> geometric_grid(double t_hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(t_hi * std::pow(1e-2, 1.0 - double(i) / (points - 1)));
  return g;
}

}  // namespace

SflatFit sflat_fit(const GroupModel& m, const std::vector<mpq_class>& h, const SflatFitOptions& opt) {
  std::vector<double> hd;
  for (const auto& v : h) hd.push_back(to_double(v));
  if (static_cast<int>(h.size()) != m.n)
    throw Error(ErrorCode::DimensionMismatch, "sflat fit: covector has wrong length");
  GrowthReport g = growth_vector_closed_form(m, hd);
  if (!g.ample || !g.equiregular)
    throw Error(ErrorCode::NotAmpleEquiregular, "sflat fit: covector is not ample and equiregular");
  ExactOracle oracle(m);  // checks the covector in E_at
  std::vector<mpq_class> Fa = oracle.E_at(oracle.na(), h);
  for (auto& v : Fa) v = -v;
  std::vector<mpq_class> Fb = hvec_at(m, h);

  if (!opt.t_grid.empty()) {
    Pass p = run_grid(m, h, opt.t_grid, Fa, Fb, opt.extra_bits);
    p.fit.window_change = window_change(p);
    p.fit.window_ok = p.fit.window_change <= opt.window_tol;
    return p.fit;
  }
  double t_hi = opt.t_hi;
  SflatFit last;
  for (int s = 0; s <= opt.max_shrinks; ++s, t_hi /= 10) {
    Pass p = run_grid(m, h, geometric_grid(t_hi, opt.points), Fa, Fb, opt.extra_bits);
    p.fit.window_change = window_change(p);
    p.fit.window_ok = p.fit.window_change <= opt.window_tol;
    last = std::move(p.fit);
    if (last.window_ok) break;
  }
  return last;
}

}  // namespace carnot
