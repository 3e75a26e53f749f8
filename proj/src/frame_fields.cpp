#include "carnot/frame_fields.hpp"

namespace carnot {

CanonicalFields canonical_fields(const GroupModel& m) {
  const int n = m.n;
  CanonicalFields f;
  f.n = n;
  auto pv = [n](int j) { return Poly::var(n + j); };

  f.h.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!m.A[i][j].is_zero()) f.h[i] += m.A[i][j] * pv(j);

  f.H = (f.h[0] * f.h[0] + f.h[1] * f.h[1]) * mpq_class(1, 2);
  f.Hvec = VecField<Poly>(n);
  for (int j = 0; j < n; ++j) {
    f.Hvec.x(j) = f.H.derivative(n + j);
    f.Hvec.p(j) = -f.H.derivative(j);
  }

  for (int i = 0; i < n; ++i) {
    VecField<Poly> X(n);
    for (int k = 0; k < n; ++k) X.x(k) = m.A[i][k];
    // p-part: -A^-1 (D_{X_i} A) p
    std::vector<Poly> dAp(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (m.A[a][b].is_zero()) continue;
        Poly d;
        for (int k = 0; k < n; ++k)
          if (!m.A[i][k].is_zero()) d += m.A[i][k] * m.A[a][b].derivative(k);
        if (!d.is_zero()) dAp[a] += d * pv(b);
      }
    for (int r = 0; r < n; ++r)
      for (int a = 0; a < n; ++a)
        if (!m.Ainv[r][a].is_zero() && !dAp[a].is_zero()) X.p(r) -= m.Ainv[r][a] * dAp[a];
    f.Xhat.push_back(std::move(X));

    VecField<Poly> D(n);
    for (int r = 0; r < n; ++r) D.p(r) = m.Ainv[r][i];
    f.dh.push_back(std::move(D));
  }

  f.euler = VecField<Poly>(n);
  for (int j = 0; j < n; ++j) f.euler.p(j) = pv(j);
  f.dtheta = f.h[0] * f.dh[1] - f.h[1] * f.dh[0];
  f.Xtheta = f.h[1] * f.Xhat[0] - f.h[0] * f.Xhat[1];
  f.Xbar = f.h[0] * f.Xhat[0] + f.h[1] * f.Xhat[1];
  return f;
}

FlowPolys flow_polys(const GroupModel& m) {
  CanonicalFields f = canonical_fields(m);
  FlowPolys fp;
  fp.n = m.n;
  fp.rhs = f.Hvec.c;
  fp.jac.assign(2 * m.n, std::vector<Poly>(2 * m.n));
  for (int i = 0; i < 2 * m.n; ++i)
    for (int j = 0; j < 2 * m.n; ++j) fp.jac[i][j] = fp.rhs[i].derivative(j);
  return fp;
}

}  // namespace carnot
