#include "carnot/identities.hpp"

namespace carnot {

namespace {

using F = VecField<Poly>;

void check(IdentityReport& rep, std::string name, std::string formula, const F& lhs, const F& rhs) {
  IdentityCheck c;
  c.name = std::move(name);
  c.formula = std::move(formula);
  F diff = lhs - rhs;
  c.pass = diff.is_zero();
  if (!c.pass) c.residual = dump(diff);
  rep.checks.push_back(std::move(c));
}

void check_scalar(IdentityReport& rep, int n, std::string name, std::string formula,
                  const Poly& lhs, const Poly& rhs) {
  IdentityCheck c;
  c.name = std::move(name);
  c.formula = std::move(formula);
  Poly diff = lhs - rhs;
  c.pass = diff.is_zero();
  if (!c.pass) c.residual = diff.to_string(canonical_names(n));
  rep.checks.push_back(std::move(c));
}

}  // namespace

IdentityReport verify_bracket_identities(const GroupModel& m) {
  IdentityReport rep;
  rep.group = m.name();
  const CanonicalFields f = canonical_fields(m);
  const int n = m.n;
  const auto& h = f.h;
  const F& H = f.Hvec;
  auto br = [&H](const F& w) { return lie_bracket(H, w); };
  const Poly twoH = f.H * mpq_class(2);

  if (m.kind == GroupKind::Goursat) {
    F exp_h = f.Xbar + h[2] * f.dtheta;
    for (int i = 3; i <= n - 1; ++i) exp_h = exp_h + (h[0] * h[i]) * f.dh[i - 1];
    check(rep, "ExpH", "H = X_thetabar + h3 d_theta + sum_{i=3}^{n-1} h1 h_{i+1} d_{h_i}", H, exp_h);

    // vertical equations: H(h_1) = -h2 h3, H(h_i) = h1 h_{i+1}, H(h_n) = 0
    check_scalar(rep, n, "vereq1", "H(h1) = -h2 h3", apply(H, h[0]), -(h[1] * h[2]));
    for (int i = 2; i <= n - 1; ++i)
      check_scalar(rep, n, "vereq" + std::to_string(i),
                   "H(h" + std::to_string(i) + ") = h1 h" + std::to_string(i + 1), apply(H, h[i - 1]),
                   h[0] * h[i]);
    check_scalar(rep, n, "vereq" + std::to_string(n), "H(h" + std::to_string(n) + ") = 0",
                 apply(H, h[n - 1]), Poly());

    F hx = br(f.Xtheta);
    check(rep, "HX", "[H, X_theta] = -2H X3 + h3 X_thetabar", hx,
          (-twoH) * f.Xhat[2] + h[2] * f.Xbar);
    check(rep, "HX|H=1/2", "[H, X_theta] - (-X3 + h3 X_thetabar) = (1 - 2H) X3", hx,
          (-f.Xhat[2] + h[2] * f.Xbar) + (Poly(1) - twoH) * f.Xhat[2]);

    F hht = f.Xtheta;
    for (int i = 3; i <= n - 1; ++i) hht = hht + (h[1] * h[i]) * f.dh[i - 1];
    check(rep, "Hht",
          n == 3 ? "[H, d_theta] = X_theta" : "[H, d_theta] = X_theta + h2 sum_{i=3}^{n-1} h_{i+1} d_{h_i}",
          br(f.dtheta), hht);
    check(rep, "Hh3", "[H, d_h3] = -d_theta", br(f.dh[2]), -f.dtheta);
    for (int i = 4; i <= n; ++i)
      check(rep, "Hh" + std::to_string(i),
            "[H, d_h" + std::to_string(i) + "] = -h1 d_h" + std::to_string(i - 1), br(f.dh[i - 1]),
            (-h[0]) * f.dh[i - 2]);
    check(rep, "He", "[H, e] = -H", br(f.euler), -H);
  } else {
    Poly cross = h[0] * h[3] + h[1] * h[4];
    check(rep, "ExpH", "H = X_thetabar + h3 d_theta + (h1 h4 + h2 h5) d_h3", H,
          f.Xbar + h[2] * f.dtheta + cross * f.dh[2]);
    check_scalar(rep, n, "vereq1", "H(h1) = -h2 h3", apply(H, h[0]), -(h[1] * h[2]));
    check_scalar(rep, n, "vereq2", "H(h2) = h1 h3", apply(H, h[1]), h[0] * h[2]);
    check_scalar(rep, n, "vereq3", "H(h3) = h1 h4 + h2 h5", apply(H, h[2]), cross);
    check_scalar(rep, n, "vereq4", "H(h4) = 0", apply(H, h[3]), Poly());
    check_scalar(rep, n, "vereq5", "H(h5) = 0", apply(H, h[4]), Poly());

    F hx = br(f.Xtheta);
    check(rep, "CHX", "[H, X_theta] = -2H X3 + h3 X_thetabar", hx,
          (-twoH) * f.Xhat[2] + h[2] * f.Xbar);
    check(rep, "CHX|H=1/2", "[H, X_theta] - (-X3 + h3 X_thetabar) = (1 - 2H) X3", hx,
          (-f.Xhat[2] + h[2] * f.Xbar) + (Poly(1) - twoH) * f.Xhat[2]);
    check(rep, "Ch5", "[H, d_h5] = -h2 d_h3", br(f.dh[4]), (-h[1]) * f.dh[2]);
    check(rep, "Ch4", "[H, d_h4] = -h1 d_h3", br(f.dh[3]), (-h[0]) * f.dh[2]);
    check(rep, "Ch3", "[H, d_h3] = -d_theta", br(f.dh[2]), -f.dtheta);
    check(rep, "Cht", "[H, d_theta] = X_theta + (h2 h4 - h1 h5) d_h3", br(f.dtheta),
          f.Xtheta + (h[1] * h[3] - h[0] * h[4]) * f.dh[2]);
    check(rep, "He", "[H, e] = -H", br(f.euler), -H);
  }
  return rep;
}

}  // namespace carnot
