#include "carnot/groups.hpp"

#include <charconv>
#include <cmath>

namespace carnot {

namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
  size_t n = a.size();
  PolyMatrix r(n, std::vector<Poly>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

// Inverse of a unit upper triangular matrix: I + N + N^2 + ..., N = I - A nilpotent.
PolyMatrix unitriangular_inverse(const PolyMatrix& a) {
  size_t n = a.size();
  PolyMatrix nil(n, std::vector<Poly>(n)), inv(n, std::vector<Poly>(n));
  for (size_t i = 0; i < n; ++i) {
    if (a[i][i] != Poly(1)) throw Error(ErrorCode::SingularFrame, "frame matrix is not unitriangular");
    for (size_t j = 0; j < i; ++j)
      if (!a[i][j].is_zero())
        throw Error(ErrorCode::SingularFrame, "frame matrix is not upper triangular");
    for (size_t j = i + 1; j < n; ++j) nil[i][j] = -a[i][j];
    inv[i][i] = Poly(1);
  }
  PolyMatrix power = nil;
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) inv[i][j] += power[i][j];
    power = matmul(power, nil);
  }
  return inv;
}

Poly x(int i) { return Poly::var(i); }
Poly q(long num, long den = 1) { return Poly(mpq_class(num, den)); }

void set_bracket(GroupModel& m, int i, int j, int k) {
  m.structure[i][j].push_back({k, mpq_class(1)});
  m.structure[j][i].push_back({k, mpq_class(-1)});
}

GroupModel goursat(int n) {
  GroupModel m;
  m.kind = GroupKind::Goursat;
  m.n = n;
  m.A.assign(n, std::vector<Poly>(n));
  m.A[0][0] = Poly(1);
  // X_{i+2} = sum_{j>=i} x^{j-i}/(j-i)! d/dy_j, where y_j is coordinate 1 + j
  for (int i = 0; i + 1 < n; ++i) {
    mpq_class fact = 1;
    for (int j = i; j + 1 < n; ++j) {
      if (j > i) fact *= (j - i);
      m.A[i + 1][1 + j] = Poly::var(0, j - i) * mpq_class(1 / fact);
    }
  }
  m.structure.assign(n, std::vector<std::vector<StructureEntry>>(n));
  for (int i = 1; i + 1 < n; ++i) set_bracket(m, 0, i, i + 1);
  m.strata = {2};
  for (int i = 3; i <= n; ++i) m.strata.push_back(1);
  m.base_names = {"x"};
  for (int j = 0; j + 1 < n; ++j) m.base_names.push_back("y" + std::to_string(j));
  return m;
}

GroupModel cartan_with_signs(int s1, int s2) {
  GroupModel m;
  m.kind = GroupKind::Cartan;
  m.n = 5;
  m.A.assign(5, std::vector<Poly>(5));
  Poly r2 = (x(0) * x(0) + x(1) * x(1)) * mpq_class(1, 2);
  // X1 = d/dx + s1 (y/2) d/dz - (x^2+y^2)/2 d/dw
  m.A[0][0] = q(1);
  m.A[0][2] = x(1) * mpq_class(s1, 2);
  m.A[0][4] = -r2;
  // X2 = d/dy + s2 (x/2) d/dz + (x^2+y^2)/2 d/dv
  m.A[1][1] = q(1);
  m.A[1][2] = x(0) * mpq_class(s2, 2);
  m.A[1][3] = r2;
  m.A[2][2] = q(1);
  m.A[2][3] = x(0);
  m.A[2][4] = x(1);
  m.A[3][3] = q(1);
  m.A[4][4] = q(1);
  m.structure.assign(5, std::vector<std::vector<StructureEntry>>(5));
  set_bracket(m, 0, 1, 2);
  set_bracket(m, 0, 2, 3);
  set_bracket(m, 1, 2, 4);
  m.strata = {2, 1, 2};
  m.base_names = {"x", "y", "z", "v", "w"};
  return m;
}

GroupModel cartan() {
  // The printed realization has X2 = d/dy - (x/2) d/dz + ...; it is tried
  // first and the z-coefficient signs are searched only if it fails.
  GroupModel printed = cartan_with_signs(-1, -1);
  if (realization_mismatches(printed).empty()) return printed;
  std::vector<GroupModel> ok;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      if (s1 == -1 && s2 == -1) continue;
      GroupModel m = cartan_with_signs(s1, s2);
      if (realization_mismatches(m).empty()) ok.push_back(std::move(m));
    }
  if (ok.size() != 1)
    throw Error(ErrorCode::RealizationMismatch,
                "no unique sign repair of the Cartan realization reproduces the bracket table");
  ok[0].repaired = true;
  return ok[0];
}

}  // namespace

std::string GroupModel::name() const {
  return kind == GroupKind::Cartan ? "cartan" : "goursat:" + std::to_string(n);
}

VecField<Poly> GroupModel::frame_field(int i) const {
  VecField<Poly> f(n);
  for (int j = 0; j < n; ++j) f.c[j] = A[i][j];
  return f;
}

std::vector<std::string> realization_mismatches(const GroupModel& m) {
  std::vector<std::string> bad;
  std::vector<VecField<Poly>> X;
  for (int i = 0; i < m.n; ++i) X.push_back(m.frame_field(i));
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) {
      VecField<Poly> r = lie_bracket(X[i], X[j]);
      for (const auto& e : m.structure[i][j]) r = r - Poly(e.c) * X[e.k];
      if (!r.is_zero())
        bad.push_back("[X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1) + "]");
    }
  return bad;
}

GroupModel build_group(GroupKind kind, int n) {
  GroupModel m;
  if (kind == GroupKind::Cartan) {
    m = cartan();
  } else {
    if (n < 3)
      throw Error(ErrorCode::UnsupportedGroup,
                  "unsupported group: goursat needs n >= 3, got " + std::to_string(n));
    if (2 * n > kMaxVars)
      throw Error(ErrorCode::UnsupportedGroup,
                  "unsupported group: goursat:" + std::to_string(n) + " exceeds the variable limit");
    m = goursat(n);
    auto bad = realization_mismatches(m);
    if (!bad.empty()) throw Error(ErrorCode::RealizationMismatch, "goursat realization fails " + bad[0]);
  }
  m.Ainv = unitriangular_inverse(m.A);
  auto id = matmul(m.A, m.Ainv);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (id[i][j] != Poly(i == j ? 1 : 0))
        throw Error(ErrorCode::SingularFrame, "frame inverse check failed");
  return m;
}

GroupModel build_group(const std::string& name) {
  if (name == "cartan") return build_group(GroupKind::Cartan);
  if (name == "heisenberg") return build_group(GroupKind::Goursat, 3);
  if (name == "engel") return build_group(GroupKind::Goursat, 4);
  const std::string prefix = "goursat:";
  if (name.rfind(prefix, 0) == 0) {
    const char* b = name.data() + prefix.size();
    const char* e = name.data() + name.size();
    int n = 0;
    auto [ptr, ec] = std::from_chars(b, e, n);
    if (ec != std::errc() || ptr != e || b == e)
      throw Error(ErrorCode::Parse, "unsupported group: malformed group name '" + name + "'");
    return build_group(GroupKind::Goursat, n);
  }
  throw Error(ErrorCode::UnsupportedGroup, "unsupported group: '" + name + "'");
}

namespace {

template <class T>
FiberMap<T> fiber_impl(const GroupModel& m, const std::vector<T>& base) {
  if (static_cast<int>(base.size()) != m.n)
    throw Error(ErrorCode::DimensionMismatch, "base point has wrong dimension");
  FiberMap<T> f;
  f.A.assign(m.n, std::vector<T>(m.n, T(0)));
  f.Ainv = f.A;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      if (!m.A[i][j].is_zero()) f.A[i][j] = m.A[i][j].eval(base);
      if (!m.Ainv[i][j].is_zero()) f.Ainv[i][j] = m.Ainv[i][j].eval(base);
    }
  return f;
}

}  // namespace

FiberMap<mpq_class> fiber_transform(const GroupModel& m, const std::vector<mpq_class>& base) {
  auto f = fiber_impl(m, base);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      mpq_class s = 0;
      for (int k = 0; k < m.n; ++k) s += f.A[i][k] * f.Ainv[k][j];
      if (s != (i == j ? 1 : 0)) throw Error(ErrorCode::SingularFrame, "A(base) inverse mismatch");
    }
  return f;
}

FiberMap<double> fiber_transform(const GroupModel& m, const std::vector<double>& base) {
  auto f = fiber_impl(m, base);
  for (int i = 0; i < m.n; ++i) {
    if (f.A[i][i] != 1.0) throw Error(ErrorCode::SingularFrame, "A(base) is not unitriangular");
  }
  return f;
}

double Covector::rho() const { return std::hypot(h[0], h[1]); }

bool Covector::unit_speed(double tol) const {
  if (exact) return h_q[0] * h_q[0] + h_q[1] * h_q[1] == 1;
  return std::abs(h[0] * h[0] + h[1] * h[1] - 1.0) <= tol;
}

std::vector<double> Covector::state() const {
  std::vector<double> z = base;
  z.insert(z.end(), p.begin(), p.end());
  return z;
}

Covector covector_from_h(const GroupModel& m, const std::vector<double>& h,
                         const std::vector<double>& base) {
  if (static_cast<int>(h.size()) != m.n)
    throw Error(ErrorCode::DimensionMismatch,
                "covector needs " + std::to_string(m.n) + " components, got " + std::to_string(h.size()));
  Covector c;
  c.base = base.empty() ? std::vector<double>(m.n, 0.0) : base;
  auto f = fiber_transform(m, c.base);
  c.h = h;
  c.p = f.to_p(h);
  return c;
}

Covector covector_from_h(const GroupModel& m, const std::vector<mpq_class>& h,
                         const std::vector<mpq_class>& base) {
  if (static_cast<int>(h.size()) != m.n)
    throw Error(ErrorCode::DimensionMismatch,
                "covector needs " + std::to_string(m.n) + " components, got " + std::to_string(h.size()));
  Covector c;
  c.exact = true;
  c.base_q = base.empty() ? std::vector<mpq_class>(m.n, mpq_class(0)) : base;
  auto f = fiber_transform(m, c.base_q);
  c.h_q = h;
  c.p_q = f.to_p(h);
  for (int i = 0; i < m.n; ++i) {
    c.base.push_back(to_double(c.base_q[i]));
    c.p.push_back(to_double(c.p_q[i]));
    c.h.push_back(to_double(c.h_q[i]));
  }
  return c;
}

Covector covector_from_state(const GroupModel& m, const std::vector<double>& z) {
  if (static_cast<int>(z.size()) != 2 * m.n)
    throw Error(ErrorCode::DimensionMismatch, "state has wrong dimension");
  Covector c;
  c.base.assign(z.begin(), z.begin() + m.n);
  c.p.assign(z.begin() + m.n, z.end());
  c.h = fiber_transform(m, c.base).to_h(c.p);
  return c;
}

EngelChart engel_chart(const std::vector<double>& h) {
  return {std::atan2(-h[0], h[1]), h[2], h[3]};
}

std::vector<double> engel_h(const EngelChart& ch) {
  return {-std::sin(ch.theta), std::cos(ch.theta), ch.c, ch.alpha};
}

CartanChart cartan_chart(const std::vector<double>& h) {
  double alpha = std::hypot(h[3], h[4]);
  double beta = alpha > 0 ? std::atan2(h[3], -h[4]) : 0.0;
  return {std::atan2(h[1], h[0]), h[2], alpha, beta};
}

std::vector<double> cartan_h(const CartanChart& ch) {
  return {std::cos(ch.theta), std::sin(ch.theta), ch.c, ch.alpha * std::sin(ch.beta),
          -ch.alpha * std::cos(ch.beta)};
}

std::pair<mpq_class, mpq_class> rational_unit_circle(const mpq_class& s) {
  mpq_class d = 1 + s * s;
  return {mpq_class((1 - s * s) / d), mpq_class(2 * s / d)};
}

}  // namespace carnot
