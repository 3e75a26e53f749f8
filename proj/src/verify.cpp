#include "carnot/verify.hpp"

#include <cmath>
#include <sstream>

#include "carnot/cost_probe.hpp"
#include "carnot/curvature.hpp"
#include "carnot/identities.hpp"
#include "carnot/oracle.hpp"
#include "carnot/sflat_fit.hpp"

namespace carnot {

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

int VerifyReport::passed() const {
  int k = 0;
  for (const auto& c : checks) k += c.pass;
  return k;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

namespace {

mpq_class random_small(std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (;;) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    if (!nonzero || q != 0) return q;
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

VerifyCheck float_check(const std::string& name, double expected, double actual, double rel) {
  VerifyCheck c{name, "float", fmt(expected), fmt(actual), false};
  c.pass = std::abs(actual - expected) <= rel * std::abs(expected);
  return c;
}

std::string covector_tag(const std::vector<mpq_class>& h) {
  std::string s = "(";
  for (size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + h[i].get_str();
  return s + ")";
}

}  // namespace

std::vector<mpq_class> random_rational_covector(const GroupModel& m, std::mt19937_64& rng) {
  const int pole = m.kind == GroupKind::Cartan ? 2 : 0;
  for (;;) {
    auto [c, s] = rational_unit_circle(random_small(rng, false));
    std::vector<mpq_class> h{c, s};
    for (int i = 2; i < m.n; ++i) h.push_back(random_small(rng, i == pole));
    if (m.kind == GroupKind::Goursat && m.n >= 4 && abs(h[0]) * 9 < 1) continue;
    return h;
  }
}

VerifyReport verify_exact(const GroupModel& m, std::uint64_t seed, int count) {
  VerifyReport r{"exact", m.name(), seed, {}};
  std::mt19937_64 rng(seed);
  ExactOracle oracle(m);
  for (int i = 0; i < count; ++i) {
    auto h = random_rational_covector(m, rng);
    std::string tag = covector_tag(h);
    mpq_class closed = m.kind == GroupKind::Cartan ? r11_cartan(h) : r11_goursat(m.n, h);
    mpq_class got = oracle.r11(h);
    r.checks.push_back({"r11 " + tag, "exact", closed.get_str(), got.get_str(), closed == got});
    LemmaReport lr = oracle.lemma_conditions(h);
    r.checks.push_back({"frame lemma " + tag, "exact", "1", lr.normalization.get_str(), lr.pass});
    DarbouxReport dr = oracle.frame_darboux_check(h);
    r.checks.push_back({"darboux pairings " + tag, "exact", std::to_string(dr.checks.size()),
                        std::to_string(dr.checks.size() - [&] {
                          int f = 0;
                          for (const auto& c : dr.checks) f += !c.pass;
                          return f;
                        }()),
                        dr.all_pass()});
  }
  if (m.n <= 6) {
    IdentityReport ir = verify_bracket_identities(m);
    for (const auto& c : ir.checks)
      r.checks.push_back({"identity " + c.name, "exact", "0", c.pass ? "0" : c.residual, c.pass});
  }
  return r;
}

VerifyReport verify_fit(const GroupModel& m, std::uint64_t seed, const Tolerances& tol, int count) {
  VerifyReport r{"fit", m.name(), seed, {}};
  std::mt19937_64 rng(seed);
  const int na = m.na();
  for (int i = 0; i < count; ++i) {
    auto h = random_rational_covector(m, rng);
    std::string tag = covector_tag(h);
    SflatFit f = sflat_fit(m, h);
    double lin = to_double(omega(na, na) * r11_exact(m, h));
    r.checks.push_back(float_check("lead_a " + tag, -double(na * na), f.lead_a, tol.lead));
    r.checks.push_back(float_check("lead_b " + tag, -1.0, f.lead_b, tol.lead));
    r.checks.push_back(float_check("lin_a " + tag, lin, f.lin_a, tol.lin));
  }
  return r;
}

VerifyReport verify_slow(const GroupModel& m, const std::vector<mpq_class>& h_in,
                         const Tolerances& tol) {
  std::vector<mpq_class> h = h_in;
  if (h.empty()) {
    h.assign(m.n, 0);
    h[0] = 1;
    h[2] = 1;
  }
  VerifyReport r{"slow", m.name(), 0, {}};
  const double t = 0.1;
  CostProbe p = cost_hessian_probe(m, h, t);
  const int na = m.na();
  std::string tag = covector_tag(h);
  r.checks.push_back(float_check("cost probe aa " + tag, na * na / (t * t), p.Q(0, 0), tol.probe));
  r.checks.push_back(float_check("cost probe bb " + tag, 1 / (t * t), p.Q(1, 1), tol.probe));
  return r;
}

}  // namespace carnot
