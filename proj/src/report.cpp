#include "carnot/report.hpp"

namespace carnot {

json rational_json(const mpq_class& q) { return q.get_str(); }

namespace {

json mat2q(const Mat2q& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back({rational_json(row[0]), rational_json(row[1])});
  return out;
}

json mat2(const Mat2& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back({row[0], row[1]});
  return out;
}

}  // namespace

json to_json(const GrowthReport& g) {
  json j;
  j["growth"] = g.growth;
  j["step"] = g.step;
  j["ample"] = g.ample;
  j["equiregular"] = g.equiregular;
  j["abnormal"] = g.abnormal;
  if (g.young_diagram)
    j["diagram"] = {g.young_diagram->first, g.young_diagram->second};
  else
    j["diagram"] = nullptr;
  j["loss_times"] = g.loss_times;
  return j;
}

json to_json(const PendulumChart& c) {
  json j;
  j["stratum"] = c.name();
  j["theta"] = c.theta;
  j["c"] = c.c;
  j["alpha"] = c.alpha;
  if (c.kind == GroupKind::Cartan) j["beta"] = c.beta;
  j["E"] = c.E;
  j["boundary_uncertain"] = c.boundary_uncertain;
  if (c.k) j["k"] = *c.k;
  if (c.phi) j["phi"] = *c.phi;
  if (c.K) j["K"] = *c.K;
  return j;
}

json to_json(const CurvatureReport& r) {
  json j;
  j["group"] = r.group;
  j["covector"] = r.covector;
  j["diagram"] = {r.na, r.nb};
  j["I"] = mat2q(r.I);
  if (r.R_exact)
    j["R"] = mat2q(*r.R_exact);
  else
    j["R"] = mat2(r.R);
  j["R_float"] = mat2(r.R);
  if (r.r11_exact)
    j["r11"] = rational_json(*r.r11_exact);
  else
    j["r11"] = r.r11;
  j["r11_float"] = r.r11;
  j["omega"] = rational_json(r.omega_aa);
  j["omega_float"] = to_double(r.omega_aa);
  j["R_coefficient"] = rational_json(r.r_coefficient);
  j["trace_I"] = r.trace_I;
  if (r.bound) {
    j["bound"] = *r.bound;
    j["bound_kind"] = r.bound_kind;
  } else {
    j["bound"] = nullptr;
  }
  j["basis"] = r.basis;
  return j;
}

json to_json(const SflatFit& f) {
  json j;
  j["lead_a"] = f.lead_a;
  j["lead_b"] = f.lead_b;
  j["lin_a"] = f.lin_a;
  j["lin_b"] = f.lin_b;
  j["lead_ab"] = f.lead_ab;
  j["lin_ab"] = f.lin_ab;
  j["t_hi"] = f.t_hi;
  j["bits"] = f.bits;
  j["taylor_terms"] = f.taylor_terms;
  j["window_ok"] = f.window_ok;
  j["window_change"] = f.window_change;
  json s = json::array();
  for (const auto& x : f.samples)
    s.push_back({{"t", x.t}, {"aa", x.aa}, {"ab", x.ab}, {"bb", x.bb},
                 {"log2_condition", x.log2_condition}, {"dropped", x.dropped}});
  j["samples"] = s;
  return j;
}

json to_json(const CostProbe& p) {
  json j;
  j["t"] = p.t;
  j["h_base"] = p.h_base;
  j["target"] = p.target;
  j["directions"] = p.dirs;
  j["Q"] = {{p.Q(0, 0), p.Q(0, 1)}, {p.Q(1, 0), p.Q(1, 1)}};
  j["max_residual"] = p.max_residual;
  j["solves"] = p.solves.size();
  return j;
}

json to_json(const VerifyReport& r) {
  json j;
  j["suite"] = r.suite;
  j["group"] = r.group;
  j["passed"] = r.passed();
  j["total"] = r.checks.size();
  j["all_pass"] = r.all_pass();
  json c = json::array();
  for (const auto& x : r.checks)
    c.push_back({{"name", x.name}, {"mode", x.mode}, {"expected", x.expected},
                 {"actual", x.actual}, {"pass", x.pass}});
  j["checks"] = c;
  return j;
}

}  // namespace carnot
