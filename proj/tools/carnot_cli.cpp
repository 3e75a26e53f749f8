#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "carnot/report.hpp"

using namespace carnot;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIntegrator = 3, kNotAmple = 4, kSingular = 5, kVerifyFailed = 6 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse:
    case ErrorCode::UnsupportedGroup:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotUnitSpeed:
      return kUsage;
    case ErrorCode::NotAmple:
    case ErrorCode::NotAmpleEquiregular:
      return kNotAmple;
    case ErrorCode::SingularCovector:
      return kSingular;
    case ErrorCode::LemmaConditionFailed:
    case ErrorCode::RealizationMismatch:
    case ErrorCode::SingularFrame:
      return kVerifyFailed;
    default:
      return kIntegrator;
  }
}

struct Config {
  std::string command;
  std::string group;
  std::string covector, chart;
  double T = 0, step = 1e-3;
  int every = 1;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  std::string suite = "exact";
  std::string grid;
  Tolerances tol;
};

json config_json(const Config& c) {
  json j;
  j["command"] = c.command;
  j["group"] = c.group;
  if (!c.covector.empty()) j["covector"] = c.covector;
  if (!c.chart.empty()) j["chart"] = c.chart;
  j["T"] = c.T;
  j["step"] = c.step;
  j["format"] = c.format;
  j["seed"] = c.seed;
  if (c.command == "verify") j["suite"] = c.suite;
  if (c.command == "sweep") j["grid"] = c.grid;
  j["tol"] = {{"lead", c.tol.lead}, {"lin", c.tol.lin}, {"probe", c.tol.probe},
              {"class", c.tol.cls}, {"drift", c.tol.drift}};
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// "3", "-1/3", "0.25", "1e-3", "-2.5e2" as an exact rational.
mpq_class parse_rational(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  auto bad = [&] { return Error(ErrorCode::Parse, "cannot parse number '" + s + "'"); };
  if (s.empty()) throw bad();
  if (s.find('/') != std::string::npos) {
    auto parts = split(s, '/');
    if (parts.size() != 2) throw bad();
    mpz_class num, den;
    if (num.set_str(parts[0], 10) != 0 || den.set_str(parts[1], 10) != 0 || den == 0) throw bad();
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  std::string mant = s;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    try {
      size_t used = 0;
      exp10 = std::stol(s.substr(epos + 1), &used);
      if (used != s.size() - epos - 1) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+');
  if (neg && mant[0] == '+') neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) throw bad();
  mpz_class num(digits, 10), pow10 = 1;
  for (long i = 0; i < std::abs(exp10); ++i) pow10 *= 10;
  mpq_class q = exp10 >= 0 ? mpq_class(num * pow10) : mpq_class(num, pow10);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::vector<mpq_class> parse_vector(const std::string& s) {
  std::vector<mpq_class> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
  return out;
}

std::vector<double> to_doubles(const std::vector<mpq_class>& v) {
  std::vector<double> out;
  for (const auto& q : v) out.push_back(to_double(q));
  return out;
}

// Covector from --covector, or from --chart theta,c,alpha[,beta] for Engel/Cartan.
struct Input {
  std::vector<mpq_class> hq;
  std::vector<double> h;
  bool exact = true;
};

Input read_covector(const GroupModel& m, const Config& c) {
  Input in;
  if (!c.covector.empty() && !c.chart.empty())
    throw Error(ErrorCode::Parse, "give either --covector or --chart, not both");
  if (!c.chart.empty()) {
    std::vector<double> v = to_doubles(parse_vector(c.chart));
    if (m.kind == GroupKind::Cartan) {
      if (v.size() != 4) throw Error(ErrorCode::Parse, "cartan chart needs theta,c,alpha,beta");
      in.h = cartan_h({v[0], v[1], v[2], v[3]});
    } else if (m.is_engel()) {
      if (v.size() != 3) throw Error(ErrorCode::Parse, "engel chart needs theta,c,alpha");
      in.h = engel_h({v[0], v[1], v[2]});
    } else {
      throw Error(ErrorCode::UnsupportedGroup, "unsupported group for --chart: " + m.name());
    }
    in.exact = false;
    return in;
  }
  if (c.covector.empty()) throw Error(ErrorCode::Parse, "missing --covector");
  in.hq = parse_vector(c.covector);
  if (static_cast<int>(in.hq.size()) != m.n)
    throw Error(ErrorCode::DimensionMismatch, "covector needs " + std::to_string(m.n) +
                                                  " components, got " + std::to_string(in.hq.size()));
  in.h = to_doubles(in.hq);
  return in;
}

Covector make_covector(const GroupModel& m, const Input& in) {
  return in.exact ? covector_from_h(m, in.hq) : covector_from_h(m, in.h);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::Parse, "cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Config& c, json body) {
  json j;
  j["config"] = config_json(c);
  for (auto& [k, v] : body.items()) j[k] = v;
  Output out(c.out);
  out.os() << j.dump(2) << "\n";
}

int cmd_geodesic(const Config& c) {
  GroupModel m = build_group(c.group);
  Input in = read_covector(m, c);
  FlowSystem sys(m);
  IntegrateOptions opt;
  opt.step = c.step;
  opt.sample_every = c.every;
  opt.drift_bound = c.tol.drift;
  Trajectory tr = integrate_flow(sys, make_covector(m, in), c.T, opt);
  if (c.format == "csv") {
    Output out(c.out);
    write_trajectory_csv(out.os(), m, tr, "config: " + config_json(c).dump());
    return kOk;
  }
  json rows = json::array();
  for (size_t i = 0; i < tr.times.size(); ++i) {
    Covector l = covector_from_state(m, tr.states[i]);
    rows.push_back({{"t", tr.times[i]}, {"x", l.base}, {"h", l.h}});
  }
  json body;
  body["group"] = m.name();
  body["max_drift"] = tr.max_drift;
  body["samples"] = rows;
  emit_json(c, body);
  return kOk;
}

int cmd_classify(const Config& c) {
  GroupModel m = build_group(c.group);
  Input in = read_covector(m, c);
  Covector l = make_covector(m, in);
  json body;
  body["group"] = m.name();
  body["h"] = l.h;
  GrowthReport g = growth_vector_closed_form(m, l.h);
  RankOracle oracle(m);
  GrowthReport gr = oracle.growth(l.h);
  if (g.ample && c.T > 0) {
    FlowSystem sys(m);
    g.loss_times = equiregularity_loss_times(sys, l, c.T, c.step);
  }
  if (m.is_engel() || m.kind == GroupKind::Cartan) {
    PendulumChart ch = classify_pendulum(m, l.h, c.tol.cls);
    body["stratum"] = ch.name();
    body["chart"] = to_json(ch);
  }
  json gj = to_json(g);
  for (auto& [k, v] : gj.items()) body[k] = v;
  body["growth_rank_oracle"] = gr.growth;
  body["oracle_agrees"] = gr.growth == g.growth;
  body["loss_count"] = g.loss_times.size();
  if (g.loss_times.size() >= 2) {
    std::vector<double> d;
    for (size_t i = 1; i < g.loss_times.size(); ++i) d.push_back(g.loss_times[i] - g.loss_times[i - 1]);
    double mean = 0;
    for (double x : d) mean += x;
    mean /= d.size();
    double dev = 0;
    for (double x : d) dev = std::max(dev, std::abs(x - mean));
    body["loss_spacing"] = {{"mean", mean}, {"max_deviation", dev}};
  }
  emit_json(c, body);
  return kOk;
}

int cmd_curvature(const Config& c) {
  GroupModel m = build_group(c.group);
  Input in = read_covector(m, c);
  CurvatureReport r = curvature_operator(m, make_covector(m, in));
  emit_json(c, to_json(r));
  return kOk;
}

int cmd_verify(const Config& c) {
  GroupModel m = build_group(c.group);
  std::vector<VerifyReport> reports;
  const auto& s = c.suite;
  if (s != "exact" && s != "fit" && s != "all" && s != "slow")
    throw Error(ErrorCode::Parse, "unknown suite '" + s + "' (exact|fit|all|slow)");
  json body;
  body["group"] = m.name();
  bool ok = true;
  try {
    if (s == "exact" || s == "all") reports.push_back(verify_exact(m, c.seed));
    if (s == "fit" || s == "all") reports.push_back(verify_fit(m, c.seed, c.tol));
    if (s == "slow") {
      std::vector<mpq_class> h;
      if (!c.covector.empty()) h = read_covector(m, c).hq;
      reports.push_back(verify_slow(m, h, c.tol));
    }
  } catch (const Error& e) {
    body["error"] = {{"kind", error_name(e.code())}, {"message", e.what()}};
    ok = false;
  }
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    ok = ok && r.all_pass();
  }
  body["reports"] = arr;
  body["all_pass"] = ok;
  emit_json(c, body);
  return ok ? kOk : kVerifyFailed;
}

struct Axis {
  double lo = 0, hi = 0;
  int count = 1;
  double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

std::map<std::string, Axis> parse_grid(const std::string& text) {
  std::map<std::string, Axis> out;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "grid entry '" + item + "' needs name=a:b:n");
    auto parts = split(item.substr(eq + 1), ':');
    if (parts.size() != 3) throw Error(ErrorCode::Parse, "grid entry '" + item + "' needs name=a:b:n");
    Axis a;
    a.lo = to_double(parse_rational(parts[0]));
    a.hi = to_double(parse_rational(parts[1]));
    mpq_class n = parse_rational(parts[2]);
    if (n.get_den() != 1 || n < 1 || n > 100000)
      throw Error(ErrorCode::Parse, "grid count in '" + item + "' must be an integer in [1, 100000]");
    a.count = static_cast<int>(n.get_num().get_si());
    out[item.substr(0, eq)] = a;
  }
  return out;
}

int cmd_sweep(const Config& c) {
  GroupModel m = build_group(c.group);
  const bool cartan = m.kind == GroupKind::Cartan;
  if (!cartan && !m.is_engel())
    throw Error(ErrorCode::UnsupportedGroup, "unsupported group for sweep: " + m.name() + " (engel or cartan)");
  auto grid = parse_grid(c.grid);
  std::vector<std::string> names{"theta", "c", "alpha"};
  if (cartan) names.push_back("beta");
  for (const auto& [k, v] : grid)
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw Error(ErrorCode::Parse, "unknown grid coordinate '" + k + "'");
  std::vector<Axis> axes;
  for (const auto& nm : names) axes.push_back(grid.count(nm) ? grid[nm] : Axis{});
  size_t total = 1;
  for (const auto& a : axes) total *= a.count;

  std::vector<std::string> rows(total);
  auto eval_row = [&](size_t idx) {
    std::vector<double> v(axes.size());
    size_t r = idx;
    for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
      v[a] = axes[a].at(static_cast<int>(r % axes[a].count));
      r /= axes[a].count;
    }
    std::vector<double> h = cartan ? cartan_h({v[0], v[1], v[2], v[3]}) : engel_h({v[0], v[1], v[2]});
    PendulumChart ch = classify_pendulum(m, h, c.tol.cls);
    GrowthReport g = growth_vector_closed_form(m, h);
    std::ostringstream os;
    os.precision(17);
    for (double x : v) os << x << ",";
    os << ch.name() << ",";
    for (size_t i = 0; i < g.growth.size(); ++i) os << (i ? "-" : "") << g.growth[i];
    if (g.abnormal) os << "-...";
    double E = cartan ? energy_cartan(h) : energy_engel(h);
    double bound = (cartan ? 6 : 4) * E;
    double pole = cartan ? h[2] : h[0];
    if (std::abs(pole) < kPoleTolerance) {
      os << ",singular," << E << ",singular,singular";
    } else {
      double r11 = cartan ? r11_cartan(h) : r11_goursat(4, h);
      double square = cartan ? 8 * v[2] * v[2] * std::pow(std::sin(v[0] - v[3]), 2) / (v[1] * v[1])
                             : 6 * v[1] * v[1] / std::pow(std::sin(v[0]), 2);
      os << "," << r11 << "," << E << "," << bound - r11 << "," << square;
    }
    rows[idx] = os.str();
  };
  unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  std::vector<std::thread> pool;
  std::vector<std::string> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < total; i += workers) eval_row(i);
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);

  Output out(c.out);
  auto& os = out.os();
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(r);
    json j;
    j["config"] = config_json(c);
    std::string cols;
    for (const auto& nm : names) cols += nm + ",";
    j["columns"] = cols + "stratum,growth,r11,E,slack,subtracted_square";
    j["rows"] = arr;
    os << j.dump(2) << "\n";
    return kOk;
  }
  os << "# config: " << config_json(c).dump() << "\n";
  for (const auto& nm : names) os << nm << ",";
  os << "stratum,growth,r11,E,slack,subtracted_square\n";
  for (const auto& r : rows) os << r << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature invariants and geodesics of rank-two Carnot groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--group", cfg.group, "goursat:<n>, cartan, heisenberg or engel");
  app.add_option("--covector", cfg.covector, "h at the base origin, comma separated (rationals allowed)");
  app.add_option("--chart", cfg.chart, "pendulum chart theta,c,alpha[,beta] (engel/cartan)");
  app.add_option("--T", cfg.T, "final time");
  app.add_option("--step", cfg.step, "integration step")->check(CLI::PositiveNumber);
  app.add_option("--every", cfg.every, "keep one trajectory sample per this many steps")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--suite", cfg.suite, "verify suite: exact, fit, all or slow");
  app.add_option("--grid", cfg.grid, "sweep grid theta=a:b:n,c=a:b:n,alpha=a:b:n[,beta=a:b:n]");
  app.add_option("--tol-lead", cfg.tol.lead, "relative tolerance of fitted leading coefficients");
  app.add_option("--tol-lin", cfg.tol.lin, "relative tolerance of the fitted linear coefficient");
  app.add_option("--tol-probe", cfg.tol.probe, "relative tolerance of the cost probe");
  app.add_option("--tol-class", cfg.tol.cls, "stratum boundary tolerance");
  app.add_option("--tol-drift", cfg.tol.drift, "allowed drift of conserved quantities");

  std::map<std::string, int (*)(const Config&)> commands{
      {"geodesic", cmd_geodesic}, {"classify", cmd_classify}, {"curvature", cmd_curvature},
      {"verify", cmd_verify},     {"sweep", cmd_sweep}};
  std::map<std::string, std::string> help{
      {"geodesic", "integrate the geodesic flow (CSV t,x,h,H[,E])"},
      {"classify", "growth vector, stratum and loss times"},
      {"curvature", "curvature report at a covector"},
      {"verify", "run oracle suites; exit 0 iff all checks pass"},
      {"sweep", "stratum, r11, energy and bound slack over a chart grid"}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  for (const auto& [name, fn] : commands) {
    if (!app.got_subcommand(name)) continue;
    cfg.command = name;
    if (cfg.T == 0 && name == "geodesic") cfg.T = 1;
    if (cfg.T == 0 && name == "classify") cfg.T = 10;
    // geodesic and sweep default to CSV; everything else keeps the JSON default
    const bool tabular = name == "geodesic" || name == "sweep";
    if (tabular && app.count("--format") == 0) cfg.format = "csv";
    try {
      if (cfg.group.empty()) throw Error(ErrorCode::Parse, "missing --group");
      return fn(cfg);
    } catch (const Error& e) {
      std::cerr << "error (" << error_name(e.code()) << "): " << e.what() << "\n";
      return exit_code(e.code());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kIntegrator;
    }
  }
  return kUsage;
}
