#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(CARNOT_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, got);
  int status = pclose(f);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("geodesic") {
  Run r = run("geodesic --group goursat:3 --covector 1,0,0 --T 1 --every 500");
  CHECK(r.rc == 0);
  CHECK(r.out.find("t,x1,x2,x3,h1,h2,h3,H\n") != std::string::npos);
  CHECK(r.out.find("\n1,1.0000000000000") != std::string::npos);

  Run c = run("geodesic --group cartan --covector 1,0,1,0,0 --T 10 --every 100");
  CHECK(c.rc == 0);
  std::istringstream is(c.out);
  std::string line;
  std::getline(is, line);  // config
  std::getline(is, line);  // header
  double e0 = 0, worst = 0;
  bool first = true;
  while (std::getline(is, line)) {
    double e = std::stod(line.substr(line.rfind(',') + 1));
    if (first) e0 = e, first = false;
    worst = std::max(worst, std::abs(e - e0));
  }
  CHECK(worst < 1e-9);

  Run bad = run("geodesic --group goursat:2 --covector 1,0", true);
  CHECK(bad.rc == 2);
  CHECK(bad.out.find("unsupported group") != std::string::npos);
  CHECK(run("geodesic --group cartan --covector 1,0,x,0,0").rc == 2);
  CHECK(run("geodesic --group cartan --covector 1,0,1").rc == 2);
  CHECK(run("geodesic --group cartan --covector 0.6,0.8,3,2,-1 --T 20 --step 0.5").rc == 3);
  CHECK(run("frobnicate").rc == 2);
}

TEST_CASE("classify") {
  auto j = parse(run("classify --group engel --chart 0,0,0"));
  CHECK(j["stratum"] == "C7");
  CHECK(j["abnormal"] == true);
  auto c = parse(run("classify --group cartan --covector 1,0,1,0,0"));
  CHECK(c["growth"] == nlohmann::json::array({2, 3, 4, 5}));
  CHECK(c["loss_times"].empty());
  CHECK(c["oracle_agrees"] == true);
  auto e = parse(run("classify --group engel --chart 0.5,0.3,1 --T 20"));
  CHECK(e["stratum"] == "C1+");
  CHECK(e["loss_times"].size() >= 3);
  CHECK(e["loss_spacing"]["max_deviation"].get<double>() < 1e-7);
}

TEST_CASE("curvature") {
  Run r = run("curvature --group goursat:4 --covector 1,0,1,0");
  CHECK(r.rc == 0);
  auto j = parse(r);
  CHECK(j["r11"] == "-4");
  CHECK(j["r11_float"] == -4.0);
  auto h = parse(run("curvature --group goursat:3 --covector 1,0,2"));
  CHECK(h["R"] == nlohmann::json::parse(R"([["8/5","0"],["0","0"]])"));
  CHECK(h["trace_I"] == 5);
  CHECK(run("curvature --group cartan --covector 1,0,0,1,0").rc == 5);
  CHECK(run("curvature --group cartan --covector 1,0,0,0,1").rc == 4);
  CHECK(run("curvature --group cartan --covector 0.6,0.8,1/2,-1,2e-1").rc == 0);
}

TEST_CASE("verify") {
  Run r = run("verify --suite exact --group goursat:5 --seed 7");
  CHECK(r.rc == 0);
  auto j = parse(r);
  int r11_checks = 0;
  for (const auto& c : j["reports"][0]["checks"])
    if (c["name"].get<std::string>().rfind("r11 ", 0) == 0 && c["pass"] == true) ++r11_checks;
  CHECK(r11_checks == 50);
  Run f = run("verify --suite fit --group cartan");
  CHECK(f.rc == 0);
  auto fj = parse(f);
  CHECK(fj["reports"][0]["checks"][0]["expected"] == "-16");
  Run s = run("verify --suite slow --group goursat:3");
  CHECK(s.rc == 0);
  CHECK(run("verify --suite fit --group cartan --tol-lead 1e-30").rc == 6);
  CHECK(run("verify --suite nope --group cartan").rc == 2);
}

TEST_CASE("sweep") {
  Run e = run("sweep --group engel --grid theta=0.3:2.8:6,c=-2:2:5,alpha=-1.5:1.5:4");
  CHECK(e.rc == 0);
  std::istringstream is(e.out);
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("# config: ", 0) == 0);
  std::getline(is, line);
  CHECK(line == "theta,c,alpha,stratum,growth,r11,E,slack,subtracted_square");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    REQUIRE(f.size() == 9);
    double slack = std::stod(f[7]), square = std::stod(f[8]);
    CHECK(slack >= -1e-12);
    CHECK(std::abs(slack - square) <= 1e-10 * std::max(1.0, square));
  }
  CHECK(rows == 120);
  Run c = run("sweep --group cartan --grid theta=0:3:4,c=0:1:2,alpha=1:1:1,beta=0.3:0.3:1");
  CHECK(c.rc == 0);
  CHECK(c.out.find("singular") != std::string::npos);
  CHECK(run("sweep --group cartan --grid theta=0:3").rc == 2);
  CHECK(run("sweep --group goursat:5 --grid theta=0:3:2").rc == 2);
}

TEST_CASE("identical config and seed give identical output") {
  const char* a = "/tmp/carnot_cli_test_a.json";
  const char* b = "/tmp/carnot_cli_test_b.json";
  CHECK(run(std::string("verify --suite exact --group cartan --seed 3 --out ") + a).rc == 0);
  CHECK(run(std::string("verify --suite exact --group cartan --seed 3 --out ") + b).rc == 0);
  auto slurp = [](const char* p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  std::string sa = slurp(a);
  CHECK(!sa.empty());
  CHECK(sa == slurp(b));
  auto j = nlohmann::json::parse(sa);
  CHECK(j["config"]["seed"] == 3);
  CHECK(j["config"]["suite"] == "exact");
  std::remove(a);
  std::remove(b);
}
