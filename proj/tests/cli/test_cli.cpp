#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;
using doctest::Approx;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BERTRAND_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Per-process scratch directory, removed at exit.
struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("bertrand_cli_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path scratch(const std::string& name) {
  static Scratch s;
  return s.dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden CSV files") {
  const fs::path golden(BERTRAND_GOLDEN_DIR);
  const std::pair<const char*, const char*> cases[] = {
      {"spectrum --model tietz --count 10 --format csv", "spectrum_tietz_10.csv"},
      {"spectrum --model hydrogen3d --Z 1 --n 1", "spectrum_hydrogen3d_n1.csv"},
      {"table --rule madelung --periods janet", "table_janet.csv"},
      {"table --rule madelung --periods conventional --n-periods 7", "table_conventional.csv"},
      {"table --rule madelung --z-min 1 --z-max 36", "table_madelung_1_36.csv"},
      {"table --rule nl --order 10", "order_nl_10.csv"},
  };
  for (const auto& [args, file] : cases) {
    CAPTURE(args);
    const auto r = run(args);
    CHECK(r.status == 0);
    CHECK(r.out == slurp(golden / file));
  }
}

TEST_CASE("spectrum rows") {
  const auto rows = parse_csv(run("spectrum --model tietz --count 10 --format csv").out);
  REQUIRE(rows.size() == 11u);
  CHECK(rows[0] == std::vector<std::string>{"model", "Z", "n_hat", "l", "group_key", "energy"});
  // rows arrive grouped by n_hat + l
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stoi(rows[i][4]) == std::stoi(rows[i][2]) + std::stoi(rows[i][3]));
    if (i > 1) CHECK(std::stoi(rows[i][4]) >= std::stoi(rows[i - 1][4]));
  }
  const auto h = parse_csv(run("spectrum --model hydrogen3d --Z 1 --n 1").out);
  REQUIRE(h.size() == 2u);
  CHECK(std::stod(h[1][5]) == -0.5);
}

TEST_CASE("sturm couplings") {
  const auto rows = parse_csv(run("sturm --gamma 1 --l 0 --count 3").out);
  REQUIRE(rows.size() == 4u);
  CHECK(rows[0] == std::vector<std::string>{"gamma", "l", "k", "beta", "analytic_beta", "rel_err"});
  const double expect[] = {3.0, 15.0, 35.0};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::stod(rows[i + 1][3]) == Approx(expect[i]).epsilon(1e-6));
    CHECK(std::stod(rows[i + 1][5]) <= 1e-6);
  }
  const auto half = parse_csv(run("sturm --gamma 0.5 --l 1 --count 1").out);
  REQUIRE(half.size() == 2u);
  CHECK(std::stod(half[1][3]) == Approx(12.0).epsilon(1e-6));

  const auto sweep = parse_csv(run("sturm --gamma 0.5 --l 0 --l-max 3 --count 3").out);
  CHECK(sweep.size() == 13u);
  for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(std::stod(sweep[i][5]) <= 1e-6);
}

TEST_CASE("sturm eigenfunction file") {
  const auto path = scratch("eig.csv");
  const auto r = run("sturm --gamma 1 --l 0 --count 2 --eigenfunction " + path.string() + " --eig-index 1");
  CHECK(r.status == 0);
  const auto rows = parse_csv(slurp(path));
  REQUIRE(rows.size() > 100u);
  CHECK(rows[0] == std::vector<std::string>{"r", "u"});
  int changes = 0;
  double prev = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double u = std::stod(rows[i][1]);
    if (std::fabs(u) < 1e-9) continue;
    if (prev != 0.0 && (u > 0) != (prev > 0)) ++changes;
    prev = u;
  }
  CHECK(changes == 1);
}

TEST_CASE("orbit trajectory and SVG") {
  const auto svg_path = scratch("orbit.svg");
  const auto r = run("orbit --delta 2 --svg " + svg_path.string());
  CHECK(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() > 10u);
  CHECK(rows[0] == std::vector<std::string>{"t", "r", "phi", "p_r", "x", "y"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double rr = std::stod(rows[i][1]), ph = std::stod(rows[i][2]);
    CHECK(std::stod(rows[i][4]) == Approx(rr * std::cos(ph)).epsilon(1e-9).scale(1.0));
  }

  const auto svg = slurp(svg_path);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("viewBox=") != std::string::npos);
  const auto first = svg.find("<polyline");
  REQUIRE(first != std::string::npos);
  CHECK(svg.find("<polyline", first + 1) == std::string::npos);
  CHECK(svg.find("self_intersections: 1") != std::string::npos);
  CHECK(svg.find("period:") != std::string::npos);
  CHECK(svg.find("residual") != std::string::npos);
}

TEST_CASE("orbit JSON summaries") {
  const auto two = nlohmann::json::parse(run("orbit --delta 2 --format json").out);
  const auto& s = two["results"][0];
  CHECK(s["closed"].get<bool>());
  CHECK(s["self_intersections"].get<int>() == 1);
  CHECK(std::fabs(s["period"].get<double>() / s["period_formula"].get<double>() - 1.0) <= 5e-3);
  for (const auto& c : two["checks"]) CHECK(c["pass"].get<bool>());

  const auto one = nlohmann::json::parse(run("orbit --delta 1 --format json").out);
  CHECK(one["results"][0]["closed"].get<bool>());
  CHECK(one["results"][0]["self_intersections"].get<int>() == 0);

  const auto perlick = nlohmann::json::parse(run("orbit --model perlick --beta 1/2 --K -1 --format json").out);
  CHECK(perlick["results"][0]["closed"].get<bool>());
  CHECK(perlick["results"][0]["delta"].is_null());
  CHECK(perlick["config"]["delta"].is_null());
}

TEST_CASE("Thomas-Fermi table") {
  const auto rows = parse_csv(run("tf --xmax 20").out);
  CHECK(rows[0] == std::vector<std::string>{"x", "phi_tf", "phi_tietz", "abs_diff"});
  bool found = false;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][0] == "1") {
      found = true;
      CHECK(std::stod(rows[i][2]) == Approx(0.42371).epsilon(1e-5));
    }
  CHECK(found);

  const auto j = nlohmann::json::parse(run("tf --format json").out);
  std::vector<std::string> names;
  for (const auto& c : j["checks"]) names.push_back(c["name"]);
  CHECK(names == std::vector<std::string>{"boundary_value", "max_abs_diff_0_10", "max_abs_diff_0_2"});
  CHECK(j["checks"][1]["pass"].get<bool>());
  CHECK_FALSE(j["checks"][2]["pass"].get<bool>());  // 0.0226 against 0.02

  const auto svg_path = scratch("tf.svg");
  CHECK(run("tf --svg " + svg_path.string()).status == 0);
  const auto svg = slurp(svg_path);
  const auto first = svg.find("<polyline");
  REQUIRE(first != std::string::npos);
  const auto second = svg.find("<polyline", first + 1);
  REQUIRE(second != std::string::npos);
  CHECK(svg.find("<polyline", second + 1) == std::string::npos);
}

TEST_CASE("table configurations") {
  const auto rows = parse_csv(run("table --rule madelung --z-min 18 --z-max 19").out);
  REQUIRE(rows.size() == 3u);
  CHECK(rows[1][2] == "1s2 2s2 2p6 3s2 3p6");
  CHECK(rows[2][2] == "1s2 2s2 2p6 3s2 3p6 4s1");
  const auto nl = parse_csv(run("table --rule nl --z-min 19 --z-max 19").out);
  CHECK(nl[1][2] == "1s2 2s2 2p6 3s2 3p6 3d1");
  const auto all = parse_csv(run("table --rule fock_n --z-min 1 --z-max 120").out);
  REQUIRE(all.size() == 121u);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(std::stoi(all[i][3]) == static_cast<int>(i));
  const auto ext = run("table --periods janet --n-periods 10");
  CHECK(ext.status == 0);
  CHECK(parse_csv(ext.out)[1].back() == "50");
}

TEST_CASE("geomcheck passes every invariant") {
  const auto r = run("geomcheck");
  CHECK(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() >= 13u);
  CHECK(rows[0] == std::vector<std::string>{"invariant", "value", "tolerance", "status"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] == "pass");
}

TEST_CASE("json documents share one layout") {
  for (const char* args : {"spectrum --format json", "sturm --format json", "orbit --format json", "tf --format json",
                           "table --format json", "geomcheck --format json"}) {
    CAPTURE(args);
    const auto r = run(args);
    CHECK(r.status == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"config", "results", "checks"});
    CHECK(j["results"].is_array());
    for (const auto& c : j["checks"]) {
      CHECK(c.contains("name"));
      CHECK(c.contains("pass"));
    }
  }
}

TEST_CASE("output file option matches stdout") {
  const auto path = scratch("spectrum.json");
  CHECK(run("spectrum --count 5 --format json -o " + path.string()).status == 0);
  CHECK(slurp(path) == run("spectrum --count 5 --format json").out);
}

TEST_CASE("exit codes") {
  CHECK(run("--help").status == 0);
  CHECK(run("spectrum --help").status == 0);
  CHECK(run("").status == 2);
  CHECK(run("spectrum --bogus").status == 2);
  CHECK(run("spectrum --model helium").status == 2);
  CHECK(run("spectrum --Z 0").status == 2);
  CHECK(run("spectrum --format xml").status == 2);
  CHECK(run("sturm --gamma 0.7").status == 2);
  CHECK(run("sturm --count 0").status == 2);
  CHECK(run("orbit --delta 0.5").status == 2);
  CHECK(run("tf --xmax 5").status == 2);
  CHECK(run("table --z-min 0").status == 2);
  CHECK(run("table --periods janet --n-periods 13").status == 2);
  CHECK(run("geomcheck --points 0").status == 2);
  CHECK(run("spectrum -o /nonexistent/dir/out.csv").status == 1);
}

TEST_CASE("determinism across runs and thread counts") {
  for (const char* args : {"spectrum --count 30", "sturm --l-max 3", "orbit --delta 1.5 --format json", "tf",
                           "table --rule nl --z-max 120 --format json", "geomcheck"}) {
    CAPTURE(args);
    CHECK(run(args).out == run(args).out);
  }
  const std::string sweep = "sturm --gamma 0.5 --l 0 --l-max 4 --count 2";
  setenv("BERTRAND_ATOMS_THREADS", "1", 1);
  const auto serial = run(sweep).out;
  setenv("BERTRAND_ATOMS_THREADS", "6", 1);
  const auto parallel = run(sweep).out;
  unsetenv("BERTRAND_ATOMS_THREADS");
  CHECK(serial == parallel);
}

}  // TEST_SUITE
