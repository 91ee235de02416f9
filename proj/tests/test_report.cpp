#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "gkl/config.hpp"
#include "gkl/report.hpp"

using namespace gkl;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Splits one CSV record (no embedded newlines) honouring quotes.
std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

// Same rows and text fields; numeric fields equal within `rel`.
void compare_csv(const std::string& got, const std::string& want, double rel) {
  const auto g = lines(got), w = lines(want);
  REQUIRE(g.size() == w.size());
  CHECK(g[0] == w[0]);
  for (std::size_t i = 1; i < g.size(); ++i) {
    const auto a = fields(g[i]), b = fields(w[i]);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CAPTURE(i);
      CAPTURE(k);
      char* end = nullptr;
      const double x = std::strtod(b[k].c_str(), &end);
      const bool numeric = !b[k].empty() && *end == '\0' && std::isfinite(x);
      if (numeric && k != 2) {
        const double y = std::strtod(a[k].c_str(), nullptr);
        CHECK(std::abs(y - x) <= rel * std::max(std::abs(x), 1e-300));
      } else if (k != 11) {
        CHECK(a[k] == b[k]);
      }
    }
  }
}

std::string run_csv(const std::vector<std::string>& suites, const VerifyConfig& cfg) {
  std::ostringstream os;
  for (const auto& r : run_suites(suites, cfg)) write_sweep_csv(os, r.rows);
  return os.str();
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  for (double v : {M_PI, 1e-300, -2.5e300, 1.0 / 3.0}) CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("schema golden file") {
  SweepReport a;
  a.suite = "s";
  a.inequality_id = "a,b";
  a.sample_count = 3;
  a.empirical_constant = 0.1;
  a.bound = 1.0;
  a.pass = true;
  a.worst_t = 0.5;
  a.worst_x = {1.0, 2.0};
  a.worst_y = {3.0};
  a.note = "say \"hi\"";
  SweepReport b;
  b.suite = "s2";
  b.inequality_id = "plain";
  b.empirical_constant = INFINITY;
  b.lower_constant = -INFINITY;
  b.refinement_ratio = 1.005;
  b.note = "two\nlines";
  std::ostringstream os;
  write_sweep_csv(os, {a, b}, "generated fixed");
  CHECK(os.str() == slurp(GKL_SOURCE_DIR "/tests/golden/sweep_rows.csv"));
  CHECK(os.str().find('\r') == std::string::npos);
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 12);
  CHECK(is_suite("lemma22"));
  CHECK_FALSE(is_suite("all"));
  CHECK_THROWS_AS(run_suites({"nosuch"}, VerifyConfig{}), std::invalid_argument);
}

TEST_CASE("suite CSVs match the golden files") {
  const RunConfig desk = RunConfig::load(GKL_SOURCE_DIR "/tests/data/desk.cfg");
  compare_csv(run_csv({"symmetry"}, desk.verify), slurp(GKL_SOURCE_DIR "/tests/golden/symmetry_desk.csv"), 1e-6);
  compare_csv(run_csv({"lemma22"}, RunConfig{}.verify), slurp(GKL_SOURCE_DIR "/tests/golden/lemma22_default.csv"),
              1e-9);
}

}  // TEST_SUITE

TEST_SUITE("config") {

TEST_CASE("defaults and documented keys") {
  const RunConfig c;
  CHECK(c.verify.expstar.default_c() == 0.01);
  CHECK(c.verify.domain.seed == 20240607u);
  CHECK(c.output_prefix == "gkl_");
  std::set<std::string> seen;
  for (const auto& k : RunConfig::keys()) {
    CHECK_FALSE(k.doc.empty());
    CHECK(seen.insert(k.key).second);
  }
  for (const char* k : {"quadrature.rel_tol", "sweep.seed", "expstar.default_c", "expstar.K4.1", "output.dir",
                        "run.threads", "verify.glip_stride"}) {
    CHECK(seen.count(k) == 1);
  }
}

TEST_CASE("parsing") {
  const RunConfig c = RunConfig::parse(
      "# comment\n"
      "quadrature.rel_tol = 1e-9   # trailing\n"
      "\n"
      "sweep.x_radii = 0, 1.5,7\n"
      "sweep.y_strategies = radial-offsets, random-ball\n"
      "expstar.Z2 = 0.3\n"
      "sweep.seed=42\n");
  CHECK(c.verify.quadrature.rel_tol == 1e-9);
  CHECK(c.verify.domain.x_radii == std::vector<double>{0.0, 1.5, 7.0});
  CHECK(c.verify.domain.y_strategies.size() == 2);
  CHECK(c.verify.expstar.c("Z2") == 0.3);
  CHECK(c.verify.expstar.c("Z1") == 0.01);
  CHECK(c.verify.domain.seed == 42u);
}

TEST_CASE("errors name the key and the line") {
  auto key_of = [](const std::string& text) {
    try {
      RunConfig::parse(text, "x.cfg");
    } catch (const ConfigError& e) {
      return std::pair{e.key(), std::string(e.what())};
    }
    return std::pair{std::string("<none>"), std::string()};
  };
  auto [k1, m1] = key_of("a.b = 1\n");
  CHECK(k1 == "a.b");
  CHECK(m1 == "x.cfg:1: unknown config key 'a.b'");
  auto [k2, m2] = key_of("\nquadrature.rel_tol = 2\n");
  CHECK(k2 == "quadrature.rel_tol");
  CHECK(m2.rfind("x.cfg:2: quadrature.rel_tol", 0) == 0);
  CHECK(key_of("sweep.t_count = -3\n").first == "sweep.t_count");
  CHECK(key_of("sweep.seed = 1\nsweep.seed = 2\n").first == "sweep.seed");
  CHECK(key_of("sweep.t_lo = 5\nsweep.t_hi = 1\n").first == "sweep.t_hi");
  CHECK(key_of("sweep.y_strategies = sideways\n").first == "sweep.y_strategies");
  CHECK(key_of("verify.alpha = 1\n").first == "verify.alpha");
  CHECK(key_of("novalue\n").second == "x.cfg:1: expected key=value");
  CHECK_THROWS_AS(RunConfig::load("/nonexistent.cfg"), ConfigError);
}

}  // TEST_SUITE
