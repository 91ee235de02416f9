#include "gkl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gkl {

const char* const kSweepCsvHeader =
    "suite,inequality_id,sample_count,empirical_constant,lower_constant,bound,refinement_ratio,"
    "pass,worst_t,worst_x,worst_y,note";

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {
std::string join_point(const std::vector<double>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + format_number(p[i]);
  return s;
}
}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepReport>& rows,
                     const std::string& timestamp_line) {
  if (!timestamp_line.empty()) os << "# " << timestamp_line << '\n';
  os << kSweepCsvHeader << '\n';
  for (const SweepReport& r : rows) {
    os << csv_field(r.suite) << ',' << csv_field(r.inequality_id) << ',' << r.sample_count << ','
       << format_number(r.empirical_constant) << ',' << format_number(r.lower_constant) << ','
       << format_number(r.bound) << ',' << format_number(r.refinement_ratio) << ','
       << (r.pass ? "true" : "false") << ',' << format_number(r.worst_t) << ','
       << join_point(r.worst_x) << ',' << join_point(r.worst_y) << ',' << csv_field(r.note) << '\n';
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "normalization", "semigroup", "symmetry",     "upper-bound",  "derivative-bounds",
      "sharpness",     "domination", "mass",        "l1",           "lemma22",
      "glip-forward",  "glip-converse"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names_in,
                                    const VerifyConfig& cfg,
                                    const std::function<void(const SuiteResult&)>& on_done) {
  std::vector<std::string> names;
  for (const std::string& n : names_in) {
    if (n == "all") {
      names.insert(names.end(), suite_names().begin(), suite_names().end());
    } else if (is_suite(n)) {
      names.push_back(n);
    } else {
      throw std::invalid_argument("unknown suite '" + n + "'");
    }
  }
  const bool both = std::count(names.begin(), names.end(), "upper-bound") > 0 &&
                    std::count(names.begin(), names.end(), "derivative-bounds") > 0;
  std::vector<SweepReport> shared;
  if (both) shared = check_bound_sweep(cfg);

  std::vector<SuiteResult> out;
  for (const std::string& n : names) {
    SuiteResult r;
    r.suite = n;
    if (n == "normalization") {
      r.rows = {check_normalization(cfg)};
    } else if (n == "semigroup") {
      r.rows = {check_semigroup(cfg)};
    } else if (n == "symmetry") {
      r.rows = check_symmetry(cfg);
    } else if (n == "upper-bound") {
      r.rows = {both ? shared.front() : check_upper_bound(cfg)};
    } else if (n == "derivative-bounds") {
      if (both) {
        r.rows.assign(shared.begin() + 1, shared.end());
        for (SweepReport& s : check_derivative_consistency(cfg)) r.rows.push_back(std::move(s));
      } else {
        r.rows = check_derivative_bounds(cfg);
      }
    } else if (n == "sharpness") {
      r.rows = check_sharpness(cfg);
    } else if (n == "domination") {
      r.rows = check_domination(cfg);
    } else if (n == "mass") {
      r.rows = check_kernel_mass(cfg);
    } else if (n == "l1") {
      r.rows = check_l1_derivatives(cfg);
    } else if (n == "lemma22") {
      r.rows = check_aux_integral(cfg);
    } else if (n == "glip-forward") {
      r.rows = check_theorem11_forward(cfg);
    } else if (n == "glip-converse") {
      r.rows = check_theorem11_converse(cfg);
    }
    r.pass = !r.rows.empty() &&
             std::all_of(r.rows.begin(), r.rows.end(), [](const SweepReport& s) { return s.pass; });
    if (on_done) on_done(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gkl
