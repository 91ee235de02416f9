#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gkl/bounds.hpp"
#include "gkl/config.hpp"
#include "gkl/fields.hpp"
#include "gkl/kernel.hpp"
#include "gkl/lipschitz.hpp"
#include "gkl/parallel.hpp"
#include "gkl/report.hpp"

namespace gkl {

namespace {

// Flag or config validation failure: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_point(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (item.empty() || used != item.size() || !std::isfinite(v)) {
      throw UsageError(flag + ": not a comma list of finite numbers: '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag + ": empty point");
  return out;
}

std::string join(const std::vector<double>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + format_number(p[i]);
  return s;
}

std::string value_text(LogValue v) {
  if (v.is_zero()) return "0";
  const double d = v.value();
  if (d == 0.0) return "underflow";
  return format_number(d);
}

std::string timestamp_line() {
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "generated %Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? lo
                    : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                                  static_cast<double>(n - 1));
  }
  out.front() = lo;
  if (n > 1) out.back() = hi;
  return out;
}

// --- eval --------------------------------------------------------------------

struct EvalArgs {
  double t = 0.0;
  std::string x, y, deriv;
  double rel_tol = 1e-10;
};

void run_eval(const EvalArgs& a, std::ostream& out) {
  if (!(a.t > 0.0) || !std::isfinite(a.t)) throw UsageError("--t: must be a finite number > 0");
  const auto xv = parse_point("--x", a.x), yv = parse_point("--y", a.y);
  if (xv.size() != yv.size()) throw UsageError("--y: dimension differs from --x");
  const EuclideanPoint x(xv), y(yv);
  QuadratureSpec spec;
  spec.rel_tol = a.rel_tol;
  const KernelQuery q(a.t, x, y);
  LogValue v;
  std::string quantity = "P";
  if (a.deriv.empty()) {
    v = poisson_kernel(q, spec);
  } else if (a.deriv == "t") {
    v = dt_poisson_kernel(q, spec);
    quantity = "d_t P";
  } else {
    std::size_t k = 0;
    if (a.deriv == "x1") {
      k = 1;
    } else if (a.deriv.rfind("xi:", 0) == 0) {
      const std::string num = a.deriv.substr(3);
      if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("--deriv: expected xi:k with an integer k");
      }
      k = std::stoul(num);
    } else {
      throw UsageError("--deriv: expected t, x1 or xi:k, got '" + a.deriv + "'");
    }
    if (k < 1 || k > x.dim()) throw UsageError("--deriv: index out of range 1.." + std::to_string(x.dim()));
    v = dx_poisson_kernel(q, k, spec);
    quantity = "d_x" + std::to_string(k) + " P";
  }
  out << "t,x,y,quantity,log_value,sign,value\n";
  out << format_number(a.t) << ',' << join(xv) << ',' << join(yv) << ',' << quantity << ','
      << format_number(v.log_magnitude()) << ',' << v.sign() << ',' << value_text(v) << '\n';
}

// --- bounds ------------------------------------------------------------------

struct BoundsArgs {
  double t = 0.0;
  std::string x, y, family = "K";
  double c = 0.01;
};

void run_bounds(const BoundsArgs& a, std::ostream& out) {
  if (!(a.t > 0.0) || !std::isfinite(a.t)) throw UsageError("--t: must be a finite number > 0");
  if (!(a.c > 0.0) || !std::isfinite(a.c)) throw UsageError("--c: must be a finite number > 0");
  const auto xv = parse_point("--x", a.x), yv = parse_point("--y", a.y);
  if (xv.size() != yv.size()) throw UsageError("--y: dimension differs from --x");
  if (a.family != "K" && a.family != "Z" && a.family != "K2tilde") {
    throw UsageError("--family: expected K, Z or K2tilde, got '" + a.family + "'");
  }
  if (a.family == "K2tilde" && xv.size() != 1) throw UsageError("--family: K2tilde is 1-D only");
  const KernelQuery q(a.t, EuclideanPoint(xv), EuclideanPoint(yv));
  const ExpStarConfig cfg(a.c);
  out << "term,indicator,log_value,value\n";
  auto row = [&](const std::string& id, const std::string& ind, LogValue v) {
    out << id << ',' << ind << ',' << format_number(v.log_magnitude()) << ',' << value_text(v) << '\n';
  };
  if (a.family == "K2tilde") {
    const LogValue k = LogValue::from_double(k2_tilde_1d(a.t, xv[0], yv[0]));
    row("K2tilde", "true", k);
    row("total", "", k);
    row("P/total", "", poisson_kernel(q) / k);
    return;
  }
  BoundEvaluation b;
  LogValue lhs;
  std::string ratio_id;
  if (a.family == "K") {
    b = k_bound(q, cfg);
    lhs = poisson_kernel(q);
    ratio_id = "P/total";
  } else {
    b = z_bound(q, cfg);
    const KernelValues kv = evaluate_kernel(q, {}, kSpaceDeriv);
    lhs = q.axial().r > 0.0 ? kv.radial.abs()
                            : kv.transverse.abs() * LogValue::from_double(std::sqrt(q.axial().y_norm_squared()));
    ratio_id = "|d_x1 P|/total";
  }
  for (const auto& [id, v] : b.terms) row(id, b.active_indicators.count(id) ? "true" : "false", v);
  row("total", "", b.total);
  row(ratio_id, "", lhs / b.total);
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite, config, out_dir;
  bool no_timestamp = false;
};

int run_verify(const VerifyArgs& a, std::optional<std::size_t> threads, std::ostream& out) {
  if (a.suite != "all" && !is_suite(a.suite)) throw UsageError("suite: unknown suite '" + a.suite + "'");
  RunConfig cfg;
  if (!a.config.empty()) cfg = RunConfig::load(a.config);
  if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
  if (!threads && cfg.threads > 0) set_thread_count(cfg.threads);
  std::filesystem::create_directories(cfg.output_dir);
  const std::string stamp = a.no_timestamp ? "" : timestamp_line();
  bool all_pass = true;
  run_suites({a.suite}, cfg.verify, [&](const SuiteResult& r) {
    const std::filesystem::path file =
        std::filesystem::path(cfg.output_dir) / (cfg.output_prefix + r.suite + ".csv");
    std::ofstream f(file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + file.string());
    write_sweep_csv(f, r.rows, stamp);
    std::size_t failed = 0;
    for (const auto& row : r.rows) failed += row.pass ? 0 : 1;
    out << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.rows.size() << " rows";
    if (failed) out << ", " << failed << " failed";
    out << ") " << file.string() << '\n';
    out.flush();
    all_pass = all_pass && r.pass;
  });
  return all_pass ? 0 : 1;
}

// --- lip ---------------------------------------------------------------------

struct LipArgs {
  std::string function, grid;
  double alpha = 0.5;
  std::size_t dim = 1;
  double t_lo = 0.01, t_hi = 10.0;
  std::size_t t_count = 13;
  double x_max = 30.0;
  std::size_t x_count = 41;
  double x_far = 1000.0;
  std::string out = "lip_profile.csv", modulus_out = "lip_modulus.csv";
  bool no_timestamp = false;
};

int run_lip(const LipArgs& a, std::ostream& out) {
  if (a.function.empty() == a.grid.empty()) {
    throw UsageError("--function/--grid: give exactly one of them");
  }
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha: must lie in (0, 1)");
  if (!(a.t_lo > 0.0 && a.t_lo < a.t_hi && std::isfinite(a.t_hi))) {
    throw UsageError("--t-lo/--t-hi: need 0 < t-lo < t-hi");
  }
  if (a.t_count < 2) throw UsageError("--t-count: must be >= 2");
  if (!(a.x_max >= 0.0 && std::isfinite(a.x_max))) throw UsageError("--x-max: must be >= 0");
  if (a.x_count < 1) throw UsageError("--x-count: must be >= 1");
  if (!(a.x_far >= 0.0 && std::isfinite(a.x_far))) throw UsageError("--x-far: must be >= 0");

  FieldPtr f;
  std::string label;
  if (!a.grid.empty()) {
    try {
      f = GridField::load(a.grid);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--grid: ") + e.what());
    } catch (const std::runtime_error& e) {
      throw UsageError(std::string("--grid: ") + e.what());
    }
    label = "grid(" + a.grid + ")";
  } else {
    if (a.dim < 1 || a.dim > 3) throw UsageError("--dim: must be 1, 2 or 3");
    try {
      f = parse_field(a.function, a.dim);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--function: ") + e.what());
    }
    label = a.function;
  }
  const std::size_t n = f->dim();
  const HolderExponent alpha(a.alpha);
  const std::vector<double> ts = log_grid(a.t_lo, a.t_hi, a.t_count);
  std::vector<EuclideanPoint> xs;
  std::vector<double> x1;
  for (std::size_t i = 0; i < a.x_count; ++i) {
    const double v = a.x_count == 1 ? 0.0
                                    : -a.x_max + 2.0 * a.x_max * static_cast<double>(i) /
                                                     static_cast<double>(a.x_count - 1);
    x1.push_back(v);
    xs.push_back(EuclideanPoint::on_axis(n, v));
  }
  // far points: radii 10^k and 3*10^k in (x_max, x_far], each with eight
  // phase offsets k pi/4 (large-|x| behaviour shows at |x| ~ 1/t)
  std::vector<double> far_radii;
  for (double dec = 1.0; dec <= a.x_far; dec *= 10.0) {
    for (double r : {dec, 3.0 * dec}) {
      if (r > a.x_max && r <= a.x_far) far_radii.push_back(r);
    }
  }
  for (double r : far_radii) {
    for (int k = 0; k < 8; ++k) {
      x1.push_back(r + k * std::acos(-1.0) / 4.0);
      xs.push_back(EuclideanPoint::on_axis(n, x1.back()));
    }
  }
  GlipOptions opt;
  const GlipEstimate est = glip_seminorm_estimate(*f, alpha, ts, xs, opt);

  std::ostringstream grid_doc;
  grid_doc.precision(17);
  grid_doc << "# function " << label << "; alpha " << a.alpha << "; t log-spaced [" << a.t_lo << ", "
           << a.t_hi << "] x " << a.t_count << "; x = x1 e1, x1 uniform [" << -a.x_max << ", "
           << a.x_max << "] x " << a.x_count;
  if (!far_radii.empty()) {
    grid_doc << "; plus R + k pi/4, k = 0..7, R in {";
    for (std::size_t i = 0; i < far_radii.size(); ++i) grid_doc << (i ? ", " : "") << far_radii[i];
    grid_doc << "}";
  }
  const std::string stamp = a.no_timestamp ? "" : "# " + timestamp_line() + "\n";
  {
    std::ofstream p(a.out, std::ios::binary);
    if (!p) throw std::runtime_error("cannot write " + a.out);
    p << stamp << grid_doc.str() << '\n' << "t,sup_dt,weighted\n";
    for (const auto& pt : est.profile) {
      p << format_number(pt.t) << ',' << format_number(pt.sup_dt) << ','
        << format_number(pt.weighted) << '\n';
    }
  }
  // modulus constant: all grid pairs plus close pairs at three scales
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) pairs.push_back({xs[i], xs[j]});
    for (double d : {1e-3, 1e-2, 1e-1}) pairs.push_back({xs[i], EuclideanPoint::on_axis(n, x1[i] + d)});
  }
  const double lip = lip_constant_estimate(*f, pairs, alpha);
  {
    std::ofstream m(a.modulus_out, std::ios::binary);
    if (!m) throw std::runtime_error("cannot write " + a.modulus_out);
    m << stamp << grid_doc.str() << '\n'
      << "function,alpha,pairs,modulus_constant\n"
      << csv_field(label) << ',' << format_number(a.alpha) << ',' << pairs.size() << ','
      << format_number(lip) << '\n';
  }
  // growing: the weighted profile at the smallest t exceeds 1.2 times its
  // value one decade of t higher
  const auto& prof = est.profile;
  std::size_t ref = 0;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (std::abs(std::log(prof[i].t / (10.0 * a.t_lo))) < std::abs(std::log(prof[ref].t / (10.0 * a.t_lo)))) {
      ref = i;
    }
  }
  const bool growing = ref != 0 && prof[0].weighted > 1.2 * prof[ref].weighted;
  std::ostringstream line;
  line.precision(6);
  line << "t^(1-a) sup|d_t P_t f|: max " << est.seminorm << ", at t=" << prof[0].t << " "
       << prof[0].weighted << " vs " << prof[ref].weighted << " at t=" << prof[ref].t
       << "; modulus constant " << lip;
  out << (growing ? "warn: profile grows as t decreases; " : "pass: profile bounded; ") << line.str()
      << '\n';
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian Poisson kernel bounds and Gaussian Lipschitz spaces"};
  app.require_subcommand(0, 1);
  std::optional<std::size_t> threads;
  app.add_option("--threads", threads, "worker threads (GKL_THREADS overrides)");
  bool help_config = false;
  app.add_flag("--help-config", help_config, "list every config key with its default");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "one kernel value or derivative");
  eval->add_option("--t", ea.t, "time t > 0")->required();
  eval->add_option("--x", ea.x, "x as a comma list")->required();
  eval->add_option("--y", ea.y, "y as a comma list")->required();
  eval->add_option("--deriv", ea.deriv, "t, x1 or xi:k");
  eval->add_option("--rel-tol", ea.rel_tol, "quadrature relative tolerance")->check(CLI::Range(1e-15, 0.1));

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "upper-bound kernel terms at one point");
  bounds->add_option("--t", ba.t, "time t > 0")->required();
  bounds->add_option("--x", ba.x, "x as a comma list")->required();
  bounds->add_option("--y", ba.y, "y as a comma list")->required();
  bounds->add_option("--c", ba.c, "exp* decay constant");
  bounds->add_option("--family", ba.family, "K, Z or K2tilde");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", va.suite, "suite name or all")->required();
  verify->add_option("--config", va.config, "key=value config file");
  verify->add_option("--out-dir", va.out_dir, "overrides output.dir");
  verify->add_flag("--no-timestamp", va.no_timestamp, "omit the timestamp line");

  LipArgs la;
  auto* lip = app.add_subcommand("lip", "Lipschitz-space profile of a field");
  lip->add_option("--function", la.function, "built-in field, name or name(args)");
  lip->add_option("--grid", la.grid, "grid file");
  lip->add_option("--alpha", la.alpha, "Holder exponent in (0, 1)");
  lip->add_option("--dim", la.dim, "dimension of a built-in field");
  lip->add_option("--t-lo", la.t_lo, "smallest t");
  lip->add_option("--t-hi", la.t_hi, "largest t");
  lip->add_option("--t-count", la.t_count, "log-spaced t values");
  lip->add_option("--x-max", la.x_max, "x1 grid half-width");
  lip->add_option("--x-count", la.x_count, "x1 grid points");
  lip->add_option("--x-far", la.x_far, "largest far radius (0: none)");
  lip->add_option("--out", la.out, "profile CSV");
  lip->add_option("--modulus-out", la.modulus_out, "modulus-constant CSV");
  lip->add_flag("--no-timestamp", la.no_timestamp, "omit the timestamp line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (help_config) {
    for (const auto& k : RunConfig::keys()) {
      out << k.key << " = " << k.default_value << "\n    " << k.doc << '\n';
    }
    return 0;
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required (eval, bounds, verify, lip)\nRun with --help for more information.\n";
    return 2;
  }
  try {
    if (threads) set_thread_count(*threads);
    if (*eval) {
      run_eval(ea, out);
      return 0;
    }
    if (*bounds) {
      run_bounds(ba, out);
      return 0;
    }
    if (*verify) return run_verify(va, threads, out);
    if (*lip) return run_lip(la, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const QuadratureError& e) {
    err << "quadrature failure: " << e.what() << '\n';
    return 3;
  } catch (const PipelineDisagreement& e) {
    err << "quadrature failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gkl
