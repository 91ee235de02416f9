#include "gkl/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace gkl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
    throw ConfigError(key, key + ": not a finite number: '" + v + "'");
  }
  return d;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(key, key + ": not a non-negative integer: '" + v + "'");
  }
  errno = 0;
  const unsigned long long u = std::strtoull(v.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError(key, key + ": integer out of range: '" + v + "'");
  return u;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
  if (out.empty()) throw ConfigError(key, key + ": empty list");
  return out;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, key + ": " + what);
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& v)>;

struct Entry {
  RunConfig::KeyDoc doc;
  Setter set;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

template <class T>
std::string fmt_ulist(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

const std::vector<Entry>& table() {
  static const std::vector<Entry> entries = [] {
    const RunConfig d;
    const VerifyConfig& v = d.verify;
    std::vector<Entry> e;
    auto add = [&](std::string key, std::string def, std::string doc, Setter s) {
      e.push_back({{std::move(key), std::move(def), std::move(doc)}, std::move(s)});
    };
    // quadrature
    add("quadrature.rel_tol", fmt(v.quadrature.rel_tol), "relative tolerance of the kernel s-integral, in (0, 1)",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const double x = to_double(k, s);
          require(x > 0.0 && x < 1.0, k, "must lie in (0, 1)");
          c.verify.quadrature.rel_tol = x;
        });
    add("quadrature.max_panels", std::to_string(v.quadrature.max_panels), "panel cap per kernel evaluation, >= 16",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x >= 16 && x <= 1000000, k, "must lie in [16, 1e6]");
          c.verify.quadrature.max_panels = static_cast<int>(x);
        });
    add("quadrature.nodes_per_panel", std::to_string(v.quadrature.nodes_per_panel),
        "Gauss-Legendre nodes per panel, in [4, 64]",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x >= 4 && x <= 64, k, "must lie in [4, 64]");
          c.verify.quadrature.nodes_per_panel = static_cast<int>(x);
        });
    add("quadrature.tail_cut", fmt(v.quadrature.tail_cut), "s beyond which the tail substitution is used, > 1",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const double x = to_double(k, s);
          require(x > 1.0, k, "must be > 1");
          c.verify.quadrature.tail_cut = x;
        });
    // exp* constants
    add("expstar.default_c", fmt(v.expstar.default_c()), "decay constant c of every exp* factor, > 0",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const double x = to_double(k, s);
          require(x > 0.0, k, "must be > 0");
          c.verify.expstar.set_default(x);
        });
    for (const std::string& id : ExpStarConfig::term_ids()) {
      add("expstar." + id, "default_c", "override of c for term " + id + ", > 0",
          [id](RunConfig& c, const std::string& k, const std::string& s) {
            const double x = to_double(k, s);
            require(x > 0.0, k, "must be > 0");
            c.verify.expstar.set(id, x);
          });
    }
    // sweep domain
    const SweepDomain& sd = v.domain;
    add("sweep.t_lo", fmt(sd.t_lo), "smallest t, > 0", [](RunConfig& c, const std::string& k, const std::string& s) {
      c.verify.domain.t_lo = to_double(k, s);
      require(c.verify.domain.t_lo > 0.0, k, "must be > 0");
    });
    add("sweep.t_hi", fmt(sd.t_hi), "largest t, > t_lo", [](RunConfig& c, const std::string& k, const std::string& s) {
      c.verify.domain.t_hi = to_double(k, s);
      require(c.verify.domain.t_hi > 0.0, k, "must be > 0");
    });
    add("sweep.t_count", std::to_string(sd.t_count), "log-spaced t values, >= 2",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x >= 2 && x <= 10000, k, "must lie in [2, 1e4]");
          c.verify.domain.t_count = x;
        });
    add("sweep.x_radii", fmt_list(sd.x_radii), "comma list of |x| values, >= 0",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_doubles(k, s);
          for (double r : x) require(r >= 0.0, k, "radii must be >= 0");
          c.verify.domain.x_radii = x;
        });
    add("sweep.y_strategies", "radial-offsets,transverse-offsets,random-ball",
        "comma list of radial-offsets, transverse-offsets, random-ball, set-conditioned",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          std::vector<YStrategy> out;
          for (const auto& name : split_list(s)) {
            try {
              out.push_back(parse_y_strategy(name));
            } catch (const std::invalid_argument& e) {
              throw ConfigError(k, k + ": " + e.what());
            }
          }
          require(!out.empty(), k, "empty list");
          c.verify.domain.y_strategies = out;
        });
    add("sweep.conditioned_set", to_string(sd.conditioned_set), "E1..E4, for set-conditioned",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          try {
            c.verify.domain.conditioned_set = parse_sharp_set(s);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(k, k + ": " + e.what());
          }
        });
    add("sweep.radial_count", std::to_string(sd.radial_count), "radial offsets per side, >= 2",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x >= 2 && x <= 10000, k, "must lie in [2, 1e4]");
          c.verify.domain.radial_count = x;
        });
    add("sweep.transverse_offsets", fmt_list(sd.transverse_offsets), "comma list of |y'| values, > 0",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_doubles(k, s);
          for (double r : x) require(r > 0.0, k, "offsets must be > 0");
          c.verify.domain.transverse_offsets = x;
        });
    add("sweep.random_pairs", std::to_string(sd.random_pairs), "seeded random y per (t, |x|)",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x <= 1000000, k, "must be <= 1e6");
          c.verify.domain.random_pairs = x;
        });
    add("sweep.dim", std::to_string(sd.dim), "dimension n of the sweeps, 1 or 2",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x == 1 || x == 2, k, "must be 1 or 2");
          c.verify.domain.dim = x;
        });
    add("sweep.seed", std::to_string(sd.seed), "seed of every random draw",
        [](RunConfig& c, const std::string& k, const std::string& s) { c.verify.domain.seed = to_uint(k, s); });
    // verify suites
    add("verify.stability_bound", fmt(v.stability_bound), "max refinement ratio, >= 1",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const double x = to_double(k, s);
          require(x >= 1.0, k, "must be >= 1");
          c.verify.stability_bound = x;
        });
    add("verify.norm_t", fmt_list(v.norm_t), "normalization t values, > 0",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_doubles(k, s);
          for (double t : x) require(t > 0.0, k, "t must be > 0");
          c.verify.norm_t = x;
        });
    add("verify.norm_x", fmt_list(v.norm_x), "normalization |x| values, >= 0",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_doubles(k, s);
          for (double r : x) require(r >= 0.0, k, "|x| must be >= 0");
          c.verify.norm_x = x;
        });
    add("verify.norm_dims", fmt_ulist(v.norm_dims), "normalization dimensions, each 1 or 2",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          std::vector<std::size_t> out;
          for (const auto& p : split_list(s)) {
            const auto n = to_uint(k, p);
            require(n == 1 || n == 2, k, "dimensions must be 1 or 2");
            out.push_back(n);
          }
          require(!out.empty(), k, "empty list");
          c.verify.norm_dims = out;
        });
    auto count_key = [&](const std::string& key, std::size_t def, std::size_t VerifyConfig::*field,
                         const std::string& doc) {
      add(key, std::to_string(def), doc, [field](RunConfig& c, const std::string& k, const std::string& s) {
        const auto x = to_uint(k, s);
        require(x >= 1 && x <= 1000000, k, "must lie in [1, 1e6]");
        c.verify.*field = x;
      });
    };
    count_key("verify.symmetry_samples", v.symmetry_samples, &VerifyConfig::symmetry_samples,
              "seeded samples of the symmetry checks");
    count_key("verify.semigroup_samples", v.semigroup_samples, &VerifyConfig::semigroup_samples,
              "seeded (t, s, x, z) of the semigroup check");
    count_key("verify.fd_samples", v.fd_samples, &VerifyConfig::fd_samples,
              "seeded points of the finite-difference check");
    count_key("verify.domination_samples", v.domination_samples, &VerifyConfig::domination_samples,
              "samples per epsilon-set");
    add("verify.domination_eps", fmt(v.domination_eps), "eps of the domination check, in (0, 1)",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const double x = to_double(k, s);
          require(x > 0.0 && x < 1.0, k, "must lie in (0, 1)");
          c.verify.domination_eps = x;
        });
    add("verify.alpha", fmt(v.alpha), "Holder exponent of the Lipschitz checks, in (0, 1)",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const double x = to_double(k, s);
          require(x > 0.0 && x < 1.0, k, "must lie in (0, 1)");
          c.verify.alpha = x;
        });
    add("verify.mass_dim", std::to_string(v.mass_dim), "dimension of the mass and L1 checks, 1 or 2",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x == 1 || x == 2, k, "must be 1 or 2");
          c.verify.mass_dim = x;
        });
    add("verify.glip_stride", std::to_string(v.glip_stride),
        "keep every k-th point of the Lipschitz-profile grids; constants were recorded at 1",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x >= 1 && x <= 8, k, "must lie in 1..8");
          c.verify.glip_stride = x;
        });
    // output and run
    add("output.dir", d.output_dir, "directory of the CSV reports",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          require(!s.empty(), k, "must not be empty");
          c.output_dir = s;
        });
    add("output.prefix", d.output_prefix, "file name prefix of the CSV reports",
        [](RunConfig& c, const std::string&, const std::string& s) { c.output_prefix = s; });
    add("run.threads", std::to_string(d.threads), "worker threads, 0 = all cores (GKL_THREADS wins)",
        [](RunConfig& c, const std::string& k, const std::string& s) {
          const auto x = to_uint(k, s);
          require(x <= 4096, k, "must be <= 4096");
          c.threads = x;
        });
    return e;
  }();
  return entries;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const Entry& e : table()) {
    if (e.doc.key == key) {
      e.set(*this, key, value);
      return;
    }
  }
  throw ConfigError(key, "unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  const SweepDomain& d = verify.domain;
  if (!(d.t_lo < d.t_hi)) throw ConfigError("sweep.t_hi", "sweep.t_hi: must exceed sweep.t_lo");
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sweep", e.what());
  }
}

RunConfig RunConfig::parse(const std::string& text, const std::string& source) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError("", where + "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", where + "empty key");
    if (seen.count(key)) {
      throw ConfigError(key, where + "duplicate key '" + key + "' (first on line " +
                                 std::to_string(seen[key]) + ")");
    }
    seen[key] = lineno;
    try {
      c.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), where + e.what());
    }
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--config", "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

const std::vector<RunConfig::KeyDoc>& RunConfig::keys() {
  static const std::vector<KeyDoc> docs = [] {
    std::vector<KeyDoc> out;
    for (const Entry& e : table()) out.push_back(e.doc);
    return out;
  }();
  return docs;
}

}  // namespace gkl
