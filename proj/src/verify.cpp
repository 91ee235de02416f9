#include "gkl/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "gkl/calibration.hpp"
#include "gkl/kernel.hpp"
#include "gkl/parallel.hpp"
#include "gkl/reduced_integral.hpp"

namespace gkl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform doubles in [0, 1) from mt19937_64, bit-for-bit the same on every
// platform (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::initializer_list<std::uint64_t> seeds) {
    std::vector<std::uint32_t> words;
    for (std::uint64_t s : seeds) {
      words.push_back(static_cast<std::uint32_t>(s));
      words.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    gen_.seed(seq);
  }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  // Box-Muller; two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

SamplePoint make_sample(double t, std::size_t dim, double r, double gap, double rho) {
  return {t, axial_from_gap(dim, r, gap, rho)};
}

// Report bookkeeping: the running max (and min) of a log-ratio with the
// sample that attains it, reduced in index order.
struct LogExtreme {
  double max = -kInf, min = kInf;
  std::size_t argmax = 0, argmin = 0;
  std::size_t count = 0;
  void add(double v, std::size_t i) {
    ++count;
    if (v > max) {
      max = v;
      argmax = i;
    }
    if (v < min) {
      min = v;
      argmin = i;
    }
  }
};

void set_worst(SweepReport& rep, const SamplePoint& s) {
  rep.worst_t = s.t;
  const EuclideanPoint x = frame_x(s.ax), y = frame_y(s.ax);
  rep.worst_x.assign(x.coords().begin(), x.coords().end());
  rep.worst_y.assign(y.coords().begin(), y.coords().end());
}

double safe_exp(double v) { return v == -kInf ? 0.0 : std::exp(v); }

double stability_ratio(double refined, double base) {
  if (refined == base) return 1.0;
  if (!(base > 0.0)) return refined > 0.0 ? kInf : 1.0;
  return refined / base;
}

// Samples of a domain scaled by `factor` (1 or 4), with flags marking the
// subset that the unscaled domain generates.
std::vector<SamplePoint> generate_impl(const SweepDomain& d, std::size_t factor,
                                       std::vector<char>* base) {
  d.validate();
  std::vector<SamplePoint> out;
  auto push = [&](SamplePoint s, bool in_base) {
    out.push_back(s);
    if (base) base->push_back(in_base ? 1 : 0);
  };
  const auto has = [&](YStrategy s) {
    return std::find(d.y_strategies.begin(), d.y_strategies.end(), s) != d.y_strategies.end();
  };
  const std::vector<double> ts = log_spaced(d.t_lo, d.t_hi, d.t_count);
  const std::size_t m = factor * (d.radial_count - 1) + 1;
  const std::size_t pairs = factor * d.random_pairs;
  for (std::size_t ti = 0; ti < ts.size(); ++ti) {
    const double t = ts[ti];
    for (std::size_t ri = 0; ri < d.x_radii.size(); ++ri) {
      const double r = d.x_radii[ri];
      const double lo = t * t * std::max(r, 0.1);
      const double hi = std::max(2.0 * r, 3.0);
      if (has(YStrategy::RadialOffsets)) {
        for (int side : {1, -1}) {
          for (std::size_t j = 0; j < m; ++j) {
            const double frac = static_cast<double>(j) / static_cast<double>(m - 1);
            const double yr = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * frac);
            if (r == 0.0 && side < 0) continue;  // same |y| as side > 0
            push(make_sample(t, d.dim, r, side * yr, 0.0), j % factor == 0);
          }
        }
      }
      if (has(YStrategy::TransverseOffsets) && d.dim >= 2) {
        std::vector<double> gaps{0.0, 2.0 * t * t * r, 0.5 * r};
        gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
        for (double g : gaps) {
          for (double rho : d.transverse_offsets) push(make_sample(t, d.dim, r, g, rho), true);
        }
      }
      if (has(YStrategy::RandomBall)) {
        Rng rng{d.seed, ti, ri};
        const double radius = 3.0 + r;
        for (std::size_t k = 0; k < pairs; ++k) {
          const double u = rng.uniform(), v = rng.uniform();
          // even draws: uniform in the ball; odd: distance log-uniform from
          // the short scale up to the radius
          const double dist =
              k % 2 == 0 ? radius * std::pow(u, 1.0 / static_cast<double>(std::min<std::size_t>(d.dim, 2)))
                         : std::exp(std::log(lo) + u * (std::log(radius) - std::log(lo)));
          double gap, rho;
          if (d.dim == 1) {
            gap = v < 0.5 ? dist : -dist;
            rho = 0.0;
          } else {
            const double phi = 2.0 * std::numbers::pi * v;
            gap = -dist * std::cos(phi);
            rho = dist * std::abs(std::sin(phi));
          }
          push(make_sample(t, d.dim, r, gap, rho), k < d.random_pairs);
        }
      }
    }
  }
  if (has(YStrategy::SetConditioned)) {
    const std::size_t dens = factor * d.set_density;
    const auto fam = sharpness_family(d.conditioned_set, d.dim, 3.0, dens);
    // the family lists a fixed number of points per parameter step; the
    // base steps are every factor-th one
    const std::size_t per = fam.size() / (4 * dens * 3 + 1);
    for (std::size_t i = 0; i < fam.size(); ++i) push(fam[i], (i / per) % factor == 0);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

YStrategy parse_y_strategy(const std::string& name) {
  if (name == "radial-offsets") return YStrategy::RadialOffsets;
  if (name == "transverse-offsets") return YStrategy::TransverseOffsets;
  if (name == "random-ball") return YStrategy::RandomBall;
  if (name == "set-conditioned") return YStrategy::SetConditioned;
  throw std::invalid_argument("unknown y strategy '" + name + "'");
}

std::string to_string(YStrategy s) {
  switch (s) {
    case YStrategy::RadialOffsets: return "radial-offsets";
    case YStrategy::TransverseOffsets: return "transverse-offsets";
    case YStrategy::RandomBall: return "random-ball";
    case YStrategy::SetConditioned: return "set-conditioned";
  }
  return "?";
}

void SweepDomain::validate() const {
  if (!(t_lo > 0.0 && t_lo < t_hi && std::isfinite(t_hi))) {
    throw std::invalid_argument("sweep: need 0 < t_lo < t_hi");
  }
  if (t_count < 2) throw std::invalid_argument("sweep: t_count must be >= 2");
  if (x_radii.empty()) throw std::invalid_argument("sweep: x_radii must not be empty");
  for (double r : x_radii) {
    if (!(r >= 0.0 && std::isfinite(r))) throw std::invalid_argument("sweep: x_radii must be >= 0");
  }
  if (radial_count < 2) throw std::invalid_argument("sweep: radial_count must be >= 2");
  for (double v : transverse_offsets) {
    if (!(v > 0.0 && std::isfinite(v))) {
      throw std::invalid_argument("sweep: transverse offsets must be > 0");
    }
  }
  if (dim < 1 || dim > 2) throw std::invalid_argument("sweep: dim must be 1 or 2");
  if (y_strategies.empty()) throw std::invalid_argument("sweep: no y strategy");
  if (set_density < 1) throw std::invalid_argument("sweep: set_density must be >= 1");
}

SweepDomain SweepDomain::refined() const {
  SweepDomain d = *this;
  d.radial_count = 4 * (radial_count - 1) + 1;
  d.random_pairs = 4 * random_pairs;
  d.set_density = 4 * set_density;
  return d;
}

std::vector<SamplePoint> generate_samples(const SweepDomain& d) {
  return generate_impl(d, 1, nullptr);
}

EuclideanPoint frame_x(const AxialCoords& ax) { return EuclideanPoint::on_axis(ax.dim, ax.r); }

EuclideanPoint frame_y(const AxialCoords& ax) {
  std::vector<double> c(ax.dim, 0.0);
  c[0] = ax.y_par;
  if (ax.dim >= 2) c[1] = ax.y_perp;
  return EuclideanPoint(std::move(c));
}

// --- normalization ---------------------------------------------------------

SweepReport check_normalization(const VerifyConfig& cfg) {
  struct Job {
    std::size_t dim;
    double t, r;
  };
  std::vector<Job> jobs;
  for (std::size_t n : cfg.norm_dims) {
    if (n < 1 || n > 2) throw std::invalid_argument("normalization: dimension must be 1 or 2");
    for (double t : cfg.norm_t) {
      for (double r : cfg.norm_x) jobs.push_back({n, t, r});
    }
  }
  // stress points: peaked kernel far out in 1-D, moderate point in 2-D
  jobs.push_back({1, 0.01, 30.0});
  jobs.push_back({2, 1.0, 5.0});
  std::vector<double> dev(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& j = jobs[i];
    const auto f = [&](double gap, double rho) {
      return evaluate_kernel(j.t, axial_from_gap(j.dim, j.r, gap, rho), cfg.quadrature, kValue)
          .value.value();
    };
    const double t = j.t;
    const std::vector<double> rho_breaks{t / 4, t, 4 * t, 1.0, 4.0, t * std::sqrt(j.r)};
    const YIntegralResult res =
        integrate_over_y(j.dim, f, gap_breakpoints(t, j.r), rho_breaks, {1e-8, 1e-8});
    dev[i] = std::abs(res.value - 1.0);
  });
  SweepReport rep;
  rep.suite = "normalization";
  rep.inequality_id = "int P_t dy = 1";
  rep.sample_count = jobs.size();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (dev[i] > rep.empirical_constant) {
      rep.empirical_constant = dev[i];
      worst = i;
    }
  }
  rep.bound = 1e-6;
  rep.pass = rep.empirical_constant < rep.bound;
  rep.worst_t = jobs[worst].t;
  rep.worst_x.assign(jobs[worst].dim, 0.0);
  rep.worst_x[0] = jobs[worst].r;
  rep.note = "max |int P_t dy - 1|";
  return rep;
}

// --- symmetry --------------------------------------------------------------

std::vector<SweepReport> check_symmetry(const VerifyConfig& cfg) {
  const std::size_t count = cfg.symmetry_samples;
  struct Row {
    double gamma = 0.0, rotation = 0.0;
    double t = 0.0;
    std::vector<double> x, y;
  };
  std::vector<Row> rows(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng{cfg.domain.seed, 0x5ee7, i};
    const std::size_t n = 1 + i % 3;
    const double t = rng.log_uniform(0.01, 10.0);
    std::vector<double> xc(n), yc(n);
    const double rx = rng.uniform(0.0, 5.0), ry = rng.uniform(0.0, 5.0);
    double nx = 0.0, ny = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] = rng.normal();
      yc[k] = rng.normal();
      nx += xc[k] * xc[k];
      ny += yc[k] * yc[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] *= rx / std::sqrt(nx);
      yc[k] *= ry / std::sqrt(ny);
    }
    const EuclideanPoint x(xc), y(yc);
    const double pxy = poisson_kernel(KernelQuery(t, x, y), cfg.quadrature).log_magnitude();
    const double pyx = poisson_kernel(KernelQuery(t, y, x), cfg.quadrature).log_magnitude();
    // e^{-|x|^2} P_t(x, y) is symmetric; compare logs
    rows[i].gamma = std::abs((pxy - x.norm_squared()) - (pyx - y.norm_squared()));

    Eigen::MatrixXd g(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) g(a, b) = rng.normal();
    }
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
    const Eigen::VectorXd qx = q * Eigen::Map<const Eigen::VectorXd>(xc.data(), n);
    const Eigen::VectorXd qy = q * Eigen::Map<const Eigen::VectorXd>(yc.data(), n);
    const EuclideanPoint rx_pt(std::vector<double>(qx.data(), qx.data() + n));
    const EuclideanPoint ry_pt(std::vector<double>(qy.data(), qy.data() + n));
    const double prot = poisson_kernel(KernelQuery(t, rx_pt, ry_pt), cfg.quadrature).log_magnitude();
    rows[i].rotation = std::abs(prot - pxy);
    rows[i].t = t;
    rows[i].x = xc;
    rows[i].y = yc;
  });
  auto reduce = [&](const char* id, double Row::*field, double bound) {
    SweepReport rep;
    rep.suite = "symmetry";
    rep.inequality_id = id;
    rep.sample_count = count;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (rows[i].*field > rep.empirical_constant) {
        rep.empirical_constant = rows[i].*field;
        worst = i;
      }
    }
    rep.bound = bound;
    rep.pass = rep.empirical_constant < bound;
    if (count > 0) {
      rep.worst_t = rows[worst].t;
      rep.worst_x = rows[worst].x;
      rep.worst_y = rows[worst].y;
    }
    rep.note = "max |log ratio|";
    return rep;
  };
  return {reduce("gamma-symmetry", &Row::gamma, 1e-8),
          reduce("rotation-invariance", &Row::rotation, 1e-10)};
}

// --- semigroup -------------------------------------------------------------

double semigroup_integral(double t, double s, double x, double z, const QuadratureSpec& spec) {
  const EuclideanPoint xp{x}, zp{z};
  const auto f = [&](double y) {
    const EuclideanPoint yp{y};
    const double l = poisson_kernel(KernelQuery(t, xp, yp), spec).log_magnitude() +
                     poisson_kernel(KernelQuery(s, yp, zp), spec).log_magnitude();
    return safe_exp(l);
  };
  std::vector<double> br{x, z, 0.0, -1.0, 1.0, x - t, x + t, z - s, z + s, 0.5 * x, 0.5 * z};
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return integrate_line(f, br, 1e-9, true).value;
}

SweepReport check_semigroup(const VerifyConfig& cfg) {
  const std::size_t count = cfg.semigroup_samples;
  std::vector<double> err(count);
  std::vector<std::array<double, 4>> pts(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng{cfg.domain.seed, 0x5e41, i};
    const double t = rng.log_uniform(0.05, 2.0), s = rng.log_uniform(0.05, 2.0);
    const double x = rng.uniform(-3.0, 3.0), z = rng.uniform(-3.0, 3.0);
    const double lhs = semigroup_integral(t, s, x, z, cfg.quadrature);
    const double rhs =
        poisson_kernel(KernelQuery(t + s, EuclideanPoint{x}, EuclideanPoint{z}), cfg.quadrature)
            .value();
    err[i] = std::abs(lhs - rhs) / rhs;
    pts[i] = {t, s, x, z};
  });
  SweepReport rep;
  rep.suite = "semigroup";
  rep.inequality_id = "int P_t P_s = P_{t+s}";
  rep.sample_count = count;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (err[i] > rep.empirical_constant) {
      rep.empirical_constant = err[i];
      worst = i;
    }
  }
  rep.bound = 1e-4;
  rep.pass = rep.empirical_constant < rep.bound;
  if (count > 0) {
    rep.worst_t = pts[worst][0];
    rep.worst_x = {pts[worst][2]};
    rep.worst_y = {pts[worst][3]};
    std::ostringstream os;
    os.precision(17);
    os << "max rel err; worst s = " << pts[worst][1];
    rep.note = os.str();
  }
  return rep;
}

// --- derivative consistency -------------------------------------------------

std::vector<SweepReport> check_derivative_consistency(const VerifyConfig& cfg) {
  const std::size_t count = cfg.fd_samples;
  QuadratureSpec tight = cfg.quadrature;
  tight.rel_tol = std::min(tight.rel_tol, 1e-12);
  struct Row {
    double dt = 0.0, dx = 0.0;
    double t = 0.0;
    std::vector<double> x, y;
  };
  std::vector<Row> rows(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng{cfg.domain.seed, 0xfd, i};
    const std::size_t n = 1 + i % 2;
    // the prescribed steps are fixed, so keep the kernel's length scales
    // (t, t^2|x|, |x - y|) well above them: the difference error is O((h/l)^2)
    const double t = rng.log_uniform(0.05, 5.0);
    const double rx = rng.uniform(0.0, 10.0);
    const double off = rng.log_uniform(0.05, 3.0);
    std::vector<double> xc(n), dir(n);
    double nx = 0.0, nd = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] = rng.normal();
      dir[k] = rng.normal();
      nx += xc[k] * xc[k];
      nd += dir[k] * dir[k];
    }
    std::vector<double> yc(n);
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] *= rx / std::sqrt(nx);
      yc[k] = xc[k] + off * dir[k] / std::sqrt(nd);
    }
    const EuclideanPoint x(xc), y(yc);
    const KernelQuery q(t, x, y);
    const KernelValues kv = evaluate_kernel(q, tight, kValue | kTimeDeriv | kSpaceDeriv);

    const double h = 1e-4 * t;
    const double up = poisson_kernel(q.with_t(t + h), tight).value();
    const double down = poisson_kernel(q.with_t(t - h), tight).value();
    const double fd_t = (up - down) / (2.0 * h);
    rows[i].dt = std::abs(fd_t - kv.dt.value()) / kv.dt_abs.value();

    std::vector<double> an(n), fd(n);
    double gnorm = 0.0;
    const double hx = 1e-5 * (1.0 + x.norm());
    for (std::size_t k = 0; k < n; ++k) {
      an[k] = assemble_dx(q, kv, k + 1).value();
      gnorm += an[k] * an[k];
      std::vector<double> xp = xc, xm = xc;
      xp[k] += hx;
      xm[k] -= hx;
      const double pp = poisson_kernel(KernelQuery(t, EuclideanPoint(xp), y), tight).value();
      const double pm = poisson_kernel(KernelQuery(t, EuclideanPoint(xm), y), tight).value();
      fd[k] = (pp - pm) / (2.0 * hx);
    }
    gnorm = std::sqrt(gnorm);
    for (std::size_t k = 0; k < n; ++k) {
      rows[i].dx = std::max(rows[i].dx, std::abs(fd[k] - an[k]) / std::max(std::abs(an[k]), gnorm));
    }
    rows[i].t = t;
    rows[i].x = xc;
    rows[i].y = yc;
  });
  auto reduce = [&](const char* id, double Row::*field, const char* note) {
    SweepReport rep;
    rep.suite = "derivative-bounds";
    rep.inequality_id = id;
    rep.sample_count = count;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (rows[i].*field > rep.empirical_constant) {
        rep.empirical_constant = rows[i].*field;
        worst = i;
      }
    }
    rep.bound = 1e-5;
    rep.pass = rep.empirical_constant < rep.bound;
    if (count > 0) {
      rep.worst_t = rows[worst].t;
      rep.worst_x = rows[worst].x;
      rep.worst_y = rows[worst].y;
    }
    rep.note = note;
    return rep;
  };
  return {reduce("fd-dt", &Row::dt, "|fd - d_t P| / int|d_t integrand|"),
          reduce("fd-dx", &Row::dx, "|fd - d_xi P| / max(|d_xi P|, |grad P|)")};
}

// --- upper bounds ----------------------------------------------------------

std::vector<SweepReport> check_bound_sweep(const VerifyConfig& cfg) {
  std::vector<char> in_base;
  const std::vector<SamplePoint> samples = generate_impl(cfg.domain, 4, &in_base);
  constexpr std::size_t kRows = 4;
  struct Row {
    std::array<double, kRows> v;
    bool k_violation = false, z_violation = false;
  };
  std::vector<Row> rows(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const SamplePoint& s = samples[i];
    const AxialCoords& ax = s.ax;
    const KernelValues kv =
        evaluate_kernel(s.t, ax, cfg.quadrature, kValue | kTimeDeriv | kSpaceDeriv);
    const BoundEvaluation k = k_bound(s.t, ax, cfg.expstar);
    const BoundEvaluation z = z_bound(s.t, ax, cfg.expstar);
    const double log_t = std::log(s.t);
    const double lk = k.total.log_magnitude();
    const double lz = z.total.log_magnitude();
    const double lp = kv.value.log_magnitude();
    // |d_x P| in the rotated frame: the radial part along x, the transverse
    // part along y'. At x = 0 the gradient is Q y, all of it "radial".
    double ldx, ldx1;
    if (ax.r > 0.0) {
      const double lt = ax.y_perp > 0.0 ? kv.transverse.log_magnitude() + std::log(ax.y_perp) : -kInf;
      ldx = std::max(kv.radial.log_magnitude(), lt);
      ldx1 = kv.radial.log_magnitude();
    } else {
      const double ny = std::sqrt(ax.y_norm_squared());
      ldx = ny > 0.0 ? kv.transverse.log_magnitude() + std::log(ny) : -kInf;
      ldx1 = ldx;
    }
    Row& row = rows[i];
    row.k_violation = k.total.is_zero() && !kv.value.is_zero();
    row.z_violation = z.total.is_zero() && ldx1 > -kInf;
    row.v[0] = lp - lk;
    row.v[1] = log_t + kv.dt.log_magnitude() - lk;
    row.v[2] = log_t + ldx - lk;
    row.v[3] = ldx1 - lz;
  });
  static const std::array<const char*, kRows> ids{"P <= C sum K", "|t d_t P| <= C sum K",
                                                    "|t d_xi P| <= C sum K", "|d_x1 P| <= C sum Z"};
  static const std::array<const char*, kRows> suites{"upper-bound", "derivative-bounds",
                                                       "derivative-bounds", "derivative-bounds"};
  std::vector<SweepReport> out;
  for (std::size_t k = 0; k < kRows; ++k) {
    LogExtreme all, base;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const bool viol = k == 3 ? rows[i].z_violation : rows[i].k_violation;
      if (viol) {
        ++violations;
        continue;
      }
      all.add(rows[i].v[k], i);
      if (in_base[i]) base.add(rows[i].v[k], i);
    }
    SweepReport rep;
    rep.suite = suites[k];
    rep.inequality_id = ids[k];
    rep.sample_count = base.count;
    rep.empirical_constant = safe_exp(base.max);
    const double refined = safe_exp(all.max);
    rep.refinement_ratio = stability_ratio(refined, rep.empirical_constant);
    rep.bound = cfg.stability_bound;
    rep.pass = std::isfinite(rep.empirical_constant) && violations == 0 &&
               rep.refinement_ratio <= cfg.stability_bound;
    if (all.count > 0) set_worst(rep, samples[all.argmax]);
    std::ostringstream os;
    os << "refined samples " << all.count + violations << "; structural violations "
       << violations;
    rep.note = os.str();
    out.push_back(std::move(rep));
  }

  // Z_2 carries most of the Z sum on E_2 once |x| is large; near |x| = 10
  // Z_1 still competes at small c, so the threshold applies from |x| = 100.
  {
    const auto fam = sharpness_family(SharpSet::E2, cfg.domain.dim, 3.0);
    double min_share = kInf, min_all = kInf;
    std::size_t worst = 0, counted = 0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const BoundEvaluation z = z_bound(fam[i].t, fam[i].ax, cfg.expstar);
      const double share = safe_exp(z.term("Z2").log_magnitude() - z.total.log_magnitude());
      min_all = std::min(min_all, share);
      if (fam[i].ax.r < 100.0) continue;
      ++counted;
      if (share < min_share) {
        min_share = share;
        worst = i;
      }
    }
    SweepReport rep;
    rep.suite = "derivative-bounds";
    rep.inequality_id = "Z2 share on E2";
    rep.sample_count = counted;
    rep.empirical_constant = min_share;
    rep.lower_constant = min_all;
    rep.bound = 0.5;
    rep.pass = min_share > 0.5;
    set_worst(rep, fam[worst]);
    rep.note = "min Z2 / sum Z for |x| >= 100; lower column: whole family from |x| = 10";
    out.push_back(std::move(rep));
  }
  return out;
}

SweepReport check_upper_bound(const VerifyConfig& cfg) { return check_bound_sweep(cfg).front(); }

std::vector<SweepReport> check_derivative_bounds(const VerifyConfig& cfg) {
  std::vector<SweepReport> rows = check_bound_sweep(cfg);
  rows.erase(rows.begin());
  for (SweepReport& r : check_derivative_consistency(cfg)) rows.push_back(std::move(r));
  return rows;
}

// --- sharpness -------------------------------------------------------------

std::vector<SamplePoint> sharpness_family(SharpSet which, std::size_t dim, double decades,
                                          std::size_t density) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("sharpness_family: dim must be 1 or 2");
  if (!(decades > 0.0) || density < 1) {
    throw std::invalid_argument("sharpness_family: need decades > 0 and density >= 1");
  }
  const std::size_t steps = static_cast<std::size_t>(std::llround(4.0 * decades)) * density;
  std::vector<SamplePoint> out;
  for (std::size_t j = 0; j <= steps; ++j) {
    const double frac = decades * static_cast<double>(j) / static_cast<double>(steps);
    switch (which) {
      case SharpSet::E1: {
        const double r = std::pow(10.0, 1.0 + frac);
        const double t = 1.0 / (r * r);
        for (double m : {1.2, 1.5, 1.8}) {
          const double gap = m / (r * r);
          out.push_back(make_sample(t, dim, r, gap, 0.0));
          if (dim == 2) out.push_back(make_sample(t, dim, r, gap, 0.5 * gap));
        }
        break;
      }
      case SharpSet::E2: {
        const double r = std::pow(10.0, 1.0 + frac);
        const double t = 1.0 / std::sqrt(r);
        for (double gap : {1.2, 1.5, 1.8}) {
          out.push_back(make_sample(t, dim, r, gap, 0.0));
          if (dim == 2) out.push_back(make_sample(t, dim, r, gap, 0.5 * std::sqrt(gap / r)));
        }
        break;
      }
      case SharpSet::E3: {
        const double t = 2.0 * std::pow(10.0, frac);
        // (|x|, gap, rho): y = 0.3, y = -0.5, x = 0 with |y| = 0.9, y = 0.1
        static const std::array<std::array<double, 3>, 4> pts{
            {{0.3, 0.0, 0.0}, {0.5, 1.0, 0.0}, {0.0, -0.9, 0.0}, {0.9, 0.8, 0.0}}};
        for (const auto& p : pts) out.push_back(make_sample(t, dim, p[0], p[1], p[2]));
        if (dim == 2) out.push_back(make_sample(t, dim, 0.5, 0.5, 0.5));
        break;
      }
      case SharpSet::E4: {
        const double L = 16.0 + frac * std::log(10.0);
        const double r = std::exp(L);
        const double t = 0.5 * std::sqrt(std::log(r));
        for (double theta : {0.67, 0.7, 0.74}) {
          const double gap = r - std::exp(theta * L);
          out.push_back(make_sample(t, dim, r, gap, 0.0));
          if (dim == 2) out.push_back(make_sample(t, dim, r, gap, 0.5));
        }
        break;
      }
    }
  }
  for (const SamplePoint& s : out) {
    if (!in_sharpness_set(s.t, s.ax, which)) {
      throw std::logic_error("sharpness_family: generated a point outside " + to_string(which));
    }
  }
  return out;
}

RatioRange sharpness_ratio_range(SharpSet which, const std::vector<SamplePoint>& samples,
                                 const ExpStarConfig& cfg, const QuadratureSpec& spec) {
  static const std::array<const char*, 4> ids{"K1", "K2", "K3", "K4"};
  const char* id = ids[static_cast<int>(which)];
  std::vector<double> lr(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const SamplePoint& s = samples[i];
    if (!in_sharpness_set(s.t, s.ax, which)) {
      std::ostringstream os;
      os.precision(17);
      os << "sample outside " << to_string(which) << ": t=" << s.t << " |x|=" << s.ax.r
         << " gap=" << s.ax.gap << " |y'|=" << s.ax.y_perp;
      throw std::invalid_argument(os.str());
    }
    const double lp = evaluate_kernel(s.t, s.ax, spec, kValue).value.log_magnitude();
    lr[i] = lp - k_bound(s.t, s.ax, cfg).term(id).log_magnitude();
  });
  RatioRange out;
  out.count = samples.size();
  if (samples.empty()) return out;
  const auto [mn, mx] = std::minmax_element(lr.begin(), lr.end());
  out.min = safe_exp(*mn);
  out.max = safe_exp(*mx);
  return out;
}

std::vector<SweepReport> check_sharpness(const VerifyConfig& cfg) {
  std::vector<SweepReport> out;
  for (int w = 0; w < 4; ++w) {
    const SharpSet which = static_cast<SharpSet>(w);
    const auto fam = sharpness_family(which, cfg.domain.dim, 3.0);
    const auto fam2 = sharpness_family(which, cfg.domain.dim, 2.0);
    const RatioRange r3 = sharpness_ratio_range(which, fam, cfg.expstar, cfg.quadrature);
    const RatioRange r2 = sharpness_ratio_range(which, fam2, cfg.expstar, cfg.quadrature);
    const double width = r3.max / r3.min;
    SweepReport rep;
    rep.suite = "sharpness";
    rep.inequality_id = "P/K" + std::to_string(w + 1) + " on " + to_string(which);
    rep.sample_count = r3.count;
    rep.empirical_constant = r3.max;
    rep.lower_constant = r3.min;
    rep.refinement_ratio = width / (r2.max / r2.min);
    rep.bound = calibration::kSharpWidth[w];
    rep.pass = r3.min > 0.0 && std::isfinite(r3.max) && width <= rep.bound &&
               rep.refinement_ratio <= cfg.stability_bound;
    set_worst(rep, fam.back());
    std::ostringstream os;
    os.precision(17);
    os << "max/min " << width << " over 3 decades; refinement: width ratio 3 vs 2 decades";
    rep.note = os.str();
    out.push_back(std::move(rep));
  }
  return out;
}

// --- domination ------------------------------------------------------------

std::vector<SamplePoint> epsilon_set_samples(SharpSet which, double c_eps, std::size_t count,
                                             std::size_t dim, std::uint64_t seed) {
  if (!(c_eps > 0.0)) throw std::invalid_argument("epsilon_set_samples: C_eps must be > 0");
  Rng rng{seed, 0xe5, static_cast<std::uint64_t>(which)};
  std::vector<SamplePoint> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = rng.uniform(0.001, 1.0), v = rng.uniform(0.01, 0.99),
                 w = rng.uniform(0.0, 0.9);
    SamplePoint s{};
    switch (which) {
      case SharpSet::E1: {
        const double r = std::max(c_eps, 8.0) * std::pow(10.0, u);
        const double gap = (1.0 + v) / (r * r);
        s = make_sample(1.0 / (r * r), dim, r, gap, dim == 2 ? w * gap : 0.0);
        break;
      }
      case SharpSet::E2: {
        const double r = std::max(c_eps, 8.0) * std::pow(10.0, u);
        const double gap = 1.0 + v;
        s = make_sample(1.0 / std::sqrt(r), dim, r, gap, dim == 2 ? w * std::sqrt(gap / r) : 0.0);
        break;
      }
      case SharpSet::E3: {
        const double t = std::max(c_eps, 1.0) * std::pow(10.0, u);
        const double r = 0.95 * v;
        const double y = rng.uniform(-0.9, 0.9);
        const double rho = dim == 2 ? w * std::sqrt(0.9 - y * y) : 0.0;
        s = make_sample(t, dim, r, r - y, rho);
        break;
      }
      case SharpSet::E4: {
        const double L = std::max(std::log(c_eps), 16.0) + 1e-3 + u * std::log(10.0);
        const double r = std::exp(L);
        const double theta = 2.0 / 3.0 + 1e-6 + v * (0.75 - 2.0 / 3.0 - 2e-6);
        s = make_sample(0.5 * std::sqrt(std::log(r)), dim, r, r - std::exp(theta * L),
                        dim == 2 ? w : 0.0);
        break;
      }
    }
    if (!in_epsilon_set(s.t, s.ax, which, c_eps)) {
      throw std::logic_error("epsilon_set_samples: generated a point outside the set");
    }
    out.push_back(s);
  }
  return out;
}

double domination_ratio(SharpSet which, const std::vector<SamplePoint>& samples, double eps,
                        const ExpStarConfig& cfg, const QuadratureSpec& spec) {
  if (!(eps > 0.0)) throw std::invalid_argument("domination: eps must be > 0");
  static const std::array<const char*, 4> ids{"K1", "K2", "K3", "K4"};
  std::vector<double> worst(samples.size(), -kInf);
  parallel_for(samples.size(), [&](std::size_t i) {
    const SamplePoint& s = samples[i];
    const double lp = evaluate_kernel(s.t, s.ax, spec, kValue).value.log_magnitude();
    const BoundEvaluation k = k_bound(s.t, s.ax, cfg);
    for (int j = 0; j < 4; ++j) {
      if (j == static_cast<int>(which)) continue;
      worst[i] = std::max(worst[i], k.term(ids[j]).log_magnitude() - lp - std::log(eps));
    }
  });
  double m = -kInf;
  for (double v : worst) m = std::max(m, v);
  return safe_exp(m);
}

namespace {
double ladder_start(SharpSet which) {
  switch (which) {
    case SharpSet::E1:
    case SharpSet::E2: return 8.0;
    case SharpSet::E3: return 1.0;
    case SharpSet::E4: return std::exp(16.0);
  }
  return 1.0;
}
}  // namespace

double calibrate_c_eps(SharpSet which, double eps, std::size_t count, std::size_t dim,
                       const ExpStarConfig& cfg, const QuadratureSpec& spec, std::uint64_t seed) {
  double c = ladder_start(which);
  for (int k = 0; k < 40; ++k, c *= 2.0) {
    const auto samples = epsilon_set_samples(which, c, count, dim, seed);
    if (domination_ratio(which, samples, eps, cfg, spec) < 1.0) return c;
  }
  return kInf;
}

std::vector<SweepReport> check_domination(const VerifyConfig& cfg) {
  std::vector<SweepReport> out;
  const std::size_t dim = cfg.domain.dim;
  for (int w = 0; w < 4; ++w) {
    const SharpSet which = static_cast<SharpSet>(w);
    const double c = calibration::kDominationC[w];
    const auto samples = epsilon_set_samples(which, c, cfg.domination_samples, dim, cfg.domain.seed);
    const double ratio =
        domination_ratio(which, samples, cfg.domination_eps, cfg.expstar, cfg.quadrature);
    SweepReport rep;
    rep.suite = "domination";
    rep.inequality_id = "K_j < eps P on " + to_string(which) + "~";
    rep.sample_count = samples.size();
    rep.empirical_constant = ratio;
    rep.bound = 1.0;
    rep.pass = ratio < 1.0;
    std::ostringstream os;
    os.precision(17);
    os << "max K_j/(eps P), eps " << cfg.domination_eps << ", C_eps " << c;
    rep.note = os.str();
    out.push_back(std::move(rep));
  }
  // calibration table: the required C_eps must not grow as eps grows
  const std::array<double, 3> eps_values{0.3, 0.1, 0.03};
  for (int w = 0; w < 4; ++w) {
    const SharpSet which = static_cast<SharpSet>(w);
    std::array<double, 3> cs{};
    for (std::size_t e = 0; e < eps_values.size(); ++e) {
      cs[e] = calibrate_c_eps(which, eps_values[e], cfg.domination_samples, dim, cfg.expstar,
                              cfg.quadrature, cfg.domain.seed);
    }
    for (std::size_t e = 0; e < eps_values.size(); ++e) {
      SweepReport rep;
      rep.suite = "domination";
      std::ostringstream id;
      id << "C_eps table " << to_string(which) << "~ eps=" << eps_values[e];
      rep.inequality_id = id.str();
      rep.sample_count = cfg.domination_samples;
      rep.empirical_constant = cs[e];
      rep.pass = std::isfinite(cs[e]) && (e == 0 || cs[e] >= cs[e - 1]);
      rep.note = "smallest passing rung of C_0 2^k; nonincreasing in eps";
      out.push_back(std::move(rep));
    }
  }
  return out;
}

// --- kernel mass and L1 norms ----------------------------------------------

namespace {

struct MassGrid {
  std::vector<double> t;
  std::vector<char> base;
};

// Base grid: 13 log-spaced t in [t_lo, t_hi]; refined: 4x denser, a superset.
MassGrid mass_grid(const SweepDomain& d) {
  const std::size_t n = 13, m = 4 * (n - 1) + 1;
  MassGrid g;
  g.t = log_spaced(d.t_lo, d.t_hi, m);
  for (std::size_t i = 0; i < m; ++i) g.base.push_back(i % 4 == 0 ? 1 : 0);
  return g;
}

std::vector<double> rho_breaks_for(double t, double r) {
  return {t / 4, t, 4 * t, 1.0, 4.0, t * std::sqrt(r)};
}

std::vector<SweepReport> mass_like(const VerifyConfig& cfg, const char* suite,
                                   const std::array<const char*, 2>& ids,
                                   const std::function<std::array<double, 2>(double, double)>& eval) {
  const MassGrid g = mass_grid(cfg.domain);
  const auto& radii = cfg.domain.x_radii;
  const std::size_t jobs = g.t.size() * radii.size();
  std::vector<std::array<double, 2>> vals(jobs);
  parallel_for(jobs, [&](std::size_t i) { vals[i] = eval(g.t[i / radii.size()], radii[i % radii.size()]); });
  std::vector<SweepReport> out;
  for (std::size_t k = 0; k < 2; ++k) {
    double base = 0.0, all = 0.0;
    std::size_t worst = 0, count = 0;
    for (std::size_t i = 0; i < jobs; ++i) {
      const double v = vals[i][k];
      if (v > all || !std::isfinite(v)) {
        all = v;
        worst = i;
      }
      if (g.base[i / radii.size()]) {
        base = std::max(base, v);
        ++count;
      }
    }
    SweepReport rep;
    rep.suite = suite;
    rep.inequality_id = ids[k];
    rep.sample_count = count;
    rep.empirical_constant = base;
    rep.refinement_ratio = stability_ratio(all, base);
    rep.bound = cfg.stability_bound;
    rep.pass = std::isfinite(base) && std::isfinite(all) && rep.refinement_ratio <= cfg.stability_bound;
    rep.worst_t = g.t[worst / radii.size()];
    rep.worst_x.assign(cfg.mass_dim, 0.0);
    rep.worst_x[0] = radii[worst % radii.size()];
    rep.note = "4x denser t grid for the refinement";
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace

std::vector<SweepReport> check_kernel_mass(const VerifyConfig& cfg) {
  const std::size_t dim = cfg.mass_dim;
  if (dim < 1 || dim > 2) throw std::invalid_argument("mass: dimension must be 1 or 2");
  return mass_like(cfg, "mass", {"int (K1 + K2) dy", "int (K3 + K4) dy / min(1, t)"},
                   [&](double t, double r) {
                     const auto f = [&](double gap, double rho, std::span<double> out) {
                       const BoundEvaluation k = k_bound(t, axial_from_gap(dim, r, gap, rho), cfg.expstar);
                       out[0] = (k.term("K1") + k.term("K2")).value();
                       out[1] = (k.term("K3") + k.term("K4")).value();
                     };
                     std::vector<double> br = gap_breakpoints(t, r);
                     if (r > 1.0) {
                       br.push_back(r - 1.0);
                       std::sort(br.begin(), br.end());
                     }
                     const YVectorResult res =
                         integrate_over_y(dim, f, 2, br, rho_breaks_for(t, r), {1e-8, 1e-8});
                     return std::array<double, 2>{res.value[0], res.value[1] / std::min(1.0, t)};
                   });
}

std::vector<SweepReport> check_l1_derivatives(const VerifyConfig& cfg) {
  const std::size_t dim = cfg.mass_dim;
  if (dim < 1 || dim > 2) throw std::invalid_argument("l1: dimension must be 1 or 2");
  return mass_like(
      cfg, "l1", {"t int |d_xi P_t| dy", "t^2 (1 + x1) int |d_x1 P_t| dy"},
      [&](double t, double r) {
        // components: |d_x1 P| (rotated frame) and |d_x2 P| = |Q| rho
        const auto f = [&](double gap, double rho, std::span<double> out) {
          const AxialCoords ax = axial_from_gap(dim, r, gap, rho);
          const KernelValues kv = evaluate_kernel(t, ax, cfg.quadrature, kSpaceDeriv);
          if (r > 0.0) {
            out[0] = std::abs(kv.radial.value());
          } else {
            out[0] = std::abs(kv.transverse.value()) * std::abs(gap);  // |Q y_1|, y_1 = -gap
          }
          out[1] = std::abs(kv.transverse.value()) * rho;
        };
        const YVectorResult res =
            integrate_over_y(dim, f, 2, gap_breakpoints(t, r), rho_breaks_for(t, r), {1e-8, 1e-8});
        return std::array<double, 2>{t * std::max(res.value[0], res.value[1]),
                                     t * t * (1.0 + r) * res.value[0]};
      });
}

// --- auxiliary integral ----------------------------------------------------

double log_aux_integral(const AuxParams& p, double c1, double c2, double c3) {
  if (!(p.a > 0.0 && p.T > 0.0 && p.A > 0.0 && p.X >= 0.0 && p.beta > 1.0)) {
    throw std::invalid_argument("aux integral: need a, T, A > 0, X >= 0, beta > 1");
  }
  const double B = c1 * p.T * p.T + c2 * p.A * p.A;
  const double C = c3 * p.X * p.X;
  const double hi = std::log(p.a);
  const double lo = std::min(std::log(B / 800.0), hi - 1.0);
  // u = log sigma; the integrand sigma^{1-beta} exp(-B/sigma - C sigma)
  std::vector<Interval> iv;
  const double peak = std::log(B / (p.beta - 1.0));
  std::vector<double> pts{lo};
  for (double u = std::floor(lo) + 1.0; u < hi; u += 1.0) pts.push_back(u);
  if (peak > lo && peak < hi) pts.push_back(peak);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) iv.push_back({pts[i], pts[i + 1], 0});
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  const auto f = [&](int, double u, NodeValues<1>& out) {
    out.log_mag[0] = (1.0 - p.beta) * u - B * std::exp(-u) - C * std::exp(u);
    out.sign[0] = 1;
  };
  return integrate_adaptive<1>(f, iv, spec).value[0].log_magnitude();
}

double log_aux_bound(const AuxParams& p, double c4, double c5) {
  return -c4 * p.A * p.T / p.a - c5 * p.T * p.X - (p.beta - 1.0) * std::log(p.T * p.T + p.A * p.A);
}

std::pair<double, double> aux_outer_constants(double c1, double c2, double c3) {
  if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0)) {
    throw std::invalid_argument("aux constants must be > 0");
  }
  return {0.5 * 2.0 * std::min(0.5 * c1, c2), 0.5 * std::sqrt(2.0 * c1 * c3)};
}

std::vector<SweepReport> check_aux_integral(const VerifyConfig& cfg) {
  (void)cfg;
  const double c1 = 1.0, c2 = 1.0, c3 = 1.0;
  const auto [c4, c5] = aux_outer_constants(c1, c2, c3);
  const std::vector<double> betas{1.1, 1.5, 2.0, 3.0};
  const std::vector<double> a_base{0.1, 1.0, 10.0}, a_ext{0.01, 0.1, 1.0, 10.0, 100.0};
  const std::vector<double> ta_base{1e-8, 1e-6, 1e-4, 1e-2, 1.0, 10.0},
      ta_ext{1e-9, 1e-8, 1e-6, 1e-4, 1e-2, 1.0, 10.0, 100.0};
  const std::vector<double> x_base{0.0, 0.1, 1.0, 10.0}, x_ext{0.0, 0.1, 1.0, 10.0, 100.0};
  std::vector<SweepReport> out;
  for (double beta : betas) {
    auto lattice = [&](const std::vector<double>& as, const std::vector<double>& tas,
                       const std::vector<double>& xs) {
      std::vector<AuxParams> ps;
      for (double a : as)
        for (double T : tas)
          for (double A : tas)
            for (double X : xs) ps.push_back({a, T, A, X, beta});
      return ps;
    };
    const auto base = lattice(a_base, ta_base, x_base);
    const auto ext = lattice(a_ext, ta_ext, x_ext);
    auto max_ratio = [&](const std::vector<AuxParams>& ps, std::size_t& arg) {
      std::vector<double> lr(ps.size());
      parallel_for(ps.size(), [&](std::size_t i) {
        lr[i] = log_aux_integral(ps[i], c1, c2, c3) - log_aux_bound(ps[i], c4, c5);
      });
      arg = static_cast<std::size_t>(std::max_element(lr.begin(), lr.end()) - lr.begin());
      return safe_exp(lr[arg]);
    };
    std::size_t ab = 0, ae = 0;
    const double mb = max_ratio(base, ab);
    const double me = max_ratio(ext, ae);
    SweepReport rep;
    rep.suite = "lemma22";
    std::ostringstream id;
    id << "J / bound, beta=" << beta;
    rep.inequality_id = id.str();
    rep.sample_count = base.size();
    rep.empirical_constant = mb;
    rep.refinement_ratio = stability_ratio(me, mb);
    rep.bound = cfg.stability_bound;
    rep.pass = std::isfinite(mb) && std::isfinite(me) && rep.refinement_ratio <= cfg.stability_bound;
    const AuxParams& w = ext[ae];
    std::ostringstream os;
    os.precision(17);
    os << "c_in 1,1,1; c_out " << c4 << "," << c5 << "; worst (a,T,A,X) " << w.a << " " << w.T
       << " " << w.A << " " << w.X;
    rep.note = os.str();
    out.push_back(std::move(rep));
  }
  return out;
}

// --- Lipschitz-space functional tests ---------------------------------------

namespace {

std::vector<EuclideanPoint> line_points(const std::vector<double>& xs) {
  std::vector<EuclideanPoint> out;
  for (double x : xs) out.push_back(EuclideanPoint{x});
  return out;
}

// every stride-th element, always keeping the last
std::vector<double> thin(const std::vector<double>& v, std::size_t stride) {
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
  if (!v.empty() && out.back() != v.back()) out.push_back(v.back());
  return out;
}

GlipOptions glip_options(const VerifyConfig& cfg) {
  GlipOptions opt;
  opt.apply.outer = cfg.quadrature;
  opt.kernel.kernel = cfg.quadrature;
  return opt;
}

}  // namespace

std::vector<SweepReport> check_theorem11_forward(const VerifyConfig& cfg) {
  const HolderExponent a(cfg.alpha);
  const std::size_t stride = cfg.glip_stride;
  const std::vector<double> ts = thin(log_spaced(0.01, 10.0, 13), stride);
  std::vector<double> xs;
  for (int k = -20; k <= 20; ++k) xs.push_back(1.5 * k);
  const auto pts = line_points(thin(xs, stride));
  std::vector<SweepReport> out;

  struct Case {
    FieldPtr f;
    const double* pins;
  };
  const std::vector<Case> cases{{make_gauss_bump(1), calibration::kGaussBumpProfile},
                                {make_snowflake(1, 0.0, cfg.alpha), calibration::kSnowflakeProfile}};
  for (const Case& c : cases) {
    const GlipEstimate est = glip_seminorm_estimate(*c.f, a, ts, pts, glip_options(cfg));
    double gmax = 0.0, rmax = 0.0;
    for (const auto& p : est.profile) {
      gmax = std::max(gmax, p.grad_weighted);
      rmax = std::max(rmax, p.radial_weighted);
    }
    const std::array<double, 3> vals{est.seminorm, gmax, rmax};
    static const std::array<const char*, 3> ids{"t^(1-a) |d_t P_t f|", "t^(1-a) |d_xi P_t f|",
                                                "t^(2-a) (1 + x1) |d_x1 P_t f|"};
    for (std::size_t k = 0; k < 3; ++k) {
      SweepReport rep;
      rep.suite = "glip-forward";
      rep.inequality_id = c.f->name() + ": " + ids[k];
      rep.sample_count = ts.size() * pts.size();
      rep.empirical_constant = vals[k];
      rep.bound = c.pins[k];
      rep.pass = std::isfinite(vals[k]) && vals[k] <= c.pins[k];
      rep.note = "recorded constant x 1.2";
      out.push_back(std::move(rep));
    }
    SweepReport agree;
    agree.suite = "glip-forward";
    agree.inequality_id = c.f->name() + ": pipeline agreement";
    agree.sample_count = ts.size() * pts.size();
    agree.empirical_constant = std::max(est.worst_value_agreement, est.worst_dt_agreement);
    agree.bound = 1.0;
    agree.pass = est.cross_checked && agree.empirical_constant <= 1.0;
    agree.note = "max |difference| / allowed; P_t f tolerance 1e-5";
    out.push_back(std::move(agree));
  }
  // f = const: every profile vanishes
  {
    const FieldPtr f = make_const_field(1, 1.0);
    const GlipEstimate est = glip_seminorm_estimate(*f, a, {0.01, 1.0}, line_points({0.0, 10.0}),
                                                    glip_options(cfg));
    double m = est.seminorm;
    for (const auto& p : est.profile) m = std::max({m, p.grad_weighted, p.radial_weighted});
    SweepReport rep;
    rep.suite = "glip-forward";
    rep.inequality_id = "const: all profiles";
    rep.sample_count = 4;
    rep.empirical_constant = m;
    rep.bound = 1e-12;
    rep.pass = m <= 1e-12;
    out.push_back(std::move(rep));
  }
  return out;
}

namespace {

double profile_at(const GlipEstimate& est, double t) {
  for (const auto& p : est.profile) {
    if (p.t == t) return p.weighted;
  }
  throw std::logic_error("profile_at: t not on grid");
}

std::vector<EuclideanPoint> phase_grid(const std::vector<double>& radii, std::size_t stride) {
  std::vector<double> xs;
  for (double r : radii) {
    for (std::size_t k = 0; k < 8; k += stride) xs.push_back(r + static_cast<double>(k) * std::numbers::pi / 4.0);
  }
  return line_points(xs);
}

}  // namespace

std::vector<SweepReport> check_theorem11_converse(const VerifyConfig& cfg) {
  const HolderExponent a(cfg.alpha);
  const std::vector<double> ts{0.5, 0.2, 0.1, 0.05};
  const auto far = phase_grid({0.0, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0}, cfg.glip_stride);
  const auto near = phase_grid({0.0, 1.0, 3.0, 10.0, 30.0}, cfg.glip_stride);
  const GlipOptions opt = glip_options(cfg);
  std::vector<SweepReport> out;
  auto growth = [&](const ScalarField& f, const std::vector<EuclideanPoint>& xs) {
    const GlipEstimate est = glip_seminorm_estimate(f, a, ts, xs, opt);
    return std::pair{profile_at(est, 0.05) / profile_at(est, 0.5), est};
  };
  auto row = [&](const std::string& id, double value, double bound, bool pass, std::size_t n,
                 const std::string& note) {
    SweepReport rep;
    rep.suite = "glip-converse";
    rep.inequality_id = id;
    rep.sample_count = n;
    rep.empirical_constant = value;
    rep.bound = bound;
    rep.pass = pass;
    rep.note = note;
    out.push_back(std::move(rep));
  };
  const FieldPtr sin1 = make_sin_x1(1);
  const auto [g_far, est_far] = growth(*sin1, far);
  row("sin-x1: growth t=0.5 -> 0.05, |x| <= 1e3", g_far, calibration::kSinGrowth,
      g_far >= calibration::kSinGrowth && g_far >= 2.0, ts.size() * far.size(),
      "profile ratio; recorded factor / 1.2");
  const auto [g_near, est_near] = growth(*sin1, near);
  const auto [g_sq, est_sq] = growth(*make_sin_x1sq(1), near);
  row("sin-x1sq vs sin-x1 growth, |x| <= 30", g_sq / g_near, 1.0, g_sq > g_near,
      ts.size() * near.size(), "ratio of growth factors");
  const auto [g_bump, est_bump] = growth(*make_gauss_bump(1), near);
  row("gauss-bump control growth, |x| <= 30", g_bump, 1.2, g_bump <= 1.2, ts.size() * near.size(),
      "no growth expected");
  double agree = 0.0;
  for (const GlipEstimate* e : {&est_far, &est_near, &est_sq, &est_bump}) {
    agree = std::max({agree, e->worst_value_agreement, e->worst_dt_agreement});
  }
  row("pipeline agreement", agree, 1.0, agree <= 1.0,
      ts.size() * (far.size() + 3 * near.size()), "max |difference| / allowed; P_t f tolerance 1e-5");
  return out;
}

}  // namespace gkl
