#include "gkl/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gkl/gauss_rules.hpp"
#include "gkl/kernel.hpp"
#include "gkl/parallel.hpp"

namespace gkl {

HolderExponent::HolderExponent(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

namespace {

void require_same_dim(const EuclideanPoint& x, const EuclideanPoint& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("modulus: dimension mismatch");
}

}  // namespace

double combined_modulus_sym(const EuclideanPoint& x, const EuclideanPoint& y, HolderExponent a) {
  require_same_dim(x, y);
  const double al = a.alpha();
  const double d = distance(x, y);
  if (d == 0.0) return 0.0;
  const double nx = x.norm(), ny = y.norm();
  const double s = nx + ny;
  // (|x|+|y|) sin(theta), theta = 0 when either point is the origin
  const double spread = (nx == 0.0 || ny == 0.0) ? 0.0 : s * (wedge_norm(x, y) / (nx * ny));
  const double short_range = std::pow(d, al);
  const double long_range = std::pow(d / (1.0 + s), 0.5 * al) + std::pow(spread, al);
  return std::min(short_range, long_range);
}

double combined_modulus_asym(const EuclideanPoint& x, const EuclideanPoint& y, HolderExponent a) {
  require_same_dim(x, y);
  const double al = a.alpha();
  const double d = distance(x, y);
  if (d == 0.0) return 0.0;
  const AxialDecomposition dec = axial_decompose(x, y);
  const double nx = x.norm();
  const double axial_gap = std::abs(nx - dec.parallel_signed_len);  // |x - y_x|
  const double long_range =
      std::pow(axial_gap / (1.0 + nx), 0.5 * al) + std::pow(dec.perp_len, al);
  return std::min(std::pow(d, al), long_range);
}

ModulusSample make_modulus_sample(const EuclideanPoint& x, const EuclideanPoint& y,
                                  HolderExponent a, const ScalarField* f) {
  ModulusSample s{x, y, combined_modulus_sym(x, y, a), combined_modulus_asym(x, y, a), 0.0};
  if (f) s.f_diff = (*f)(x) - (*f)(y);
  return s;
}

ModulusRatioReport modulus_equivalence_report(const std::vector<PointPair>& samples,
                                              HolderExponent a, std::size_t bins) {
  if (samples.empty()) throw std::invalid_argument("modulus_equivalence_report: no samples");
  if (bins == 0) throw std::invalid_argument("modulus_equivalence_report: need at least one bin");
  ModulusRatioReport rep;
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (const auto& [x, y] : samples) {
    if (x == y) throw std::invalid_argument("modulus_equivalence_report: pair with x == y");
    const double sym = combined_modulus_sym(x, y, a);
    const double asym = combined_modulus_asym(x, y, a);
    const double ratio = asym / sym;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
      ++rep.degenerate;
      continue;
    }
    logs.push_back(std::log10(ratio));
  }
  rep.count = samples.size();
  if (logs.empty()) return rep;
  const auto [lo_it, hi_it] = std::minmax_element(logs.begin(), logs.end());
  const double lo = *lo_it, hi = *hi_it;
  rep.min_ratio = std::pow(10.0, lo);
  rep.max_ratio = std::pow(10.0, hi);
  rep.histogram.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) {
    rep.bin_edges.push_back(std::pow(10.0, lo + width * static_cast<double>(i)));
  }
  for (double l : logs) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((l - lo) / width) : 0;
    rep.histogram[std::min(b, bins - 1)]++;
  }
  return rep;
}

double lip_constant_estimate(const ScalarField& f, const std::vector<PointPair>& samples,
                             HolderExponent a) {
  if (samples.empty()) throw std::invalid_argument("lip_constant_estimate: no samples");
  double best = 0.0;
  for (const auto& [x, y] : samples) {
    const double m = combined_modulus_sym(x, y, a);
    if (m == 0.0) throw std::invalid_argument("lip_constant_estimate: pair with x == y");
    best = std::max(best, std::abs(f(x) - f(y)) / m);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Subordination pipeline

namespace {

constexpr int kLogS = 0;
constexpr int kTailV = 1;

// T_s f(x) = pi^{-n/2} int e^{-|z|^2} f(e^{-s} x + sqrt(1 - e^{-2s}) z) dz
struct HeatApplicator {
  const ScalarField& f;
  const EuclideanPoint& x;
  const GaussRule* rule;       // tensor Gauss-Hermite rule, or
  std::vector<double> kinks;  // adaptive in z split at these y (n = 1)
  double kink_tol = 1e-12;

  double operator()(double s) const {
    const double e = std::isinf(s) ? 0.0 : std::exp(-s);
    const double sq = std::isinf(s) ? 1.0 : std::sqrt(-std::expm1(-2.0 * s));
    const std::size_t n = x.dim();
    if (!kinks.empty()) {
      // the Gaussian's own scale, so no panel can step over the bump
      std::vector<double> zb{-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0};
      for (double k : kinks) zb.push_back((k - e * x[0]) / sq);
      const YIntegralResult r = integrate_line(
          [&](double z) {
            const double y = e * x[0] + sq * z;
            return std::exp(-z * z) * f(std::span<const double>(&y, 1));
          },
          zb, kink_tol);
      // below the quadrature's own resolution the value is noise; returning
      // it would leave the outer relative-error test chasing rounding
      if (std::abs(r.value) <= kink_tol * r.l1) return 0.0;
      return r.value / std::sqrt(std::numbers::pi);
    }
    const std::size_t m = rule->size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> p(n);
    double acc = 0.0, acc_abs = 0.0;
    while (true) {
      double w = 1.0;
      for (std::size_t d = 0; d < n; ++d) {
        p[d] = e * x[d] + sq * rule->nodes[idx[d]];
        w *= rule->weights[idx[d]];
      }
      if (w != 0.0) {
        const double v = w * f(std::span<const double>(p));
        acc += v;
        acc_abs += std::abs(v);
      }
      std::size_t d = 0;
      while (d < n && ++idx[d] == m) idx[d++] = 0;
      if (d == n) break;
    }
    // cancellation down to rounding level (odd f at a symmetric point)
    if (std::abs(acc) <= 64.0 * std::numeric_limits<double>::epsilon() * acc_abs) return 0.0;
    return acc * std::pow(std::numbers::pi, -0.5 * static_cast<double>(n));
  }
};

struct PairResult {
  double coarse, fine, fine_abs;
  int panels;
};

// Outer s-integral for two inner rules at once (the second one finer); with
// a single applicator both components coincide.
PairResult apply_pair(double t, const HeatApplicator& coarse, const HeatApplicator* fine,
                      const QuadratureSpec& spec) {
  const double log_pref = std::log(t) - std::log(2.0 * std::sqrt(std::numbers::pi));

  auto integrand = [&](int map, double u, NodeValues<2>& nv) {
    double s, w;
    if (map == kLogS) {
      s = std::exp(u);
      w = log_pref - 0.5 * u - t * t / (4.0 * s);  // s^{-3/2} ds = s^{-1/2} du
    } else {
      s = u == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (u * u);
      w = log_pref + std::log(2.0) - 0.25 * t * t * u * u;  // s^{-3/2} ds = 2 dv
    }
    const double c = coarse(s);
    const double vals[2] = {c, fine ? (*fine)(s) : c};
    for (int k = 0; k < 2; ++k) {
      const double v = vals[k];
      nv.sign[k] = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
      nv.log_mag[k] = v == 0.0 ? LogValue::neg_inf : w + std::log(std::abs(v));
    }
  };

  std::vector<Interval> ivs;
  const double s_lo = t * t / 2000.0;
  const double u_hi = std::log(spec.tail_cut);
  if (s_lo < spec.tail_cut) {
    const double u_lo = std::log(s_lo);
    const int pieces = std::max(1, static_cast<int>(std::ceil(u_hi - u_lo)));
    for (int i = 0; i < pieces; ++i) {
      ivs.push_back({u_lo + (u_hi - u_lo) * i / pieces, u_lo + (u_hi - u_lo) * (i + 1) / pieces, kLogS});
    }
  }
  const double v_hi = 1.0 / std::sqrt(std::max(spec.tail_cut, s_lo));
  const double v_mid = 2.0 / t;
  if (v_mid < v_hi) {
    ivs.push_back({0.0, v_mid, kTailV});
    ivs.push_back({v_mid, v_hi, kTailV});
  } else {
    ivs.push_back({0.0, v_hi, kTailV});
  }
  const IntegralResult<2> r = integrate_adaptive<2>(integrand, ivs, spec);
  return {r.value[0].value(), r.value[1].value(), r.abs[1].value(), r.panels};
}

int default_order(std::size_t n) { return n <= 2 ? 64 : 32; }
int default_max_order(std::size_t n) { return n == 1 ? 1024 : (n == 2 ? 256 : 64); }

}  // namespace

ApplyResult poisson_apply_detailed(const ScalarField& f, double t, const EuclideanPoint& x,
                                   const ApplyOptions& opt) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("poisson_apply: t must be > 0");
  const std::size_t n = x.dim();
  if (n != f.dim()) throw std::invalid_argument("poisson_apply: field and point dimensions differ");
  if (n > 3) throw std::invalid_argument("poisson_apply: only n <= 3 is supported");
  opt.outer.validate();
  if (n == 1) {
    std::vector<double> kinks = f.kinks();
    if (!kinks.empty()) {
      const HeatApplicator heat{f, x, nullptr, std::move(kinks)};
      const PairResult p = apply_pair(t, heat, nullptr, opt.outer);
      return ApplyResult{p.fine, p.fine_abs, 0, p.panels};
    }
  }
  int order = opt.hermite_order > 0 ? opt.hermite_order : default_order(n);
  const int max_order = opt.max_hermite_order > 0 ? opt.max_hermite_order : default_max_order(n);
  while (true) {
    if (2 * order > max_order) {
      std::ostringstream os;
      os << "poisson_apply: Gauss-Hermite rule did not settle by order " << max_order << " (t=" << t
         << ")";
      throw QuadratureError(os.str());
    }
    const HeatApplicator coarse{f, x, &gauss_hermite(order), {}};
    const HeatApplicator fine{f, x, &gauss_hermite(2 * order), {}};
    const PairResult p = apply_pair(t, coarse, &fine, opt.outer);
    const double scale = std::max(std::abs(p.fine), p.fine_abs);
    if (std::abs(p.fine - p.coarse) <= opt.hermite_rel_change * scale) {
      return ApplyResult{p.fine, p.fine_abs, 2 * order, p.panels};
    }
    order *= 2;
  }
}

double poisson_apply(const ScalarField& f, double t, const EuclideanPoint& x,
                     const QuadratureSpec& spec) {
  ApplyOptions opt;
  opt.outer = spec;
  return poisson_apply_detailed(f, t, x, opt).value;
}

ApplyResult dt_poisson_apply_fd(const ScalarField& f, double t, const EuclideanPoint& x,
                                const ApplyOptions& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("dt_poisson_apply_fd: t must be > 0");
  const double h = 1e-3 * t;
  const ApplyResult up = poisson_apply_detailed(f, t + h, x, opt);
  const ApplyResult down = poisson_apply_detailed(f, t - h, x, opt);
  return ApplyResult{(up.value - down.value) / (2.0 * h), (up.abs + down.abs) / (2.0 * h),
                     std::max(up.hermite_order, down.hermite_order), up.panels + down.panels};
}

// ---------------------------------------------------------------------------
// Kernel-level pipeline

KernelLevelResult kernel_level_apply(const ScalarField& f, double t, const EuclideanPoint& x,
                                     const KernelLevelOptions& opt) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("kernel_level_apply: t must be > 0");
  const std::size_t n = x.dim();
  if (n != f.dim()) throw std::invalid_argument("kernel_level_apply: field and point dimensions differ");
  if (n > 2) throw std::invalid_argument("kernel_level_apply: only n <= 2 is supported");

  const double r = x.norm();
  // Frame: e1 along x (any unit vector when x = 0), e2 its rotation by 90 degrees.
  std::vector<double> e1(n, 0.0), e2(n, 0.0);
  if (r > 0.0) {
    for (std::size_t i = 0; i < n; ++i) e1[i] = x[i] / r;
  } else {
    e1[0] = 1.0;
  }
  if (n == 2) {
    e2[0] = -e1[1];
    e2[1] = e1[0];
  }
  const double fx = f(x);
  const std::size_t m = 2 + n;
  const unsigned comps = kValue | kTimeDeriv | kSpaceDeriv;

  auto integrand = [&](double g, double rho, std::span<double> out) {
    const AxialCoords ax = axial_from_gap(n, r, g, rho);
    const KernelValues kv = evaluate_kernel(t, ax, opt.kernel, comps);
    const double ypar = r - g;  // signed, also for r = 0
    std::vector<double> yp(n), ym(n);
    for (std::size_t i = 0; i < n; ++i) {
      yp[i] = ypar * e1[i] + rho * e2[i];
      ym[i] = ypar * e1[i] - rho * e2[i];
    }
    double fbar, fodd;
    if (n == 1 || rho == 0.0) {
      fbar = f(std::span<const double>(yp));
      fodd = 0.0;
    } else {
      const double fp = f(std::span<const double>(yp)), fm = f(std::span<const double>(ym));
      fbar = 0.5 * (fp + fm);
      fodd = 0.5 * (fp - fm);
    }
    const double P = kv.value.value();
    const double D = kv.dt.value();
    const double R = kv.radial.value();
    const double Q = kv.transverse.value();
    out[0] = P * fbar;
    out[1] = D * (fbar - fx);
    for (std::size_t i = 0; i < n; ++i) {
      // d_{x_i} P = R e1_i + Q y'_i for x != 0 and Q y_i for x = 0
      const double even = r > 0.0 ? R * e1[i] : Q * ypar * e1[i];
      out[2 + i] = even * (fbar - fx) + Q * rho * e2[i] * fodd;
    }
  };

  std::vector<double> rho_breaks{0.25 * t, t, 4.0 * t, 1.0, 4.0};
  if (r > 0.0) rho_breaks.push_back(t * std::sqrt(r));
  std::vector<double> gaps = gap_breakpoints(t, r);
  for (double k : f.kinks()) gaps.push_back(r - k * e1[0]);
  const YVectorResult res = integrate_over_y(n, integrand, m, gaps, rho_breaks, opt.y);
  KernelLevelResult out;
  out.value = res.value[0];
  out.value_l1 = res.l1[0];
  out.dt = res.value[1];
  out.dt_l1 = res.l1[1];
  out.grad.assign(res.value.begin() + 2, res.value.end());
  out.grad_l1.assign(res.l1.begin() + 2, res.l1.end());
  out.evaluations = res.evaluations;
  return out;
}

// ---------------------------------------------------------------------------
// Seminorm

namespace {

struct PointOutcome {
  double dt = 0.0;
  double grad_max = 0.0;
  double radial = -1.0;  // (1 + x1)|d_{x1} P_t f|, < 0 when x is not on the positive axis
  double dt_agreement = 0.0;
  double value_agreement = 0.0;
};

bool on_positive_axis(const EuclideanPoint& x) {
  if (!(x[0] > 0.0)) return false;
  for (std::size_t i = 1; i < x.dim(); ++i) {
    if (x[i] != 0.0) return false;
  }
  return true;
}

std::string describe(double t, const EuclideanPoint& x) {
  std::ostringstream os;
  os.precision(17);
  os << "t=" << t << " x=(";
  for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? "," : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

GlipEstimate glip_seminorm_estimate(const ScalarField& f, HolderExponent a,
                                    const std::vector<double>& t_grid,
                                    const std::vector<EuclideanPoint>& x_samples,
                                    const GlipOptions& opt) {
  if (t_grid.empty()) throw std::invalid_argument("glip_seminorm_estimate: empty t grid");
  if (x_samples.empty()) throw std::invalid_argument("glip_seminorm_estimate: no x samples");
  for (double t : t_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("glip_seminorm_estimate: t must be > 0");
  }
  for (const auto& x : x_samples) {
    if (x.dim() != f.dim()) throw std::invalid_argument("glip_seminorm_estimate: dimension mismatch");
  }
  const bool kernel_level = f.dim() <= 2;
  const std::size_t nx = x_samples.size();
  std::vector<PointOutcome> outcomes(t_grid.size() * nx);

  parallel_for(outcomes.size(), [&](std::size_t k) {
    const double t = t_grid[k / nx];
    const EuclideanPoint& x = x_samples[k % nx];
    PointOutcome& o = outcomes[k];
    const ApplyResult fd = dt_poisson_apply_fd(f, t, x, opt.apply);
    if (!kernel_level) {
      o.dt = fd.value;
      return;
    }
    const KernelLevelResult kl = kernel_level_apply(f, t, x, opt.kernel);
    const ApplyResult sub = poisson_apply_detailed(f, t, x, opt.apply);

    // Allowed gaps: the relative tolerance plus the error scales of both
    // pipelines, which matter when the result is a small difference.
    const double ytol = opt.kernel.y.tol;
    const double htol = opt.apply.hermite_rel_change;
    const double dt_allowed = opt.dt_tolerance * std::max(std::abs(kl.dt), std::abs(fd.value)) +
                              10.0 * (ytol * kl.dt_l1 + htol * fd.abs);
    const double v_allowed = opt.value_tolerance * std::max(std::abs(kl.value), std::abs(sub.value)) +
                             10.0 * (ytol * kl.value_l1 + htol * sub.abs);
    const double dt_gap = std::abs(kl.dt - fd.value);
    const double v_gap = std::abs(kl.value - sub.value);
    o.dt_agreement = dt_allowed > 0.0 ? dt_gap / dt_allowed : (dt_gap == 0.0 ? 0.0 : INFINITY);
    o.value_agreement = v_allowed > 0.0 ? v_gap / v_allowed : (v_gap == 0.0 ? 0.0 : INFINITY);
    if (o.dt_agreement > 1.0) {
      std::ostringstream os;
      os.precision(10);
      os << "d/dt P_t f pipelines disagree at " << describe(t, x) << ": kernel-level " << kl.dt
         << ", finite difference " << fd.value;
      throw PipelineDisagreement(os.str());
    }
    if (o.value_agreement > 1.0) {
      std::ostringstream os;
      os.precision(10);
      os << "P_t f pipelines disagree at " << describe(t, x) << ": kernel-level " << kl.value
         << ", subordination " << sub.value;
      throw PipelineDisagreement(os.str());
    }
    o.dt = kl.dt;
    for (double g : kl.grad) o.grad_max = std::max(o.grad_max, std::abs(g));
    if (on_positive_axis(x)) o.radial = (1.0 + x[0]) * std::abs(kl.grad[0]);
  });

  GlipEstimate est;
  est.cross_checked = kernel_level;
  const double al = a.alpha();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    GlipProfilePoint p;
    p.t = t;
    double grad = 0.0, radial = 0.0;
    for (std::size_t j = 0; j < nx; ++j) {
      const PointOutcome& o = outcomes[i * nx + j];
      if (std::abs(o.dt) > p.sup_dt) {
        p.sup_dt = std::abs(o.dt);
        p.argmax = j;
      }
      grad = std::max(grad, o.grad_max);
      radial = std::max(radial, o.radial);
      est.worst_dt_agreement = std::max(est.worst_dt_agreement, o.dt_agreement);
      est.worst_value_agreement = std::max(est.worst_value_agreement, o.value_agreement);
    }
    p.weighted = std::pow(t, 1.0 - al) * p.sup_dt;
    p.grad_weighted = std::pow(t, 1.0 - al) * grad;
    p.radial_weighted = std::pow(t, 2.0 - al) * radial;
    est.seminorm = std::max(est.seminorm, p.weighted);
    est.profile.push_back(p);
  }
  return est;
}

GlipEstimate glip_seminorm_estimate(const ScalarField& f, HolderExponent a,
                                    const std::vector<double>& t_grid,
                                    const std::vector<EuclideanPoint>& x_samples,
                                    const QuadratureSpec& spec) {
  GlipOptions opt;
  opt.apply.outer = spec;
  opt.kernel.kernel = spec;
  return glip_seminorm_estimate(f, a, t_grid, x_samples, opt);
}

}  // namespace gkl
