#include "gkl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace gkl {

namespace {

constexpr double kLog2 = std::numbers::ln2;

// Integration coordinates: sigma = 1 - e^{-s} below log 2, s up to the tail
// cut, v = s^{-1/2} beyond it. Inside a peak window the offset from the peak
// centre is the coordinate, so that y_par - e^{-s}|x| keeps full relative
// precision even when |x| is huge.
enum Map : int { kSigma = 0, kS = 1, kV = 2, kSigmaOffset = 3, kSOffset = 4 };

double s_of_sigma(double sigma) { return -std::log1p(-sigma); }
double sigma_of_s(double s) { return -std::expm1(-s); }

double log_prefactor(std::size_t n) {
  // log(2 pi^{(n+1)/2})
  return kLog2 + 0.5 * static_cast<double>(n + 1) * std::log(std::numbers::pi);
}

struct PeakWindow {
  int map = kSigmaOffset;
  double center = 0.0;            // sigma0 or s0
  std::vector<double> offsets;    // ascending panel endpoints relative to centre
};

struct Plan {
  std::vector<double> s_pts;  // ascending interior s-breakpoints outside the window
  std::optional<PeakWindow> window;
};

struct Integrand {
  double t;
  double r;
  double gap;
  double y_par;
  double rho2;
  double half_n;
  double log_t;
  double log_2t;
  double log_pref;
  unsigned components;
  double center = 0.0;        // peak centre for the offset maps
  double axial_center = 0.0;  // y_par - e^{-s}|x| at the centre

  // Component order: value, dt, radial, transverse.
  void operator()(int map, double u, NodeValues<4>& out) const {
    double s, log_q, axial, base;
    switch (map) {
      case kSigma:
      case kSigmaOffset: {
        const double sigma = map == kSigma ? u : center + u;
        s = s_of_sigma(sigma);
        log_q = std::log(sigma * (2.0 - sigma));
        axial = map == kSigma ? sigma * r - gap : r * u + axial_center;
        base = log_t - 1.5 * std::log(s) - t * t / (4.0 * s) - std::log1p(-sigma);
        break;
      }
      case kS:
        s = u;
        log_q = std::log(-std::expm1(-2.0 * s));
        axial = sigma_of_s(s) * r - gap;
        base = log_t - 1.5 * std::log(s) - t * t / (4.0 * s);
        break;
      case kSOffset: {
        // e^{-s}|x| = e^{-center}|x| e^{-u}
        s = center + u;
        log_q = std::log(-std::expm1(-2.0 * s));
        const double at_center = y_par - axial_center;
        axial = axial_center - at_center * std::expm1(-u);
        base = log_t - 1.5 * std::log(s) - t * t / (4.0 * s);
        break;
      }
      default:  // kV
        s = 1.0 / (u * u);
        log_q = std::log(-std::expm1(-2.0 * s));
        axial = sigma_of_s(s) * r - gap;
        base = log_2t - 0.25 * t * t * u * u;
        break;
    }
    const double q = std::exp(log_q);
    base += -(axial * axial + rho2) / q - half_n * log_q - log_pref;

    out.log_mag[0] = base;
    out.sign[0] = 1;
    if (components & kTimeDeriv) {
      const double f = 1.0 / t - t / (2.0 * s);
      out.log_mag[1] = f == 0.0 ? LogValue::neg_inf : base + std::log(std::abs(f));
      out.sign[1] = f > 0 ? 1 : (f < 0 ? -1 : 0);
    } else {
      out.log_mag[1] = LogValue::neg_inf;
      out.sign[1] = 0;
    }
    if (components & kSpaceDeriv) {
      // 2 e^{-s} / q
      const double log_w = kLog2 - s - log_q + base;
      out.log_mag[3] = log_w;
      out.sign[3] = 1;
      out.log_mag[2] = axial == 0.0 ? LogValue::neg_inf : log_w + std::log(std::abs(axial));
      out.sign[2] = axial > 0 ? 1 : (axial < 0 ? -1 : 0);
    } else {
      out.log_mag[2] = out.log_mag[3] = LogValue::neg_inf;
      out.sign[2] = out.sign[3] = 0;
    }
  }
};

// Uniform panels within +-4 widths of the centre, then geometric growth
// outward, so that very narrow peaks inside wide windows stay affordable.
// Offsets are relative to the centre, ascending, and include both edges.
std::vector<double> peak_offsets(double width, double lo, double hi) {
  std::vector<double> pts{lo, hi};
  for (int k = -4; k <= 4; ++k) {
    const double p = k * width;
    if (p > lo && p < hi) pts.push_back(p);
  }
  double step = width;
  for (double p = 4 * width; p < hi;) {
    step *= 2.0;
    p += step;
    if (p < hi) pts.push_back(p);
  }
  step = width;
  for (double p = -4 * width; p > lo;) {
    step *= 2.0;
    p -= step;
    if (p > lo) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double window_s(const PeakWindow& w, double offset) {
  return w.map == kSigmaOffset ? s_of_sigma(w.center + offset) : w.center + offset;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// with_ladders adds the scale ladders used internally; the public breakpoint
// list is the structural one (log 2, tail cut, peak window and its panels).
Plan make_plan(double t, const AxialCoords& ax, const QuadratureSpec& spec, bool with_ladders) {
  Plan plan;
  std::vector<double>& s_pts = plan.s_pts;
  s_pts = {kLog2, spec.tail_cut};

  if (ax.r > 0.0 && ax.y_par > 0.0 && ax.gap > 0.0) {
    const double sigma0 = ax.gap / ax.r;
    for (double f : {0.75, 1.25}) {
      if (f * sigma0 < 1.0) s_pts.push_back(s_of_sigma(f * sigma0));
    }
    PeakWindow w;
    if (sigma0 <= 0.5) {
      // Gaussian in sigma of width sqrt(q0/2)/|x| <= sqrt(sigma0)/|x|
      const double width = std::sqrt(sigma0 * (2.0 - sigma0) / 2.0) / ax.r;
      w.map = kSigmaOffset;
      w.center = sigma0;
      w.offsets = peak_offsets(width, -0.25 * sigma0, 0.25 * sigma0);
    } else {
      const double s0 = std::log(ax.r) - std::log(ax.y_par);
      const double width = std::sqrt(-std::expm1(-2.0 * s0) / 2.0) / ax.y_par;
      w.map = kSOffset;
      w.center = s0;
      w.offsets = peak_offsets(width, -std::log(1.25), std::log(4.0 / 3.0));
    }
    plan.window = std::move(w);
  }

  if (with_ladders) {
    // Small-s scale where the t^2/4s and |x-y|^2/2s barriers balance the
    // s^{-(n+3)/2} growth.
    const double n = static_cast<double>(ax.dim);
    const double s_star = 2.0 * (t * t / 4.0 + ax.dist_squared() / 2.0) / (n + 3.0);
    for (double p = s_star / 64.0; p < kLog2 && p <= 64.0 * s_star; p *= 4.0) s_pts.push_back(p);
    // Large-t bump of s^{-3/2} e^{-t^2/4s} at s = t^2/6.
    const double s_bump = t * t / 6.0;
    if (s_bump > kLog2) {
      for (int k = -3; k <= 6; ++k) {
        const double p = std::ldexp(s_bump, k);
        if (p < spec.tail_cut) s_pts.push_back(p);
      }
    }
  }

  if (plan.window) {
    const double lo = window_s(*plan.window, plan.window->offsets.front());
    const double hi = window_s(*plan.window, plan.window->offsets.back());
    std::erase_if(s_pts, [&](double p) { return p > lo && p < hi; });
  }
  std::erase_if(s_pts, [](double p) { return !(p > 0.0) || !std::isfinite(p); });
  sort_unique(s_pts);
  return plan;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1)");
  }
  if (nodes_per_panel < 4) throw std::invalid_argument("QuadratureSpec: nodes_per_panel must be >= 4");
  if (max_panels < 1) throw std::invalid_argument("QuadratureSpec: max_panels must be >= 1");
  if (!(tail_cut > kLog2)) throw std::invalid_argument("QuadratureSpec: tail_cut must exceed log 2");
  if (!(abs_tol_log > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol_log must be > 0");
}

LogValue mehler_kernel(double r, const EuclideanPoint& x, const EuclideanPoint& y) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("mehler_kernel: r must lie in (0, 1)");
  if (x.dim() != y.dim()) throw std::invalid_argument("mehler_kernel: dimension mismatch");
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double d = y[i] - r * x[i];
    d2 += d * d;
  }
  const double log_q = std::log1p(-r * r);
  return LogValue::from_log(-d2 / ((1.0 - r) * (1.0 + r)) -
                            0.5 * static_cast<double>(x.dim()) * log_q);
}

std::vector<double> quadrature_breakpoints(double t, const AxialCoords& ax,
                                           const QuadratureSpec& spec) {
  const Plan plan = make_plan(t, ax, spec, false);
  std::vector<double> out = plan.s_pts;
  if (plan.window) {
    for (double o : plan.window->offsets) out.push_back(window_s(*plan.window, o));
  }
  sort_unique(out);
  return out;
}

std::vector<double> quadrature_breakpoints(const KernelQuery& q, const QuadratureSpec& spec) {
  return quadrature_breakpoints(q.t(), q.axial(), spec);
}

KernelValues evaluate_kernel(double t, const AxialCoords& ax, const QuadratureSpec& spec,
                             unsigned components) {
  spec.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("evaluate_kernel: t must be > 0");
  components |= kValue;

  const Plan plan = make_plan(t, ax, spec, true);
  std::vector<Interval> intervals;
  intervals.reserve(plan.s_pts.size() + 64);

  // Plain s-segment [a, b], split at log 2 between the sigma and s maps.
  auto push_segment = [&](double a, double b) {
    if (!(b > a)) return;
    if (b <= kLog2) {
      intervals.push_back({sigma_of_s(a), sigma_of_s(b), kSigma});
    } else if (a >= kLog2) {
      intervals.push_back({a, b, kS});
    } else {
      intervals.push_back({sigma_of_s(a), 0.5, kSigma});
      intervals.push_back({kLog2, b, kS});
    }
  };

  double win_lo = spec.tail_cut, win_hi = spec.tail_cut;
  if (plan.window) {
    win_lo = window_s(*plan.window, plan.window->offsets.front());
    win_hi = window_s(*plan.window, plan.window->offsets.back());
  }
  bool window_done = !plan.window.has_value();
  double prev = 0.0;
  auto emit_window = [&] {
    const auto& off = plan.window->offsets;
    for (std::size_t i = 0; i + 1 < off.size(); ++i) {
      intervals.push_back({off[i], off[i + 1], plan.window->map});
    }
    prev = win_hi;
    window_done = true;
  };
  for (double p : plan.s_pts) {
    if (p > spec.tail_cut) break;
    if (!window_done && p >= win_lo) {
      push_segment(prev, win_lo);
      emit_window();
    }
    if (p > prev) {
      push_segment(prev, p);
      prev = p;
    }
  }
  if (!window_done) {
    push_segment(prev, win_lo);
    emit_window();
  }
  const double tail_start = std::max(prev, spec.tail_cut);
  push_segment(prev, tail_start);
  intervals.push_back({0.0, 1.0 / std::sqrt(tail_start), kV});

  Integrand f{t,
              ax.r,
              ax.gap,
              ax.y_par,
              ax.y_perp * ax.y_perp,
              0.5 * static_cast<double>(ax.dim),
              std::log(t),
              std::log(2.0 * t),
              log_prefactor(ax.dim),
              components};
  if (plan.window) {
    f.center = plan.window->center;
    if (plan.window->map == kSigmaOffset) {
      f.axial_center = std::fma(ax.r, f.center, -ax.gap);
    } else {
      f.axial_center = ax.y_par - ax.r * std::exp(-f.center);
    }
  }
  std::array<bool, 4> active{true, (components & kTimeDeriv) != 0,
                             (components & kSpaceDeriv) != 0, (components & kSpaceDeriv) != 0};
  const auto res = integrate_adaptive<4>(f, intervals, spec, active);

  KernelValues out;
  out.value = res.value[0];
  out.value_abs = res.abs[0];
  if (components & kTimeDeriv) {
    out.dt = res.value[1];
    out.dt_abs = res.abs[1];
  }
  if (components & kSpaceDeriv) {
    out.radial = res.value[2];
    out.radial_abs = res.abs[2];
    out.transverse = res.value[3];
  }
  out.panels = res.panels;
  out.evaluations = res.evaluations;
  return out;
}

KernelValues evaluate_kernel(const KernelQuery& q, const QuadratureSpec& spec,
                             unsigned components) {
  return evaluate_kernel(q.t(), q.axial(), spec, components);
}

LogValue poisson_kernel(const KernelQuery& q, const QuadratureSpec& spec) {
  return evaluate_kernel(q, spec, kValue).value;
}

LogValue dt_poisson_kernel(const KernelQuery& q, const QuadratureSpec& spec) {
  return evaluate_kernel(q, spec, kTimeDeriv).dt;
}

LogValue assemble_dx(const KernelQuery& q, const KernelValues& v, std::size_t i) {
  if (i < 1 || i > q.dim()) {
    throw std::invalid_argument("dx_poisson_kernel: coordinate index " + std::to_string(i) +
                                " outside 1.." + std::to_string(q.dim()));
  }
  const std::size_t k = i - 1;
  const double r = q.axial().r;
  if (r == 0.0) return v.transverse * LogValue::from_double(q.y()[k]);
  const LogValue radial = v.radial * LogValue::from_double(q.x()[k] / r);
  const LogValue trans = v.transverse * LogValue::from_double(q.decomp().perp[k]);
  return radial + trans;
}

LogValue dx_poisson_kernel(const KernelQuery& q, std::size_t i, const QuadratureSpec& spec) {
  if (i < 1 || i > q.dim()) {
    throw std::invalid_argument("dx_poisson_kernel: coordinate index " + std::to_string(i) +
                                " outside 1.." + std::to_string(q.dim()));
  }
  return assemble_dx(q, evaluate_kernel(q, spec, kSpaceDeriv), i);
}

}  // namespace gkl
