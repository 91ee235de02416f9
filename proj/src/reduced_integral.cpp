#include "gkl/reduced_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gkl {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

std::vector<double> clean(std::vector<double> pts) {
  std::erase_if(pts, [](double p) { return !std::isfinite(p); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Adds geometric breakpoints (ratio 4) between consecutive points whose
// distance exceeds four times the smaller distance to the nearest "scale" point.
std::vector<double> refine_geometric(const std::vector<double>& pts) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    out.push_back(a);
    // grow away from both ends towards the middle
    const double len = b - a;
    double step = len;
    if (i > 0) step = std::min(step, pts[i] - pts[i - 1]);
    if (i + 2 < pts.size()) step = std::min(step, pts[i + 2] - pts[i + 1]);
    if (step < len / 4.0) {
      for (double d = step; d < len / 2.0; d *= 4.0) {
        out.push_back(a + d);
        out.push_back(b - d);
      }
      out.push_back(0.5 * (a + b));
    }
  }
  out.push_back(pts.back());
  return clean(std::move(out));
}

}  // namespace


AxialCoords axial_from_gap(std::size_t dim, double r, double gap, double rho) {
  AxialCoords ax;
  ax.dim = dim;
  ax.r = r;
  if (dim == 1) rho = 0.0;
  if (r == 0.0) {
    ax.y_par = std::hypot(gap, rho);
    ax.gap = -ax.y_par;
    ax.y_perp = 0.0;
  } else {
    ax.gap = gap;
    ax.y_par = r - gap;
    ax.y_perp = std::abs(rho);
  }
  return ax;
}

std::vector<double> gap_breakpoints(double t, double r) {
  std::vector<double> pts{0.0};
  auto both = [&](double c) {
    if (c > 1e-12) {
      pts.push_back(c);
      pts.push_back(-c);
    }
  };
  both(t);
  both(4.0 * t);
  both(0.25 * t);
  if (r > 0.0) {
    both(t * t * r);
    both(4.0 * t * t * r);
    pts.push_back(0.5 * r);
  }
  for (double y : {1.0, 0.0, -1.0}) pts.push_back(r - y);
  both(std::max(1.0, 2.0 * r) + 4.0);
  return clean(std::move(pts));
}

namespace {

struct Segment {
  double a, b;
  std::vector<double> value, l1, error;
};

// One Gauss-Kronrod 7/15 panel on [a, b] for every component at once.
Segment kronrod_panel(const VectorIntegrand& g, std::size_t m, double a, double b,
                      long& evaluations) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::vector<double> kr(m, 0.0), ga(m, 0.0), l1(m, 0.0), f0(m), f1(m);
  for (std::size_t i = 0; i < xk.size(); ++i) {
    g(c + h * xk[i], f0);
    if (i == 0) {
      std::fill(f1.begin(), f1.end(), 0.0);
      ++evaluations;
    } else {
      g(c - h * xk[i], f1);
      evaluations += 2;
    }
    for (std::size_t k = 0; k < m; ++k) {
      const double pair = f0[k] + f1[k];
      kr[k] += wk[i] * pair;
      l1[k] += wk[i] * (std::abs(f0[k]) + std::abs(f1[k]));
      if (i % 2 == 0) ga[k] += wg[i / 2] * pair;
    }
  }
  Segment s{a, b, std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t k = 0; k < m; ++k) {
    s.value[k] = kr[k] * h;
    s.l1[k] = l1[k] * h;
    s.error[k] = std::abs(kr[k] - ga[k]) * h;
  }
  return s;
}

// Global adaptive bisection: refine the panel with the largest error
// (relative to its component's integral of |g|) until every component's
// summed error is below tol times that integral.
void adapt(const VectorIntegrand& g, std::size_t m, std::vector<Segment>& segs, double tol,
           long& evaluations) {
  constexpr std::size_t kMaxSegments = 4000;
  std::vector<double> err(m), l1(m);
  while (true) {
    std::fill(err.begin(), err.end(), 0.0);
    std::fill(l1.begin(), l1.end(), 0.0);
    for (const Segment& s : segs) {
      for (std::size_t k = 0; k < m; ++k) {
        err[k] += s.error[k];
        l1[k] += s.l1[k];
      }
    }
    bool done = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (err[k] > tol * l1[k]) done = false;
    }
    if (done || segs.size() >= kMaxSegments) return;
    std::size_t worst = 0;
    double worst_score = -1.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      double score = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (l1[k] > 0.0) score = std::max(score, segs[i].error[k] / l1[k]);
      }
      if (score > worst_score) {
        worst_score = score;
        worst = i;
      }
    }
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) return;
    segs[worst] = kronrod_panel(g, m, s.a, mid, evaluations);
    segs.push_back(kronrod_panel(g, m, mid, s.b, evaluations));
  }
}

YIntegralResult scalar_of(const YVectorResult& v) {
  return YIntegralResult{v.value[0], v.l1[0], v.error[0], v.evaluations};
}

}  // namespace

YVectorResult integrate_line(const VectorIntegrand& f, std::size_t components,
                             const std::vector<double>& breaks_in, double tol, bool left_tail) {
  if (components == 0) throw std::invalid_argument("integrate_line: need at least one component");
  const std::vector<double> breaks = clean(breaks_in);
  if (breaks.empty()) throw std::invalid_argument("integrate_line: need at least one breakpoint");
  const std::size_t m = components;
  // Tails beyond the outermost breakpoints: y = b +- w (1/u - 1), u in (0, 1],
  // with w the distance scale of the outer breakpoints.
  const double lo = breaks.front(), hi = breaks.back();
  const double w = std::max({1.0, std::abs(lo), std::abs(hi)});
  const std::vector<double> pts = refine_geometric(breaks);

  // Map every piece onto one parameter line so a single adaptive loop can
  // balance the error between the tails and the finite part: [-1, 0) left
  // tail, [0, L] finite panels (identity shifted), (L, L + 1] right tail.
  const double shift = -pts.front();
  const double len = pts.back() - pts.front();
  VectorIntegrand g = [&](double v, std::span<double> out) {
    double y, jac = 1.0;
    if (v < 0.0) {
      const double u = v + 1.0;
      y = lo - w * (1.0 / u - 1.0);
      jac = w / (u * u);
    } else if (v > len) {
      const double u = 1.0 - (v - len);
      y = hi + w * (1.0 / u - 1.0);
      jac = w / (u * u);
    } else {
      y = v - shift;
    }
    if (!std::isfinite(y)) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    f(y, out);
    for (double& o : out) o *= jac;
  };
  YVectorResult out;
  std::vector<Segment> segs;
  if (left_tail) {
    // mirror of the right tail: [-1, -0.5], [-0.5, -0.25], [-0.25, 0]
    for (double a : {-1.0, -0.5, -0.25}) {
      segs.push_back(kronrod_panel(g, m, a, a == -1.0 ? -0.5 : a + 0.25, out.evaluations));
    }
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    segs.push_back(kronrod_panel(g, m, pts[i] + shift, pts[i + 1] + shift, out.evaluations));
  }
  for (double a : {0.0, 0.5, 0.75}) {
    segs.push_back(kronrod_panel(g, m, len + a, len + (a == 0.0 ? 0.5 : a + 0.25), out.evaluations));
  }
  adapt(g, m, segs, tol, out.evaluations);
  out.value.assign(m, 0.0);
  out.l1.assign(m, 0.0);
  out.error.assign(m, 0.0);
  for (const Segment& s : segs) {
    for (std::size_t k = 0; k < m; ++k) {
      out.value[k] += s.value[k];
      out.l1[k] += s.l1[k];
      out.error[k] += s.error[k];
    }
  }
  return out;
}

YIntegralResult integrate_line(const std::function<double(double)>& f,
                               const std::vector<double>& breaks, double tol) {
  return integrate_line(f, breaks, tol, true);
}

YIntegralResult integrate_line(const std::function<double(double)>& f,
                               const std::vector<double>& breaks, double tol, bool left_tail) {
  return scalar_of(integrate_line([&](double y, std::span<double> o) { o[0] = f(y); }, 1, breaks,
                                  tol, left_tail));
}

YVectorResult integrate_over_y(std::size_t dim, const AxialVectorIntegrand& f,
                               std::size_t components, const std::vector<double>& breaks,
                               const std::vector<double>& rho_breaks_in,
                               const YIntegralOptions& opt) {
  if (dim == 1) {
    return integrate_line([&](double g, std::span<double> o) { f(g, 0.0, o); }, components, breaks,
                          opt.tol, true);
  }
  if (dim != 2) throw std::invalid_argument("integrate_over_y: only n = 1, 2 are supported");

  std::vector<double> rho_breaks = clean(rho_breaks_in);
  std::erase_if(rho_breaks, [](double p) { return !(p > 0.0); });
  rho_breaks.insert(rho_breaks.begin(), 0.0);
  long evaluations = 0;
  auto inner = [&](double g, std::span<double> o) {
    YVectorResult r = integrate_line([&](double rho, std::span<double> oo) { f(g, rho, oo); },
                                     components, rho_breaks, opt.inner_tol, false);
    evaluations += r.evaluations;
    // S^0 has two points: rho and -rho.
    for (std::size_t k = 0; k < components; ++k) o[k] = 2.0 * r.value[k];
  };
  YVectorResult out = integrate_line(inner, components, breaks, opt.tol, true);
  out.evaluations = evaluations;
  return out;
}

YIntegralResult integrate_over_y(std::size_t dim, const AxialIntegrand& f,
                                 const std::vector<double>& breaks,
                                 const std::vector<double>& rho_breaks,
                                 const YIntegralOptions& opt) {
  return scalar_of(integrate_over_y(
      dim, [&](double g, double rho, std::span<double> o) { o[0] = f(g, rho); }, 1, breaks,
      rho_breaks, opt));
}

}  // namespace gkl
