#pragma once

// Adaptive composite Gauss-Legendre quadrature carried out in log space.
//
// Each initial interval is a panel; a panel's estimate is the sum of the
// rule applied to its two halves, and its error estimate is the difference
// between that and the rule applied to the whole panel. The panel with the
// largest error (relative to the integral of |f| for its component) is
// bisected until the summed error falls below rel_tol * integral(|f|) for
// every active component.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkl/gauss_rules.hpp"
#include "gkl/log_value.hpp"

namespace gkl {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol_log = 1e-8;  // tolerance on log-values for convergence self-checks
  int max_panels = 6000;
  int nodes_per_panel = 16;
  double tail_cut = 20.0;  // beyond this s the v = s^{-1/2} substitution is used

  void validate() const;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An initial panel [lo, hi] in the coordinate identified by `map`; the
// integrand interprets `map`.
struct Interval {
  double lo;
  double hi;
  int map;
};

template <std::size_t K>
struct IntegralResult {
  std::array<LogValue, K> value{};
  std::array<LogValue, K> abs{};        // integral of |f|
  std::array<double, K> log_error{};    // log of the summed error estimate
  int panels = 0;
  long evaluations = 0;
};

template <std::size_t K>
struct NodeValues {
  std::array<double, K> log_mag;
  std::array<int, K> sign;
};

namespace detail {

template <std::size_t K>
struct PanelSums {
  std::array<LogValue, K> value{};
  std::array<LogValue, K> abs{};
};

template <std::size_t K>
struct Panel {
  double lo, hi;
  int map;
  PanelSums<K> left, right;        // rule applied to each half
  std::array<LogValue, K> whole{};  // rule applied to the whole panel
  std::array<double, K> log_err{};
  bool refinable = true;
};

}  // namespace detail

// F: void(int map, double u, NodeValues<K>& out). The values must include any
// Jacobian of the map. `active` selects the components that drive refinement;
// inactive ones are integrated on the same panels.
template <std::size_t K, class F>
IntegralResult<K> integrate_adaptive(const F& f, std::span<const Interval> intervals,
                                     const QuadratureSpec& spec,
                                     std::array<bool, K> active = [] {
                                       std::array<bool, K> a;
                                       a.fill(true);
                                       return a;
                                     }()) {
  const GaussRule& rule = gauss_legendre(spec.nodes_per_panel);
  const std::size_t n = rule.size();
  std::vector<double> log_terms(n * K);
  std::vector<int> signs(n * K);
  IntegralResult<K> result;

  auto apply_rule = [&](double lo, double hi, int map) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const double log_half = std::log(half);
    NodeValues<K> nv;
    for (std::size_t j = 0; j < n; ++j) {
      f(map, mid + half * rule.nodes[j], nv);
      const double lw = std::log(rule.weights[j]) + log_half;
      for (std::size_t k = 0; k < K; ++k) {
        if (std::isnan(nv.log_mag[k])) throw QuadratureError("quadrature: non-finite integrand");
        log_terms[k * n + j] = nv.log_mag[k] + lw;
        signs[k * n + j] = nv.sign[k];
      }
    }
    result.evaluations += static_cast<long>(n);
    detail::PanelSums<K> out;
    for (std::size_t k = 0; k < K; ++k) {
      const SignedLogSum s = signed_log_sum(std::span<const double>(&log_terms[k * n], n),
                                            std::span<const int>(&signs[k * n], n));
      out.value[k] = s.value;
      out.abs[k] = s.abs;
    }
    return out;
  };

  auto finish_panel = [&](detail::Panel<K>& p) {
    const double mid = 0.5 * (p.lo + p.hi);
    p.left = apply_rule(p.lo, mid, p.map);
    p.right = apply_rule(mid, p.hi, p.map);
    for (std::size_t k = 0; k < K; ++k) {
      const LogValue est = p.left.value[k] + p.right.value[k];
      p.log_err[k] = (p.whole[k] - est).log_magnitude();
    }
    const double scale = std::max(std::abs(p.lo), std::abs(p.hi));
    p.refinable = (p.hi - p.lo) > 64.0 * 2.2e-16 * scale && mid > p.lo && mid < p.hi;
  };

  std::vector<detail::Panel<K>> panels;
  panels.reserve(intervals.size() * 2);
  for (const Interval& iv : intervals) {
    if (!(iv.hi > iv.lo)) continue;
    detail::Panel<K> p{iv.lo, iv.hi, iv.map, {}, {}, {}, {}, true};
    p.whole = apply_rule(iv.lo, iv.hi, iv.map).value;
    finish_panel(p);
    panels.push_back(p);
  }

  const double log_tol = std::log(spec.rel_tol);
  std::vector<double> buf_log(panels.size());
  std::vector<int> buf_sign(panels.size());

  while (true) {
    std::array<LogValue, K> total_abs{};
    std::array<double, K> total_err;
    total_err.fill(LogValue::neg_inf);
    for (const auto& p : panels) {
      for (std::size_t k = 0; k < K; ++k) {
        total_abs[k] += p.left.abs[k] + p.right.abs[k];
        total_err[k] = log_add(total_err[k], p.log_err[k]);
      }
    }
    bool converged = true;
    for (std::size_t k = 0; k < K; ++k) {
      if (!active[k] || total_abs[k].is_zero()) continue;
      // a log magnitude L carries an absolute error ~eps |L|, so values far
      // out in the tails cannot be resolved better than that
      const double lm = total_abs[k].log_magnitude();
      const double floor = std::log(64.0 * 2.2e-16 * std::max(1.0, std::abs(lm)));
      if (total_err[k] > std::max(log_tol, floor) + lm) converged = false;
    }
    if (converged) {
      result.log_error = total_err;
      result.abs = total_abs;
      break;
    }
    std::size_t worst = panels.size();
    double worst_score = LogValue::neg_inf;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!panels[i].refinable) continue;
      double score = LogValue::neg_inf;
      for (std::size_t k = 0; k < K; ++k) {
        if (!active[k] || total_abs[k].is_zero()) continue;
        score = std::max(score, panels[i].log_err[k] - total_abs[k].log_magnitude());
      }
      if (score > worst_score) {
        worst_score = score;
        worst = i;
      }
    }
    if (worst == panels.size()) {
      // Nothing left to bisect: the remaining error sits in panels already at
      // machine resolution, which is as good as this rule gets.
      result.log_error = total_err;
      result.abs = total_abs;
      break;
    }
    if (static_cast<int>(panels.size()) >= spec.max_panels) {
      throw QuadratureError("quadrature: no convergence within " +
                            std::to_string(spec.max_panels) + " panels");
    }
    detail::Panel<K> parent = panels[worst];
    const double mid = 0.5 * (parent.lo + parent.hi);
    detail::Panel<K> a{parent.lo, mid, parent.map, {}, {}, parent.left.value, {}, true};
    detail::Panel<K> b{mid, parent.hi, parent.map, {}, {}, parent.right.value, {}, true};
    finish_panel(a);
    finish_panel(b);
    panels[worst] = a;
    panels.push_back(b);
  }

  buf_log.resize(panels.size());
  buf_sign.resize(panels.size());
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const LogValue v = panels[i].left.value[k] + panels[i].right.value[k];
      buf_log[i] = v.log_magnitude();
      buf_sign[i] = v.sign();
    }
    result.value[k] = signed_log_sum(buf_log, buf_sign).value;
  }
  result.panels = static_cast<int>(panels.size());
  return result;
}

}  // namespace gkl
