#pragma once

// Integrals over y in R^n (n = 1, 2) of functions that depend on y only
// through the axial coordinates relative to a fixed x: the gap g = |x| - y_par
// and rho = |y'|. The y'-directions are integrated out analytically through
// the surface measure of the (n-2)-sphere, so callers with integrands that
// are not symmetric under y' -> -y' must average over the sign of rho.

#include <functional>
#include <span>
#include <vector>

#include "gkl/geometry.hpp"

namespace gkl {

struct YIntegralOptions {
  double tol = 1e-9;        // relative tolerance of the outer integral
  double inner_tol = 1e-9;  // relative tolerance of the rho-integral (n = 2)
};

struct YIntegralResult {
  double value = 0.0;
  double l1 = 0.0;  // integral of |F|
  double error = 0.0;
  long evaluations = 0;
};

struct YVectorResult {
  std::vector<double> value, l1, error;  // per component
  long evaluations = 0;
};

// Canonical axial coordinates of y given x = (r, 0, ..., 0), the gap and rho.
// With r = 0 the whole of y is parallel (y_par = |y|, rho folded in).
AxialCoords axial_from_gap(std::size_t dim, double r, double gap, double rho);

// Breakpoints in the gap variable at the scales of P_t(x, .): y = x, the
// short scales t and t^2|x| on both sides, y = x/2, y = +-1 and y = 0.
std::vector<double> gap_breakpoints(double t, double r);

using AxialIntegrand = std::function<double(double gap, double rho)>;

// Integral of F over y in R^n, n in {1, 2}. `breaks` are finite gap
// breakpoints; the integral runs over the whole line beyond them.
YIntegralResult integrate_over_y(std::size_t dim, const AxialIntegrand& f,
                                 const std::vector<double>& breaks,
                                 const std::vector<double>& rho_breaks,
                                 const YIntegralOptions& opt = {});

// Vector-valued integrands fill one output slot per component; all
// components share the panels and each must meet the tolerance.
using VectorIntegrand = std::function<void(double, std::span<double>)>;
using AxialVectorIntegrand = std::function<void(double gap, double rho, std::span<double>)>;

YVectorResult integrate_over_y(std::size_t dim, const AxialVectorIntegrand& f,
                               std::size_t components, const std::vector<double>& breaks,
                               const std::vector<double>& rho_breaks,
                               const YIntegralOptions& opt = {});
YVectorResult integrate_line(const VectorIntegrand& f, std::size_t components,
                             const std::vector<double>& breaks, double tol, bool left_tail);

// Integral over the line of a function of one variable, by globally adaptive
// Gauss-Kronrod 7/15 panels seeded at the breakpoints (refined geometrically
// between distant ones). Without the left tail the integral starts at the
// first breakpoint.
YIntegralResult integrate_line(const std::function<double(double)>& f,
                               const std::vector<double>& breaks, double tol);
YIntegralResult integrate_line(const std::function<double(double)>& f,
                               const std::vector<double>& breaks, double tol, bool left_tail);

}  // namespace gkl
