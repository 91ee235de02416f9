#pragma once

#include <cstddef>
#include <vector>

#include "gkl/geometry.hpp"
#include "gkl/log_value.hpp"
#include "gkl/quadrature.hpp"

namespace gkl {

// log M_r(x, y) = -|y - r x|^2 / (1 - r^2) - (n/2) log(1 - r^2), 0 < r < 1.
LogValue mehler_kernel(double r, const EuclideanPoint& x, const EuclideanPoint& y);

// Which integrals a single evaluation pass should produce. All requested
// components share the panels; refinement is driven by every requested one.
enum Component : unsigned {
  kValue = 1u,       // P_t(x, y)
  kTimeDeriv = 2u,   // d/dt P_t(x, y)
  kSpaceDeriv = 4u,  // radial and transverse parts of grad_x P_t(x, y)
};

// grad_x P_t(x, y) = x_hat * radial + y'_x * transverse, where y'_x is the
// component of y orthogonal to x (for x = 0: grad_x P = y * transverse).
// `radial` equals d/dx_1 P_t in the frame x = (|x|, 0, ..., 0).
struct KernelValues {
  LogValue value;
  LogValue dt;
  LogValue radial;
  LogValue transverse;
  LogValue value_abs;  // integral of |integrand| per component; tolerance scales
  LogValue dt_abs;
  LogValue radial_abs;
  int panels = 0;
  long evaluations = 0;
};

KernelValues evaluate_kernel(double t, const AxialCoords& ax, const QuadratureSpec& spec,
                             unsigned components);
KernelValues evaluate_kernel(const KernelQuery& q, const QuadratureSpec& spec,
                             unsigned components);

LogValue poisson_kernel(const KernelQuery& q, const QuadratureSpec& spec = {});
LogValue dt_poisson_kernel(const KernelQuery& q, const QuadratureSpec& spec = {});
// i is 1-based: 1 <= i <= n.
LogValue dx_poisson_kernel(const KernelQuery& q, std::size_t i, const QuadratureSpec& spec = {});

// Assemble d/dx_i P_t(x, y) (1-based i) from the radial/transverse parts.
LogValue assemble_dx(const KernelQuery& q, const KernelValues& v, std::size_t i);

// Interior panel endpoints in s, ascending. Always contains log 2 and
// spec.tail_cut; adds the peak window around s(sigma0) and the small-s and
// large-s ladders that separate the scales of the integrand.
std::vector<double> quadrature_breakpoints(const KernelQuery& q, const QuadratureSpec& spec = {});
std::vector<double> quadrature_breakpoints(double t, const AxialCoords& ax,
                                           const QuadratureSpec& spec);

}  // namespace gkl
