#include "gkl/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gkl {

namespace {

void require_finite(const std::vector<double>& c) {
  if (c.empty()) throw std::invalid_argument("EuclideanPoint: dimension must be >= 1");
  for (double v : c) {
    if (!std::isfinite(v)) throw std::invalid_argument("EuclideanPoint: non-finite coordinate");
  }
}

void require_same_dim(const EuclideanPoint& a, const EuclideanPoint& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

}  // namespace

EuclideanPoint::EuclideanPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  require_finite(coords_);
}

EuclideanPoint::EuclideanPoint(std::initializer_list<double> coords) : coords_(coords) {
  require_finite(coords_);
}

EuclideanPoint EuclideanPoint::zeros(std::size_t dim) {
  return EuclideanPoint(std::vector<double>(dim, 0.0));
}

EuclideanPoint EuclideanPoint::on_axis(std::size_t dim, double first) {
  std::vector<double> c(dim, 0.0);
  if (!c.empty()) c[0] = first;
  return EuclideanPoint(std::move(c));
}

double EuclideanPoint::norm_squared() const {
  double s = 0.0;
  for (double v : coords_) s += v * v;
  return s;
}

double EuclideanPoint::norm() const {
  // hypot-style scaling is unnecessary for the coordinate ranges used here
  // (|x| <= e^20), but keep it exact for 1-D.
  if (coords_.size() == 1) return std::abs(coords_[0]);
  return std::sqrt(norm_squared());
}

bool EuclideanPoint::is_zero() const {
  for (double v : coords_) {
    if (v != 0.0) return false;
  }
  return true;
}

EuclideanPoint operator+(const EuclideanPoint& a, const EuclideanPoint& b) {
  require_same_dim(a, b);
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return EuclideanPoint(std::move(c));
}

EuclideanPoint operator-(const EuclideanPoint& a, const EuclideanPoint& b) {
  require_same_dim(a, b);
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return EuclideanPoint(std::move(c));
}

EuclideanPoint operator*(double k, const EuclideanPoint& a) {
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * a[i];
  return EuclideanPoint(std::move(c));
}

double dot(const EuclideanPoint& a, const EuclideanPoint& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double distance(const EuclideanPoint& a, const EuclideanPoint& b) { return (a - b).norm(); }

double wedge_norm(const EuclideanPoint& a, const EuclideanPoint& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      const double m = a[i] * b[j] - a[j] * b[i];
      s += m * m;
    }
  }
  return std::sqrt(s);
}

AxialDecomposition axial_decompose(const EuclideanPoint& x, const EuclideanPoint& y) {
  require_same_dim(x, y);
  const std::size_t n = x.dim();
  const double r = x.norm();
  if (r == 0.0) {
    return AxialDecomposition{y, EuclideanPoint::zeros(n), y.norm(), 0.0, 0.0};
  }
  const double y_par = dot(x, y) / r;
  std::vector<double> par(n), perp(n);
  for (std::size_t i = 0; i < n; ++i) {
    par[i] = y_par * (x[i] / r);
    perp[i] = y[i] - par[i];
  }
  if (n == 1) perp[0] = 0.0;  // y is always parallel to x on the line
  EuclideanPoint perp_pt(std::move(perp));
  const double perp_len = perp_pt.norm();
  const double angle = y.is_zero() ? 0.0 : std::atan2(perp_len, y_par);
  return AxialDecomposition{EuclideanPoint(std::move(par)), std::move(perp_pt), y_par, perp_len,
                            angle};
}

KernelQuery::KernelQuery(double t, EuclideanPoint x, EuclideanPoint y)
    : t_(t), x_(std::move(x)), y_(std::move(y)), decomp_(axial_decompose(x_, y_)) {
  if (!(t_ > 0.0) || !std::isfinite(t_)) {
    throw std::invalid_argument("KernelQuery: t must be finite and > 0");
  }
  axial_.dim = x_.dim();
  axial_.r = x_.norm();
  axial_.y_par = decomp_.parallel_signed_len;
  axial_.gap = axial_.r - axial_.y_par;
  axial_.y_perp = decomp_.perp_len;
}

KernelQuery::KernelQuery(double t, EuclideanPoint x, EuclideanPoint y, AxialCoords axial)
    : t_(t), x_(std::move(x)), y_(std::move(y)), decomp_(axial_decompose(x_, y_)), axial_(axial) {
  if (!(t_ > 0.0) || !std::isfinite(t_)) {
    throw std::invalid_argument("KernelQuery: t must be finite and > 0");
  }
}

KernelQuery KernelQuery::from_axial(double t, std::size_t dim, double r, double gap,
                                    double y_perp) {
  if (dim == 0) throw std::invalid_argument("KernelQuery: dimension must be >= 1");
  if (r < 0.0 || y_perp < 0.0) {
    throw std::invalid_argument("KernelQuery: |x| and |y'| must be non-negative");
  }
  if (dim == 1 && y_perp != 0.0) {
    throw std::invalid_argument("KernelQuery: y' must vanish in one dimension");
  }
  AxialCoords ax;
  ax.dim = dim;
  ax.r = r;
  ax.gap = gap;
  ax.y_par = r - gap;
  ax.y_perp = y_perp;
  std::vector<double> xc(dim, 0.0), yc(dim, 0.0);
  xc[0] = r;
  yc[0] = ax.y_par;
  if (dim > 1) yc[1] = y_perp;
  if (r == 0.0) {
    // With x = 0 the parallel part is all of y.
    ax.y_par = std::sqrt(ax.y_par * ax.y_par + y_perp * y_perp);
    ax.gap = -ax.y_par;
    ax.y_perp = 0.0;
  }
  return KernelQuery(t, EuclideanPoint(std::move(xc)), EuclideanPoint(std::move(yc)), ax);
}

std::optional<double> KernelQuery::sigma0() const {
  if (axial_.r > 0.0 && axial_.y_par > 0.0 && axial_.gap > 0.0) return axial_.gap / axial_.r;
  return std::nullopt;
}

KernelQuery KernelQuery::with_t(double t) const { return KernelQuery(t, x_, y_, axial_); }

}  // namespace gkl
