#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace gkl {

// A point of R^n, n >= 1, with finite coordinates.
class EuclideanPoint {
 public:
  explicit EuclideanPoint(std::vector<double> coords);
  EuclideanPoint(std::initializer_list<double> coords);

  static EuclideanPoint zeros(std::size_t dim);
  // (first, 0, ..., 0)
  static EuclideanPoint on_axis(std::size_t dim, double first);

  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  double norm() const;
  double norm_squared() const;
  bool is_zero() const;

  friend EuclideanPoint operator+(const EuclideanPoint& a, const EuclideanPoint& b);
  friend EuclideanPoint operator-(const EuclideanPoint& a, const EuclideanPoint& b);
  friend EuclideanPoint operator*(double k, const EuclideanPoint& a);
  friend bool operator==(const EuclideanPoint&, const EuclideanPoint&) = default;

 private:
  std::vector<double> coords_;
};

double dot(const EuclideanPoint& a, const EuclideanPoint& b);
double distance(const EuclideanPoint& a, const EuclideanPoint& b);

// |a||b| sin(angle between a and b), computed from the 2x2 minors so that the
// result is bit-identical under swapping a and b.
double wedge_norm(const EuclideanPoint& a, const EuclideanPoint& b);

// y = parallel + perp with parallel along x. For x = 0 the whole of y counts
// as parallel and the angle is 0.
struct AxialDecomposition {
  EuclideanPoint parallel;
  EuclideanPoint perp;
  double parallel_signed_len = 0.0;
  double perp_len = 0.0;
  double angle = 0.0;
};

AxialDecomposition axial_decompose(const EuclideanPoint& x, const EuclideanPoint& y);

// Rotation-invariant description of a (t, x, y) triple: |x|, the signed
// component of y along x, the gap |x| - y_par, and |y'|. The gap is stored
// separately so that callers who know it exactly (sweeps parametrised by the
// distance to x) do not lose it to cancellation in |x| - y_par.
struct AxialCoords {
  std::size_t dim = 1;
  double r = 0.0;       // |x|
  double y_par = 0.0;   // signed length of y_x
  double gap = 0.0;     // |x| - y_par
  double y_perp = 0.0;  // |y'_x|

  double dist_squared() const { return gap * gap + y_perp * y_perp; }  // |x - y|^2
  double y_norm_squared() const { return y_par * y_par + y_perp * y_perp; }
  bool x_dot_y_positive() const { return r > 0.0 && y_par > 0.0; }
};

class KernelQuery {
 public:
  KernelQuery(double t, EuclideanPoint x, EuclideanPoint y);

  // Canonical rotated frame x = (r, 0, ..., 0), y = (r - gap, y_perp, 0, ...).
  static KernelQuery from_axial(double t, std::size_t dim, double r, double gap, double y_perp);

  double t() const { return t_; }
  const EuclideanPoint& x() const { return x_; }
  const EuclideanPoint& y() const { return y_; }
  const AxialDecomposition& decomp() const { return decomp_; }
  const AxialCoords& axial() const { return axial_; }
  std::size_t dim() const { return x_.dim(); }

  // (x1 - y1) / x1 in the rotated frame, defined iff 0 < y_par < |x|.
  std::optional<double> sigma0() const;

  KernelQuery with_t(double t) const;

 private:
  KernelQuery(double t, EuclideanPoint x, EuclideanPoint y, AxialCoords axial);

  double t_;
  EuclideanPoint x_;
  EuclideanPoint y_;
  AxialDecomposition decomp_;
  AxialCoords axial_;
};

}  // namespace gkl
