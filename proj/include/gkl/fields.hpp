#pragma once

// Scalar test fields f: R^n -> R for the Lipschitz-space machinery. Fields
// are immutable after construction and safe to evaluate from many threads.

#include <atomic>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gkl/geometry.hpp"

namespace gkl {

class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual double operator()(std::span<const double> y) const = 0;
  double operator()(const EuclideanPoint& y) const { return (*this)(y.coords()); }

  virtual std::size_t dim() const = 0;
  // Declared bound on sup|f|; +inf for unbounded fields (coordinate).
  virtual double sup_bound() const = 0;
  virtual std::string name() const = 0;
  // One-dimensional fields only: points where f is not smooth. Quadrature
  // splits there instead of relying on spectral convergence.
  virtual std::vector<double> kinks() const { return {}; }
};

using FieldPtr = std::shared_ptr<const ScalarField>;

FieldPtr make_const_field(std::size_t dim, double c);
// f(y) = y_i, i 1-based.
FieldPtr make_coordinate_field(std::size_t dim, std::size_t i);
// f(y) = exp(-|y - center e_1|^2 / width^2)
FieldPtr make_gauss_bump(std::size_t dim, double width = 1.0, double center = 0.0);
// f(y) = sin(k y_1)
FieldPtr make_sin_x1(std::size_t dim, double k = 1.0);
// f(y) = sin(y_1^2 / 2)
FieldPtr make_sin_x1sq(std::size_t dim);
// f(y) = min(|y - p e_1|^alpha, 1)
FieldPtr make_snowflake(std::size_t dim, double p, double alpha);
// lambda f + c
FieldPtr make_affine(FieldPtr f, double lambda, double c);

// Sampled field on a tensor grid with multilinear interpolation, clamped
// (constant extrapolation) outside the grid hull; a warning is printed to
// stderr the first time that happens.
//
// File format, whitespace separated, '#' starts a comment:
//   n N_1 ... N_n
//   N_1 coordinates of axis 1 (strictly increasing)
//   ...
//   N_n coordinates of axis n
//   N_1 * ... * N_n values, last axis fastest
class GridField final : public ScalarField {
 public:
  GridField(std::vector<std::vector<double>> axes, std::vector<double> values);

  static std::shared_ptr<const GridField> load(const std::string& path);
  static std::shared_ptr<const GridField> parse(const std::string& text,
                                                const std::string& source = "<string>");

  double operator()(std::span<const double> y) const override;
  using ScalarField::operator();
  std::size_t dim() const override { return axes_.size(); }
  double sup_bound() const override { return sup_; }
  std::string name() const override { return "grid"; }
  std::vector<double> kinks() const override;

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<double> values_;
  std::vector<std::size_t> strides_;
  double sup_ = 0.0;
  mutable std::atomic<bool> warned_{false};
};

// Builds a field from "name" or "name(a,b,...)": const(c), coordinate(i),
// gauss-bump[(width[,center])], sin-x1[(k)], sin-x1sq, snowflake(p,alpha),
// grid(path). Throws std::invalid_argument on unknown names or bad params.
FieldPtr parse_field(const std::string& spec, std::size_t dim);

}  // namespace gkl
