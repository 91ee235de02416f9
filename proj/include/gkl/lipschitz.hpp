#pragma once

// Gaussian Lipschitz spaces: the two-regime moduli, their comparison, and
// the semigroup seminorm sup_t t^{1-alpha} |d/dt P_t f| computed two ways.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gkl/fields.hpp"
#include "gkl/geometry.hpp"
#include "gkl/quadrature.hpp"
#include "gkl/reduced_integral.hpp"

namespace gkl {

class HolderExponent {
 public:
  explicit HolderExponent(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

// min{|x-y|^a, (|x-y|/(1+|x|+|y|))^{a/2} + ((|x|+|y|) sin theta)^a}
double combined_modulus_sym(const EuclideanPoint& x, const EuclideanPoint& y, HolderExponent a);
// min{|x-y|^a, (|x-y_x|/(1+|x|))^{a/2} + |y'_x|^a}
double combined_modulus_asym(const EuclideanPoint& x, const EuclideanPoint& y, HolderExponent a);

struct ModulusSample {
  EuclideanPoint x, y;
  double sym_value = 0.0;
  double asym_value = 0.0;
  double f_diff = 0.0;  // f(x) - f(y), 0 without a field
};

ModulusSample make_modulus_sample(const EuclideanPoint& x, const EuclideanPoint& y,
                                  HolderExponent a, const ScalarField* f = nullptr);

using PointPair = std::pair<EuclideanPoint, EuclideanPoint>;

struct ModulusRatioReport {
  std::size_t count = 0;
  double min_ratio = 0.0;  // of asym / sym
  double max_ratio = 0.0;
  // Equal-width bins in log10(ratio) over [min, max].
  std::vector<double> bin_edges;
  std::vector<std::size_t> histogram;
  std::size_t degenerate = 0;  // pairs with a zero or infinite ratio; any is a bug
};

ModulusRatioReport modulus_equivalence_report(const std::vector<PointPair>& samples,
                                              HolderExponent a, std::size_t bins = 20);

// max |f(x) - f(y)| / combined_modulus_sym(x, y)
double lip_constant_estimate(const ScalarField& f, const std::vector<PointPair>& samples,
                             HolderExponent a);

struct ApplyOptions {
  QuadratureSpec outer;  // s-integral
  int hermite_order = 0;        // 0: 64 for n <= 2, 32 for n = 3
  int max_hermite_order = 0;    // 0: 1024 / 256 / 64 for n = 1 / 2 / 3
  double hermite_rel_change = 1e-8;
};

struct ApplyResult {
  double value = 0.0;
  double abs = 0.0;  // integral of |kernel * T_s f| over s; scale of the error
  int hermite_order = 0;
  int panels = 0;
};

// P_t f(x) by subordination of the heat semigroup, T_s f by a Gauss-Hermite
// tensor rule (n <= 3).
double poisson_apply(const ScalarField& f, double t, const EuclideanPoint& x,
                     const QuadratureSpec& spec = {});
ApplyResult poisson_apply_detailed(const ScalarField& f, double t, const EuclideanPoint& x,
                                   const ApplyOptions& opt = {});

// Central difference (P_{t+h} f - P_{t-h} f) / 2h with h = 1e-3 t.
ApplyResult dt_poisson_apply_fd(const ScalarField& f, double t, const EuclideanPoint& x,
                                const ApplyOptions& opt = {});

struct KernelLevelOptions {
  QuadratureSpec kernel;  // per-node kernel quadrature
  YIntegralOptions y{1e-8, 1e-8};
};

// Integrals of the kernel against f at one (t, x), n <= 2. Derivatives use
// the zero-mean identities: the integrands carry f(y) - f(x).
struct KernelLevelResult {
  double value = 0.0;             // int P_t(x,y) f(y) dy
  double dt = 0.0;                // int d_t P_t(x,y) (f(y) - f(x)) dy
  std::vector<double> grad;       // int d_{x_i} P_t(x,y) (f(y) - f(x)) dy
  double value_l1 = 0.0, dt_l1 = 0.0;  // integrals of the absolute integrands
  std::vector<double> grad_l1;
  long evaluations = 0;
};

KernelLevelResult kernel_level_apply(const ScalarField& f, double t, const EuclideanPoint& x,
                                     const KernelLevelOptions& opt = {});

class PipelineDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlipOptions {
  ApplyOptions apply;
  KernelLevelOptions kernel;
  double dt_tolerance = 1e-3;     // kernel-level vs finite-difference d_t P_t f
  double value_tolerance = 1e-5;  // kernel-level vs subordination P_t f
};

struct GlipProfilePoint {
  double t = 0.0;
  double sup_dt = 0.0;        // max over x of |d_t P_t f(x)|
  double weighted = 0.0;      // t^{1-alpha} sup_dt
  std::size_t argmax = 0;     // index into x_samples
  // x-derivative profiles (kernel-level only):
  double grad_weighted = 0.0;    // t^{1-alpha} max_{x,i} |d_{x_i} P_t f(x)|
  double radial_weighted = 0.0;  // t^{2-alpha} max (1 + x_1)|d_{x_1} P_t f(x)|, x = (x_1, 0..), x_1 > 0
};

struct GlipEstimate {
  double seminorm = 0.0;  // max over the grid of t^{1-alpha} sup_x |d_t P_t f|
  std::vector<GlipProfilePoint> profile;
  bool cross_checked = false;        // kernel-level pipeline was available (n <= 2)
  double worst_dt_agreement = 0.0;   // max |a - b| / allowed, <= 1 when accepted
  double worst_value_agreement = 0.0;
};

// Throws PipelineDisagreement when the two pipelines differ beyond tolerance.
GlipEstimate glip_seminorm_estimate(const ScalarField& f, HolderExponent a,
                                    const std::vector<double>& t_grid,
                                    const std::vector<EuclideanPoint>& x_samples,
                                    const GlipOptions& opt = {});
GlipEstimate glip_seminorm_estimate(const ScalarField& f, HolderExponent a,
                                    const std::vector<double>& t_grid,
                                    const std::vector<EuclideanPoint>& x_samples,
                                    const QuadratureSpec& spec);

}  // namespace gkl
