#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gkl/geometry.hpp"
#include "gkl/log_value.hpp"

namespace gkl {

// Decay constants c in exp(-c X), one per exponential factor. Identifiers:
// K1, K2, K3, K4.1 (t^2/log), K4.2 (|y'|^2), and Z1, Z2, Z3, Z4.1, Z4.2.
class ExpStarConfig {
 public:
  ExpStarConfig() : ExpStarConfig(0.01) {}
  explicit ExpStarConfig(double default_c);

  static const std::vector<std::string>& term_ids();

  double c(const std::string& id) const;
  void set(const std::string& id, double c);
  double default_c() const { return default_c_; }
  void set_default(double c);
  const std::map<std::string, double>& overrides() const { return c_values_; }

 private:
  double default_c_;
  std::map<std::string, double> c_values_;
};

struct BoundEvaluation {
  std::vector<std::pair<std::string, LogValue>> terms;  // K1..K4 or Z1..Z4, in order
  LogValue total;
  std::set<std::string> active_indicators;  // terms whose indicator is true

  LogValue term(const std::string& id) const;
};

// Upper-bound kernels for P_t, t dP/dt and t dP/dx_i.
BoundEvaluation k_bound(const KernelQuery& q, const ExpStarConfig& cfg = ExpStarConfig{});
BoundEvaluation k_bound(double t, const AxialCoords& ax, const ExpStarConfig& cfg);

// Upper-bound kernels for the radial derivative d/dx_1 P_t (x on the first axis).
BoundEvaluation z_bound(const KernelQuery& q, const ExpStarConfig& cfg = ExpStarConfig{});
BoundEvaluation z_bound(double t, const AxialCoords& ax, const ExpStarConfig& cfg);

// (t^2|x|)^{-1} (1 + |x - y| / (t^2|x|))^{-3/2}, the one-dimensional majorant of K2.
double k2_tilde_1d(double t, double x, double y);

enum class SharpSet { E1, E2, E3, E4 };

SharpSet parse_sharp_set(const std::string& name);
std::string to_string(SharpSet s);

// Relative tolerance for the equality constraints t = f(|x|) in the sets.
inline constexpr double kPinTolerance = 1e-12;

bool in_sharpness_set(const KernelQuery& q, SharpSet which);
bool in_sharpness_set(double t, const AxialCoords& ax, SharpSet which);
bool in_epsilon_set(const KernelQuery& q, SharpSet which, double c_eps);
bool in_epsilon_set(double t, const AxialCoords& ax, SharpSet which, double c_eps);

}  // namespace gkl
