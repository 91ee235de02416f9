#include "gkl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gkl {

namespace {

void require_positive_c(double c, const std::string& id) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("ExpStarConfig: constant for " + id + " must be finite and > 0");
  }
}

bool rel_equal(double a, double b) {
  return std::abs(a - b) <= kPinTolerance * std::max(std::abs(a), std::abs(b));
}

LogValue from_log_if(bool indicator, double log_value) {
  return indicator ? LogValue::from_log(log_value) : LogValue::zero();
}

BoundEvaluation collect(std::vector<std::pair<std::string, LogValue>> terms,
                        const std::vector<bool>& indicators) {
  BoundEvaluation out;
  std::vector<double> logs;
  std::vector<int> signs;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (indicators[i]) out.active_indicators.insert(terms[i].first);
    logs.push_back(terms[i].second.log_magnitude());
    signs.push_back(terms[i].second.sign());
  }
  out.total = signed_log_sum(logs, signs).value;
  out.terms = std::move(terms);
  return out;
}

}  // namespace

ExpStarConfig::ExpStarConfig(double default_c) : default_c_(default_c) {
  require_positive_c(default_c, "default");
}

const std::vector<std::string>& ExpStarConfig::term_ids() {
  static const std::vector<std::string> ids{"K1", "K2", "K3", "K4.1", "K4.2",
                                            "Z1", "Z2", "Z3", "Z4.1", "Z4.2"};
  return ids;
}

double ExpStarConfig::c(const std::string& id) const {
  auto it = c_values_.find(id);
  return it == c_values_.end() ? default_c_ : it->second;
}

void ExpStarConfig::set(const std::string& id, double c) {
  const auto& ids = term_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw std::invalid_argument("ExpStarConfig: unknown term id '" + id + "'");
  }
  require_positive_c(c, id);
  c_values_[id] = c;
}

void ExpStarConfig::set_default(double c) {
  require_positive_c(c, "default");
  default_c_ = c;
}

LogValue BoundEvaluation::term(const std::string& id) const {
  for (const auto& [name, v] : terms) {
    if (name == id) return v;
  }
  throw std::invalid_argument("BoundEvaluation: no term '" + id + "'");
}

BoundEvaluation k_bound(double t, const AxialCoords& ax, const ExpStarConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("k_bound: t must be > 0");
  const double n = static_cast<double>(ax.dim);
  const double r = ax.r;
  const double rho2 = ax.y_perp * ax.y_perp;
  const double log_t = std::log(t);

  const double k1 = log_t - 0.5 * (n + 1.0) * std::log(t * t + ax.dist_squared()) -
                    cfg.c("K1") * t * (1.0 + r);

  const bool chi2 = r > 1.0 && ax.x_dot_y_positive() && ax.y_par >= 0.5 * r && ax.gap > 0.0;
  double k2 = LogValue::neg_inf;
  if (chi2) {
    k2 = log_t - std::log(r) - 0.5 * (n + 2.0) * std::log(t * t + ax.gap / r + rho2) -
         cfg.c("K2") * (t * t + rho2) * r / ax.gap;
  }

  const double k3 = std::log(std::min(1.0, t)) - cfg.c("K3") * ax.y_norm_squared();

  const bool chi4 = ax.x_dot_y_positive() && ax.y_par > 1.0 && ax.y_par < 0.5 * r;
  double k4 = LogValue::neg_inf;
  if (chi4) {
    const double L = std::log(r) - std::log(ax.y_par);
    k4 = log_t - std::log(ax.y_par) - 1.5 * std::log(L) - cfg.c("K4.1") * t * t / L -
         cfg.c("K4.2") * rho2;
  }

  return collect({{"K1", LogValue::from_log(k1)},
                  {"K2", from_log_if(chi2, k2)},
                  {"K3", LogValue::from_log(k3)},
                  {"K4", from_log_if(chi4, k4)}},
                 {true, chi2, true, chi4});
}

BoundEvaluation k_bound(const KernelQuery& q, const ExpStarConfig& cfg) {
  return k_bound(q.t(), q.axial(), cfg);
}

BoundEvaluation z_bound(double t, const AxialCoords& ax, const ExpStarConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("z_bound: t must be > 0");
  const double n = static_cast<double>(ax.dim);
  const double x1 = ax.r;
  const double y1 = ax.y_par;
  const double rho2 = ax.y_perp * ax.y_perp;
  const double log_t = std::log(t);

  const double z1 = log_t - 0.5 * (n + 2.0) * std::log(t * t + ax.dist_squared()) -
                    cfg.c("Z1") * t * (1.0 + x1);

  const bool chi2 = x1 > 1.0 && y1 >= 0.5 * x1 && ax.gap > 0.0;
  double z2 = LogValue::neg_inf;
  if (chi2) {
    z2 = log_t - 2.0 * std::log(x1) - 0.5 * (n + 4.0) * std::log(t * t + ax.gap / x1 + rho2) -
         cfg.c("Z2") * (t * t + rho2) * x1 / ax.gap;
  }

  const double z3 = std::log(std::min(t, 1.0 / (t * t))) - std::log1p(x1) -
                    cfg.c("Z3") * ax.y_norm_squared();

  const bool chi4 = y1 > 1.0 && y1 < 0.5 * x1;
  double z4 = LogValue::neg_inf;
  if (chi4) {
    const double L = std::log(x1) - std::log(y1);
    z4 = log_t - std::log(x1) - std::log(y1) - 2.5 * std::log(L) - cfg.c("Z4.1") * t * t / L -
         cfg.c("Z4.2") * rho2;
  }

  return collect({{"Z1", LogValue::from_log(z1)},
                  {"Z2", from_log_if(chi2, z2)},
                  {"Z3", LogValue::from_log(z3)},
                  {"Z4", from_log_if(chi4, z4)}},
                 {true, chi2, true, chi4});
}

BoundEvaluation z_bound(const KernelQuery& q, const ExpStarConfig& cfg) {
  return z_bound(q.t(), q.axial(), cfg);
}

double k2_tilde_1d(double t, double x, double y) {
  if (!(t > 0.0)) throw std::invalid_argument("k2_tilde_1d: t must be > 0");
  if (x == 0.0) throw std::invalid_argument("k2_tilde_1d: x must be nonzero");
  const double scale = t * t * std::abs(x);
  return std::pow(1.0 + std::abs(x - y) / scale, -1.5) / scale;
}

SharpSet parse_sharp_set(const std::string& name) {
  if (name == "E1") return SharpSet::E1;
  if (name == "E2") return SharpSet::E2;
  if (name == "E3") return SharpSet::E3;
  if (name == "E4") return SharpSet::E4;
  throw std::invalid_argument("unknown sharpness set '" + name + "' (expected E1..E4)");
}

std::string to_string(SharpSet s) {
  switch (s) {
    case SharpSet::E1: return "E1";
    case SharpSet::E2: return "E2";
    case SharpSet::E3: return "E3";
    case SharpSet::E4: return "E4";
  }
  return "?";
}

bool in_sharpness_set(double t, const AxialCoords& ax, SharpSet which) {
  const double r = ax.r;
  const double gap = ax.gap;
  switch (which) {
    case SharpSet::E1:
      return r > 1.0 && ax.x_dot_y_positive() && t * t * r < gap && gap < 1.0 / (4.0 * r) &&
             ax.y_perp < gap;
    case SharpSet::E2:
      return r > 1.0 && ax.x_dot_y_positive() && t * r > 1.0 && t * t * r < gap &&
             gap < r / 4.0 && ax.y_perp < std::sqrt(gap / r);
    case SharpSet::E3:
      return t > 1.0 && r < 1.0 && ax.y_norm_squared() < 1.0;
    case SharpSet::E4: {
      if (!(r > 0.0) || !(ax.y_par > 0.0)) return false;
      const double log_r = std::log(r);
      const double log_y = std::log(ax.y_par);
      // |x| > e^16 compared in log space; the pin t = sqrt(log|x|)/2 and the
      // lower threshold share the same relative tolerance.
      const bool large = log_r > 16.0 || rel_equal(log_r, 16.0);
      return large && rel_equal(t, 0.5 * std::sqrt(log_r)) &&
             (log_y >= 2.0 * log_r / 3.0 || rel_equal(log_y, 2.0 * log_r / 3.0)) &&
             (log_y <= 0.75 * log_r || rel_equal(log_y, 0.75 * log_r)) && ax.y_perp < 1.0;
    }
  }
  return false;
}

bool in_sharpness_set(const KernelQuery& q, SharpSet which) {
  return in_sharpness_set(q.t(), q.axial(), which);
}

bool in_epsilon_set(double t, const AxialCoords& ax, SharpSet which, double c_eps) {
  if (!(c_eps > 0.0)) throw std::invalid_argument("in_epsilon_set: C_eps must be > 0");
  if (!in_sharpness_set(t, ax, which)) return false;
  const double r = ax.r;
  switch (which) {
    case SharpSet::E1:
      return r > c_eps && rel_equal(t, 1.0 / (r * r)) && 1.0 / (r * r) < ax.gap &&
             ax.gap < 2.0 / (r * r);
    case SharpSet::E2:
      return r > c_eps && rel_equal(t, 1.0 / std::sqrt(r)) && 1.0 < ax.gap && ax.gap < 2.0;
    case SharpSet::E3:
      return t > c_eps;
    case SharpSet::E4:
      return r > c_eps;
  }
  return false;
}

bool in_epsilon_set(const KernelQuery& q, SharpSet which, double c_eps) {
  return in_epsilon_set(q.t(), q.axial(), which, c_eps);
}

}  // namespace gkl
