#include "gkl/gauss_rules.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace gkl {

namespace {

GaussRule make_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Nodes: eigenvalues of the Jacobi matrix (Golub-Welsch), then a Newton
// polish on the orthonormal recurrence, which also yields the weights.
GaussRule make_hermite(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  std::vector<double> guess(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
  std::sort(guess.begin(), guess.end());

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  // The recurrence values grow like exp(z^2/2) and overflow for large n;
  // `scale` counts the factors of kBig divided out.
  constexpr double kBig = 1e150;
  for (int i = n / 2; i < n; ++i) {
    double z = i == n - 1 - i ? 0.0 : guess[i];
    double pp = 0.0;
    int scale = 0;
    for (int iter = 0; iter < 20; ++iter) {
      double p1 = pim4, p2 = 0.0;
      scale = 0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
        if (std::abs(p1) > kBig) {
          p1 /= kBig;
          p2 /= kBig;
          ++scale;
        }
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    // outermost weights underflow to 0, their value in double anyway
    const double w =
        std::exp(std::log(2.0) - 2.0 * std::log(std::abs(pp)) - 2.0 * scale * std::log(kBig));
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <class Make>
const GaussRule& cached(std::map<int, std::unique_ptr<GaussRule>>& cache, std::mutex& mu,
                        int order, Make make) {
  if (order < 1) throw std::invalid_argument("Gauss rule order must be >= 1");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, std::make_unique<GaussRule>(make(order))).first;
  }
  return *it->second;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  static std::mutex mu;
  return cached(cache, mu, order, make_legendre);
}

const GaussRule& gauss_hermite(int order) {
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  static std::mutex mu;
  return cached(cache, mu, order, make_hermite);
}

}  // namespace gkl
