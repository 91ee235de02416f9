#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

#include "gkl/bounds.hpp"
#include "gkl/calibration.hpp"
#include "gkl/kernel.hpp"
#include "gkl/verify.hpp"

using namespace gkl;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// The displayed term formulas, 1-D, y on the same side as x, in 50 digits.
struct BigTerms {
  Big k1, k2, k3, k4, z1, z2, z3, z4;
};

BigTerms big_terms(const char* ts, const char* xs, const char* ys, const char* cs) {
  const Big t(ts), x(xs), y(ys), c(cs), one(1), n(1);
  const Big d2 = (x - y) * (x - y);
  const Big gap = x - y;
  BigTerms b;
  b.k1 = t * pow(t * t + d2, -(n + 1) / 2) * exp(-c * t * (one + x));
  b.k2 = (x > 1 && y >= x / 2 && gap > 0) ? t / x * pow(t * t + gap / x, -(n + 2) / 2) * exp(-c * t * t * x / gap)
                                            : Big(0);
  b.k3 = (t < one ? t : one) * exp(-c * y * y);
  const Big L = log(x / y);
  b.k4 = (y > 1 && y < x / 2) ? t / y * pow(L, Big(-1.5)) * exp(-c * t * t / L) : Big(0);
  b.z1 = t * pow(t * t + d2, -(n + 2) / 2) * exp(-c * t * (one + x));
  b.z2 = (x > 1 && y >= x / 2 && gap > 0) ? t / (x * x) * pow(t * t + gap / x, -(n + 4) / 2) * exp(-c * t * t * x / gap)
                                            : Big(0);
  const Big m = t < one / (t * t) ? t : one / (t * t);
  b.z3 = m / (one + x) * exp(-c * y * y);
  b.z4 = (y > 1 && y < x / 2) ? t / (x * y) * pow(L, Big(-2.5)) * exp(-c * t * t / L) : Big(0);
  return b;
}

void check_term(const BoundEvaluation& e, const std::string& id, const Big& want) {
  CAPTURE(id);
  const LogValue got = e.term(id);
  if (want == 0) {
    CHECK(got.is_zero());
  } else {
    CHECK(rel_err(got.value(), want.convert_to<double>()) < 1e-12);
  }
}

KernelQuery q1(double t, double x, double y) { return KernelQuery(t, EuclideanPoint{x}, EuclideanPoint{y}); }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("K terms at the origin") {
  const BoundEvaluation k = k_bound(q1(1.0, 0.0, 0.0));
  CHECK(k.term("K1").value() == doctest::Approx(std::exp(-0.01)).epsilon(1e-15));
  CHECK(k.term("K2").is_zero());
  CHECK(k.term("K3").value() == 1.0);
  CHECK(k.term("K4").is_zero());
  CHECK(k.active_indicators == std::set<std::string>{"K1", "K3"});
}

TEST_CASE("K2 vanishes whenever |x| <= 1") {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(-5.0, 5.0), lt(-7.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const EuclideanPoint x{u(g) / std::sqrt(2.0), u(g) / std::sqrt(2.0)};
    const EuclideanPoint y{w(g), w(g)};
    CHECK(k_bound(KernelQuery(std::exp(lt(g)), x, y)).term("K2").sign() == 0);
  }
}

TEST_CASE("term formulas against 50-digit evaluation") {
  SUBCASE("K family, x = 10, y = 9, t = 0.1") {
    const BigTerms b = big_terms("0.1", "10", "9", "0.01");
    const BoundEvaluation k = k_bound(q1(0.1, 10.0, 9.0));
    check_term(k, "K1", b.k1);
    check_term(k, "K2", b.k2);
    check_term(k, "K3", b.k3);
    check_term(k, "K4", b.k4);
  }
  SUBCASE("K family with the far-field term, x = 100, y = 10, t = 1") {
    const BigTerms b = big_terms("1", "100", "10", "0.01");
    const BoundEvaluation k = k_bound(q1(1.0, 100.0, 10.0));
    check_term(k, "K1", b.k1);
    check_term(k, "K2", b.k2);
    check_term(k, "K3", b.k3);
    check_term(k, "K4", b.k4);
  }
  SUBCASE("Z family, x = 20, y = 15, t = 0.5") {
    const BigTerms b = big_terms("0.5", "20", "15", "0.01");
    const BoundEvaluation z = z_bound(q1(0.5, 20.0, 15.0));
    check_term(z, "Z1", b.z1);
    check_term(z, "Z2", b.z2);
    check_term(z, "Z3", b.z3);
    check_term(z, "Z4", b.z4);
  }
  SUBCASE("Z family with the far-field term, x = 100, y = 10, t = 2") {
    const BigTerms b = big_terms("2", "100", "10", "0.01");
    const BoundEvaluation z = z_bound(q1(2.0, 100.0, 10.0));
    check_term(z, "Z1", b.z1);
    check_term(z, "Z2", b.z2);
    check_term(z, "Z3", b.z3);
    check_term(z, "Z4", b.z4);
  }
}

TEST_CASE("Z terms at the origin and on the diagonal") {
  const BoundEvaluation z = z_bound(q1(2.0, 0.0, 0.0));
  CHECK(z.term("Z3").value() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(z.term("Z2").is_zero());
  CHECK(z.term("Z4").is_zero());
  CHECK(z_bound(q1(0.5, 3.0, 3.0)).term("Z2").is_zero());
  CHECK_FALSE(z_bound(q1(0.5, 3.0, 3.0)).active_indicators.count("Z2"));
}

TEST_CASE("one-dimensional majorant") {
  CHECK(k2_tilde_1d(0.5, 3.0, 3.0) == doctest::Approx(1.0 / (0.25 * 3.0)).epsilon(1e-15));
  CHECK(k2_tilde_1d(0.1, 4.0, 3.9) == doctest::Approx(25.0 * std::pow(3.5, -1.5)).epsilon(1e-13));
  CHECK(k2_tilde_1d(0.1, 4.0, 3.9) == doctest::Approx(3.8180).epsilon(1e-4));
  CHECK_THROWS_AS(k2_tilde_1d(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("K2 is dominated by its 1-D majorant with a stable constant") {
  auto worst = [](int per_x) {
    double m = 0.0;
    for (double x : {1.5, 3.0, 10.0, 30.0, 100.0}) {
      for (double t : {0.01, 0.1, 1.0}) {
        for (int k = 0; k < per_x; ++k) {
          const double y = x / 2 + (x / 2) * k / per_x;
          const double k2 = k_bound(q1(t, x, y)).term("K2").value();
          m = std::max(m, k2 / k2_tilde_1d(t, x, y));
        }
      }
    }
    return m;
  };
  const double c1 = worst(50), c4 = worst(200);
  CHECK(std::isfinite(c1));
  CHECK(c4 / c1 <= 1.1);
}

TEST_CASE("shrinking c never lowers a term") {
  const KernelQuery q = q1(0.3, 40.0, 12.0);
  const ExpStarConfig big(0.1), small(0.001);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(k_bound(q, small).terms[i].second.log_magnitude() >= k_bound(q, big).terms[i].second.log_magnitude());
  }
}

TEST_CASE("exp* configuration") {
  ExpStarConfig c;
  CHECK(c.c("K4.1") == 0.01);
  c.set("K4.1", 0.2);
  CHECK(c.c("K4.1") == 0.2);
  CHECK(c.c("K1") == 0.01);
  CHECK_THROWS_AS(c.set("K9", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(c.set("K1", -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExpStarConfig(0.0), std::invalid_argument);
}

TEST_CASE("set membership examples") {
  CHECK(in_sharpness_set(q1(0.01, 10.0, 9.99), SharpSet::E1));
  CHECK(in_sharpness_set(q1(2.0, std::exp(16.0), std::exp(11.0)), SharpSet::E4));
  CHECK(in_sharpness_set(q1(5.0, 0.5, 0.5), SharpSet::E3));
  CHECK_FALSE(in_sharpness_set(q1(0.5, 0.5, 0.5), SharpSet::E3));
  CHECK(in_epsilon_set(q1(20.0, 0.5, 0.5), SharpSet::E3, 10.0));
  CHECK_FALSE(in_epsilon_set(q1(5.0, 0.5, 0.5), SharpSet::E3, 10.0));
  CHECK(in_epsilon_set(q1(1.0 / std::sqrt(200.0), 200.0, 198.5), SharpSet::E2, 100.0));
  CHECK(parse_sharp_set("E2") == SharpSet::E2);
  CHECK_THROWS_AS(parse_sharp_set("E5"), std::invalid_argument);
}

TEST_CASE("epsilon-set samples lie in the sets") {
  const SharpSet sets[] = {SharpSet::E1, SharpSet::E2, SharpSet::E3, SharpSet::E4};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t n : {1u, 2u}) {
      const auto s = epsilon_set_samples(sets[i], calibration::kDominationC[i], 50, n, 5);
      REQUIRE(s.size() == 50);
      for (const auto& p : s) {
        CHECK(in_epsilon_set(p.t, p.ax, sets[i], calibration::kDominationC[i]));
        CHECK(in_sharpness_set(p.t, p.ax, sets[i]));
      }
    }
  }
}

TEST_CASE("far-field term vanishes on the second epsilon-set") {
  for (const auto& p : epsilon_set_samples(SharpSet::E2, 1024.0, 100, 1, 9)) {
    CHECK(k_bound(p.t, p.ax, ExpStarConfig{}).term("K4").is_zero());
  }
}

TEST_CASE("point of the first set: kernel comparable to K1") {
  const KernelQuery q = q1(0.01, 10.0, 9.99);
  const double ratio = poisson_kernel(q).value() / k_bound(q).term("K1").value();
  CHECK(ratio > 0.01);
  CHECK(ratio < 100.0);
}

}  // TEST_SUITE
