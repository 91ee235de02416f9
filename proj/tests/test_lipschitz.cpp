#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>

#include "gkl/calibration.hpp"
#include "gkl/fields.hpp"
#include "gkl/lipschitz.hpp"

using namespace gkl;

namespace {

const HolderExponent kHalf(0.5);

std::vector<PointPair> random_pairs(std::size_t n, std::size_t count, double spread, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u(-6.0, std::log10(spread));
  std::vector<PointPair> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> a(n), b(n);
    const double sa = std::pow(10.0, u(g)), sb = std::pow(10.0, u(g));
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = sa * z(g);
      b[i] = a[i] + sb * z(g);
    }
    out.emplace_back(EuclideanPoint(a), EuclideanPoint(b));
  }
  return out;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("built-in fields by name") {
  CHECK((*parse_field("const(2.5)", 2))(EuclideanPoint{1.0, 3.0}) == 2.5);
  CHECK((*parse_field("coordinate(2)", 2))(EuclideanPoint{1.0, 3.0}) == 3.0);
  CHECK((*parse_field("gauss-bump", 1))(EuclideanPoint{0.0}) == 1.0);
  CHECK((*parse_field("gauss-bump(2,1)", 1))(EuclideanPoint{3.0}) == doctest::Approx(std::exp(-1.0)));
  CHECK((*parse_field("sin-x1(2)", 1))(EuclideanPoint{0.25}) == doctest::Approx(std::sin(0.5)));
  CHECK((*parse_field("sin-x1sq", 1))(EuclideanPoint{2.0}) == doctest::Approx(std::sin(2.0)));
  CHECK((*parse_field("snowflake(0,0.5)", 1))(EuclideanPoint{0.25}) == doctest::Approx(0.5));
  CHECK((*parse_field("snowflake(0,0.5)", 1))(EuclideanPoint{9.0}) == 1.0);
  CHECK_THROWS_AS(parse_field("nosuch", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_field("const(x)", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_field("coordinate(3)", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_field("snowflake(0,1.5)", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_field("gauss-bump(1", 1), std::invalid_argument);
}

TEST_CASE("grid field interpolates and clamps") {
  const auto g = GridField::parse("# a 2x3 grid\n2 2 3\n0 1\n0 1 2\n0 1 2\n10 11 12\n");
  CHECK(g->dim() == 2);
  CHECK((*g)(EuclideanPoint{0.5, 0.5}) == doctest::Approx(5.5));
  CHECK((*g)(EuclideanPoint{1.0, 2.0}) == 12.0);
  CHECK((*g)(EuclideanPoint{5.0, -3.0}) == 10.0);  // clamped to the corner (1, 0)
  CHECK(g->sup_bound() == 12.0);
}

TEST_CASE("grid parse errors carry line numbers") {
  auto message = [](const std::string& text) {
    try {
      GridField::parse(text, "f.grid");
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("1 3\n0 1\n0.5\n1 2 3\n").rfind("f.grid:3:", 0) == 0);  // axis not increasing
  CHECK(message("1 2\n0 1\n1 abc\n").rfind("f.grid:3:", 0) == 0);
  CHECK(message("1 2\n0 1\n1\n").rfind("f.grid:3:", 0) == 0);  // truncated
  CHECK(message("1 2\n0 1\n1 2\n3\n").rfind("f.grid:4:", 0) == 0);
  CHECK(message("0\n").rfind("f.grid:1:", 0) == 0);
  CHECK_THROWS_AS(GridField::load("/nonexistent/file.grid"), std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("lipschitz") {

TEST_CASE("holder exponent range") {
  CHECK_THROWS_AS(HolderExponent(0.0), std::invalid_argument);
  CHECK_THROWS_AS(HolderExponent(1.0), std::invalid_argument);
  CHECK(HolderExponent(0.3).alpha() == 0.3);
}

TEST_CASE("symmetric modulus examples") {
  const EuclideanPoint a{1.0, 2.0};
  CHECK(combined_modulus_sym(a, a, kHalf) == 0.0);
  CHECK(combined_modulus_sym(EuclideanPoint{0.0}, EuclideanPoint{1.0}, kHalf) ==
        doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-15));
  CHECK(combined_modulus_sym(EuclideanPoint{1.0, 0.0}, EuclideanPoint{0.0, 1.0}, kHalf) ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
}

TEST_CASE("asymmetric modulus examples") {
  const EuclideanPoint a{3.0, -1.0};
  CHECK(combined_modulus_asym(a, a, kHalf) == 0.0);
  for (double r : {0.01, 0.5, 2.0, 40.0}) {
    const EuclideanPoint y{0.6 * r, 0.8 * r};
    CHECK(combined_modulus_asym(EuclideanPoint{0.0, 0.0}, y, kHalf) ==
          doctest::Approx(std::min(std::pow(r, 0.5), std::pow(r, 0.25))).epsilon(1e-14));
  }
}

TEST_CASE("the two moduli are comparable") {
  const auto pairs = random_pairs(2, 100000, 1e4, 17);
  const ModulusRatioReport rep = modulus_equivalence_report(pairs, kHalf);
  CHECK(rep.count == pairs.size());
  CHECK(rep.degenerate == 0);
  CHECK(rep.min_ratio > 0.0);
  CHECK(std::isfinite(rep.max_ratio));
  CHECK(rep.max_ratio / rep.min_ratio < 100.0);
  std::size_t total = 0;
  for (auto h : rep.histogram) total += h;
  CHECK(total == rep.count);

  // near the origin both behave like |x - y|^a
  std::vector<PointPair> near;
  for (const auto& p : random_pairs(2, 5000, 1.0, 19)) {
    if (p.first.norm() + p.second.norm() <= 2.0) near.push_back(p);
  }
  const ModulusRatioReport rn = modulus_equivalence_report(near, kHalf);
  CHECK(rn.min_ratio <= 1.0);
  CHECK(rn.max_ratio >= 1.0);

  const auto one = modulus_equivalence_report({pairs[0], pairs[0]}, kHalf);
  CHECK(one.min_ratio == one.max_ratio);

  const ModulusRatioReport r1 = modulus_equivalence_report(random_pairs(1, 20000, 1e4, 23), kHalf);
  CHECK(r1.degenerate == 0);
  CHECK(r1.max_ratio / r1.min_ratio < 100.0);
}

TEST_CASE("modulus constants of fields") {
  const auto pairs = random_pairs(1, 2000, 10.0, 29);
  CHECK(lip_constant_estimate(*make_const_field(1, 3.0), pairs, kHalf) == 0.0);
  // snowflake: |f(x) - f(y)| <= |x - y|^a <= modulus on short-range pairs
  std::vector<PointPair> short_pairs;
  for (const auto& p : pairs) {
    if (distance(p.first, p.second) < 0.5 && p.first.norm() < 2.0) short_pairs.push_back(p);
  }
  REQUIRE(short_pairs.size() > 100);
  CHECK(lip_constant_estimate(*make_snowflake(1, 0.3, 0.5), short_pairs, kHalf) <= 1.0 + 1e-12);
  // sin: oscillation 1 at unit distance against a modulus ~ |x|^{-a/2}
  double prev = 0.0;
  for (double x : {10.0, 100.0, 1000.0}) {
    std::vector<PointPair> ps;
    for (int k = 0; k < 16; ++k) {
      const double a = x + k * 0.4;
      ps.push_back({EuclideanPoint{a}, EuclideanPoint{a + 1.0}});
    }
    const double c = lip_constant_estimate(*make_sin_x1(1), ps, kHalf);
    if (prev > 0.0) CHECK(c / prev == doctest::Approx(std::pow(10.0, 0.25)).epsilon(0.25));
    prev = c;
  }
}

TEST_CASE("semigroup applied to simple fields") {
  const EuclideanPoint x1{0.7}, x2{0.7, -1.2};
  for (double t : {0.05, 1.0, 6.0}) {
    CAPTURE(t);
    CHECK(poisson_apply(*make_const_field(1, 1.0), t, x1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(poisson_apply(*make_const_field(2, 1.0), t, x2) == doctest::Approx(1.0).epsilon(1e-12));
    // T_s y_1 = e^{-s} x_1 and the subordinator's Laplace transform give x_1 e^{-t};
    // cross-check that 1-D outer integral by direct quadrature as well
    boost::math::quadrature::tanh_sinh<double> ts;
    const double outer = ts.integrate(
        [t](double s) {
          if (s <= 0.0) return 0.0;
          return t / (2 * std::sqrt(M_PI)) * std::exp(-1.5 * std::log(s) - t * t / (4 * s) - s);
        },
        0.0, INFINITY);
    CHECK(outer == doctest::Approx(std::exp(-t)).epsilon(1e-9));
    CHECK(poisson_apply(*make_coordinate_field(2, 1), t, x2) == doctest::Approx(0.7 * outer).epsilon(1e-8));
  }
}

TEST_CASE("subordination and kernel-level pipelines agree") {
  const auto f = make_gauss_bump(1);
  for (double t : {0.03, 0.5, 4.0}) {
    for (double x : {-2.0, 0.0, 1.5, 8.0}) {
      CAPTURE(t);
      CAPTURE(x);
      const double a = poisson_apply(*f, t, EuclideanPoint{x});
      const KernelLevelResult b = kernel_level_apply(*f, t, EuclideanPoint{x});
      CHECK(std::abs(a - b.value) <= 1e-5 * std::abs(a) + 1e-12);
    }
  }
}

TEST_CASE("seminorm estimate: trivial, linear, bounded") {
  const std::vector<double> ts{0.01, 0.1, 1.0, 10.0};
  std::vector<EuclideanPoint> xs;
  for (int k = -6; k <= 6; ++k) xs.push_back(EuclideanPoint{5.0 * k});

  const GlipEstimate c = glip_seminorm_estimate(*make_const_field(1, 2.0), kHalf, ts, xs);
  CHECK(c.seminorm == 0.0);
  for (const auto& p : c.profile) CHECK(p.weighted == 0.0);

  const auto f = make_gauss_bump(1);
  const GlipEstimate e = glip_seminorm_estimate(*f, kHalf, ts, xs);
  const GlipEstimate e2 = glip_seminorm_estimate(*make_affine(f, -2.0, 0.0), kHalf, ts, xs);
  CHECK(e.cross_checked);
  CHECK(e2.seminorm == 2.0 * e.seminorm);
  CHECK(e.seminorm > 0.0);
  CHECK(e.seminorm <= calibration::kGaussBumpProfile[0]);
  CHECK(e.worst_dt_agreement <= 1.0);
  CHECK(e.worst_value_agreement <= 1.0);
}

}  // TEST_SUITE
