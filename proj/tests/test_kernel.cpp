#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

#include "gkl/geometry.hpp"
#include "gkl/kernel.hpp"
#include "gkl/reduced_integral.hpp"

using namespace gkl;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Frozen output of tests/oracles/kernel_oracle.py (mpmath, 40 digits,
// tanh-sinh in s). Columns: t, n, |x|, y_par, |y'|, P, dP/dt, radial dP/dx.
struct OracleRow {
  double t, n, r, y_par, rho, p, dt, rad;
};
constexpr OracleRow kOracle[] = {
    {1.0, 1.0, 0.0, 0.0, 0.0, 0.70763110708245108949, -0.30523242930143804269, 0.0},
    {0.01, 1.0, 10.0, 9.99, 0.0, 16.247043848157171465, 523.2551083898832771, -2040.4558801712424208},
    {1.0, 2.0, 5.0, 4.0, 0.5, 0.089290148008229453525, -0.10921149101071636706, -0.005226077957469236633},
    {0.1, 1.0, 100.0, 99.0, 0.0, 0.22059138063279778077, 1.0947666789336255982, -0.27401527877287283032},
    {0.5, 1.0, 20.0, 15.0, 0.0, 0.049063555517871547748, 0.054934566911642735141, -0.010920775535569770878},
    {3.0, 1.0, 2.0, -1.0, 0.0, 0.17824072214502594968, 0.024463341537382954668, -0.0081517843887916569591},
    {0.05, 2.0, 3.0, 3.2, 0.1, 0.22576914780600764363, 4.158478934626001805, 3.5216328053483528571},
    {10.0, 1.0, 1.0, 0.5, 0.0, 0.43941116400951687952, -0.000019845691714313574518, 0.000019614612624353572729},
};

KernelQuery query_of(const OracleRow& o) {
  return KernelQuery::from_axial(o.t, static_cast<std::size_t>(o.n), o.r, o.r - o.y_par, o.rho);
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("axial decomposition examples") {
  auto d = axial_decompose(EuclideanPoint{1.0, 0.0}, EuclideanPoint{2.0, 3.0});
  CHECK(d.parallel == EuclideanPoint{2.0, 0.0});
  CHECK(d.perp == EuclideanPoint{0.0, 3.0});
  CHECK(d.angle == doctest::Approx(std::atan2(3.0, 2.0)).epsilon(1e-15));

  d = axial_decompose(EuclideanPoint{0.0, 0.0}, EuclideanPoint{5.0, 1.0});
  CHECK(d.parallel == EuclideanPoint{5.0, 1.0});
  CHECK(d.perp == EuclideanPoint{0.0, 0.0});
  CHECK(d.angle == 0.0);

  d = axial_decompose(EuclideanPoint{2.0, 0.0}, EuclideanPoint{-1.0, 0.0});
  CHECK(d.parallel == EuclideanPoint{-1.0, 0.0});
  CHECK(d.perp_len == 0.0);
  CHECK(d.parallel_signed_len == -1.0);
}

TEST_CASE("invalid points are rejected") {
  CHECK_THROWS_AS(EuclideanPoint(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(EuclideanPoint({1.0, NAN}), std::invalid_argument);
  CHECK_THROWS_AS(KernelQuery(0.0, EuclideanPoint{0.0}, EuclideanPoint{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(KernelQuery(1.0, EuclideanPoint{0.0}, EuclideanPoint{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("mehler kernel closed form") {
  CHECK(mehler_kernel(0.5, EuclideanPoint{0.0}, EuclideanPoint{0.0}).log_magnitude() ==
        doctest::Approx(std::log(2.0 / std::sqrt(3.0))).epsilon(1e-15));
  // r -> 0: log M -> -|y|^2
  CHECK(mehler_kernel(1e-9, EuclideanPoint{1.0, 2.0}, EuclideanPoint{0.5, -1.0}).log_magnitude() ==
        doctest::Approx(-1.25).epsilon(1e-8));
  // multiprecision re-evaluation
  const Big r("0.9"), x("3"), y("2.7");
  const Big one(1);
  const Big want = -(y - r * x) * (y - r * x) / (one - r * r) - log(one - r * r) / 2;
  const double got = mehler_kernel(0.9, EuclideanPoint{3.0}, EuclideanPoint{2.7}).log_magnitude();
  CHECK(rel_err(got, want.convert_to<double>()) < 1e-12);
}

TEST_CASE("frozen oracle rows: value, time and radial derivative") {
  for (const auto& o : kOracle) {
    CAPTURE(o.t);
    CAPTURE(o.r);
    CAPTURE(o.y_par);
    const KernelQuery q = query_of(o);
    const KernelValues kv = evaluate_kernel(q, {}, kValue | kTimeDeriv | kSpaceDeriv);
    CHECK(rel_err(kv.value.value(), o.p) < 1e-8);
    CHECK(rel_err(kv.dt.value(), o.dt) < 1e-8);
    if (o.rad == 0.0) {
      CHECK(std::abs(kv.radial.value()) < 1e-14);
    } else {
      CHECK(rel_err(kv.radial.value(), o.rad) < 1e-8);
    }
  }
}

TEST_CASE("P_1(0,0) against a brute-force composite rule") {
  // u = log s, composite Simpson with 2e5 panels on [-30, 12], analytic tail
  // beyond s = e^12 (q = 1 there to double precision).
  const double t = 1.0;
  auto g = [t](double u) {
    const double s = std::exp(u);
    const double q = -std::expm1(-2.0 * s);
    return t * std::pow(s, -0.5) * std::exp(-t * t / (4.0 * s)) / std::sqrt(q) / (2.0 * M_PI);
  };
  const int panels = 200000;
  const double lo = -30.0, hi = 12.0, h = (hi - lo) / panels;
  double acc = g(lo) + g(hi);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
  double brute = acc * h / 3.0;
  const double S = std::exp(hi);
  brute += t / (2.0 * M_PI) * (2.0 / std::sqrt(S) - t * t / (6.0 * std::pow(S, 1.5)));
  const double got = poisson_kernel(KernelQuery(1.0, EuclideanPoint{0.0}, EuclideanPoint{0.0})).value();
  CHECK(rel_err(got, brute) < 1e-8);
}

TEST_CASE("odd symmetry: gradient at x = y = 0 vanishes") {
  for (std::size_t n : {1u, 2u, 3u}) {
    const KernelQuery q(1.0, EuclideanPoint::zeros(n), EuclideanPoint::zeros(n));
    for (std::size_t i = 1; i <= n; ++i) CHECK(dx_poisson_kernel(q, i).value() == 0.0);
  }
}

TEST_CASE("kernel integrates to one, time derivative to zero") {
  for (std::size_t n : {1u, 2u}) {
    for (auto [t, r] : {std::pair{0.3, 0.0}, std::pair{1.0, 2.0}, std::pair{5.0, 7.0}}) {
      CAPTURE(n);
      CAPTURE(t);
      CAPTURE(r);
      auto f = [&](double gap, double rho, std::span<double> out) {
        const KernelValues kv = evaluate_kernel(t, axial_from_gap(n, r, gap, rho), {}, kValue | kTimeDeriv);
        out[0] = kv.value.value();
        out[1] = kv.dt.value();
      };
      std::vector<double> rho_breaks{t / 4, t, 4 * t, 1.0, 4.0};
      const YVectorResult res = integrate_over_y(n, f, 2, gap_breakpoints(t, r), rho_breaks, {1e-9, 1e-9});
      CHECK(std::abs(res.value[0] - 1.0) < 1e-6);
      CHECK(std::abs(res.value[1]) < 1e-6 * res.l1[1]);
    }
  }
}

TEST_CASE("derivatives match central differences") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> lt(std::log(0.1), std::log(3.0)), ux(-3.0, 3.0);
  QuadratureSpec tight;
  tight.rel_tol = 1e-13;
  for (int i = 0; i < 20; ++i) {
    const double t = std::exp(lt(g));
    const double x = ux(g), y = x + (i % 2 ? 1.0 : -1.0) * (0.3 + 0.1 * i);
    const KernelQuery q(t, EuclideanPoint{x}, EuclideanPoint{y});
    CAPTURE(t);
    CAPTURE(x);
    CAPTURE(y);
    const double h = 1e-4 * t;
    const double fd_t = (poisson_kernel(q.with_t(t + h), tight).value() -
                         poisson_kernel(q.with_t(t - h), tight).value()) / (2 * h);
    CHECK(rel_err(dt_poisson_kernel(q, tight).value(), fd_t) < 1e-5);
    const double hx = 1e-5 * (1 + std::abs(x));
    const double fd_x = (poisson_kernel(KernelQuery(t, EuclideanPoint{x + hx}, EuclideanPoint{y}), tight).value() -
                         poisson_kernel(KernelQuery(t, EuclideanPoint{x - hx}, EuclideanPoint{y}), tight).value()) /
                        (2 * hx);
    CHECK(std::abs(dx_poisson_kernel(q, 1, tight).value() - fd_x) <
          1e-5 * std::max(std::abs(fd_x), poisson_kernel(q).value()));
  }
}

TEST_CASE("time derivative decays for large t") {
  const EuclideanPoint x{1.0}, y{0.5};
  double prev = INFINITY;
  for (double t : {1.0, 3.0, 10.0, 30.0}) {
    const double d = std::abs(dt_poisson_kernel(KernelQuery(t, x, y)).value());
    CHECK(d < prev);
    CHECK(d < std::exp(-0.9 * t));
    prev = d;
  }
  // past that the exact value sits below the cancellation floor; only the floor is promised
  CHECK(std::abs(dt_poisson_kernel(KernelQuery(100.0, x, y)).value()) < 1e-12);
}

TEST_CASE("far tails are representable in log space") {
  const LogValue v = poisson_kernel(KernelQuery(0.01, EuclideanPoint{30.0}, EuclideanPoint{-30.0}));
  CHECK(v.sign() == 1);
  CHECK(std::isfinite(v.log_magnitude()));
  CHECK(v.log_magnitude() < -700.0);
}

TEST_CASE("breakpoint rule") {
  const auto b0 = quadrature_breakpoints(KernelQuery(1.0, EuclideanPoint{0.0}, EuclideanPoint{0.0}));
  REQUIRE(b0.size() == 2);
  CHECK(b0[0] == doctest::Approx(std::log(2.0)));
  CHECK(b0[1] == 20.0);
  const KernelQuery q(1.0, EuclideanPoint{10.0}, EuclideanPoint{9.0});
  REQUIRE(q.sigma0().has_value());
  CHECK(*q.sigma0() == doctest::Approx(0.1));
  const auto b = quadrature_breakpoints(q);
  auto has = [&](double s) {
    for (double v : b) {
      if (std::abs(v - s) < 1e-12) return true;
    }
    return false;
  };
  CHECK(has(-std::log(1 - 0.075)));
  CHECK(has(-std::log(1 - 0.125)));
  CHECK(has(std::log(2.0)));
  CHECK(has(20.0));
}

TEST_CASE("doubling nodes per panel does not move log P") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> lt(std::log(0.01), std::log(10.0)), ux(-20.0, 20.0), uy(-3.0, 3.0);
  QuadratureSpec a, b;
  b.nodes_per_panel = 2 * a.nodes_per_panel;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = std::exp(lt(g)), x = ux(g);
    const KernelQuery q(t, EuclideanPoint{x}, EuclideanPoint{x + uy(g)});
    worst = std::max(worst, std::abs(poisson_kernel(q, a).log_magnitude() - poisson_kernel(q, b).log_magnitude()));
  }
  CHECK(worst < a.abs_tol_log);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec s;
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.max_panels = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

}  // TEST_SUITE
