#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "friablelab/dickman.hpp"
#include "friablelab/smooth.hpp"

using namespace friablelab;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

// rho on [0, 3]: closed form up to 2, then rho(u) = rho(2) - int_2^u (1 - log(t-1)) / t dt.
double rho_ref(double u) {
  if (u < 0) return 0;
  if (u <= 1) return 1;
  if (u <= 2) return 1 - std::log(u);
  return 1 - std::log(2.0) - simpson([](double t) { return (1 - std::log(t - 1)) / t; }, 2, u);
}

// x [ sum_{n<=x} rho(u - log n/log y)/n - int_1^x rho(u - log t/log y) floor(t)/t^2 dt ]
double lambda_ref(double x, double y) {
  const double lx = std::log(x), ly = std::log(y), u = lx / ly;
  const auto arg = [&](double t) { return std::max(0.0, u - std::log(t) / ly); };
  double s = 0, integral = 0;
  const double kink = x / y;
  for (int n = 1; n <= static_cast<int>(x); ++n) {
    s += rho_ref(arg(n)) / n;
    const double b = std::min<double>(n + 1, x);
    const auto f = [&](double t) { return rho_ref(arg(t)) * n / (t * t); };
    if (kink > n && kink < b) {
      integral += simpson(f, n, kink, 200) + simpson(f, kink, b, 200);
    } else if (b > n) {
      integral += simpson(f, n, b, 200);
    }
  }
  return x * (s - integral);
}

}  // namespace

TEST_CASE("rho values") {
  const auto tab = build_rho_table();
  CHECK(tab(0.5) == 1.0);
  CHECK(tab(1.0) == 1.0);
  CHECK(tab(-1.0) == 0.0);
  CHECK(rho(2.0, tab) == doctest::Approx(1 - std::log(2.0)).epsilon(1e-12));
  CHECK(tab(1.5) == doctest::Approx(1 - std::log(1.5)).epsilon(1e-12));
  for (double u = 1.01; u < 2; u += 0.0537) CHECK(std::fabs(tab(u) - (1 - std::log(u))) < 1e-10);
  for (double u : {2.2, 2.5, 2.9, 3.0}) CHECK(std::fabs(tab(u) - rho_ref(u)) < 1e-10);
  CHECK(tab(3.0) == doctest::Approx(0.0486083882911).epsilon(1e-9));
  CHECK_THROWS_AS(tab(20.5), RangeError);
}

TEST_CASE("rho table accuracy and shape") {
  const auto tab = build_rho_table(40, 1.0 / 256, 3);
  CHECK(tab.max_integral_residual() <= 1e-9);
  const auto fine = build_rho_table(40, 1.0 / 512, 5);
  for (double u = 1; u <= 40; u += 0.37) {
    const double a = tab(u), b = fine(u);
    REQUIRE(a > 0);
    REQUIRE(std::fabs(a - b) <= 1e-7 * b);
  }
  double prev = 1.0;
  for (double u = 1; u <= 40; u += 1.0 / 64) {
    const double v = tab(u);
    REQUIRE(v <= prev);
    prev = v;
  }
  // classical values
  CHECK(tab(4.0) == doctest::Approx(4.910925819e-3).epsilon(1e-8));
  CHECK(tab(10.0) == doctest::Approx(2.770171838e-11).epsilon(1e-7));
  CHECK_THROWS_AS(build_rho_table(20, 1.0 / 16), AccuracyError);
  CHECK_THROWS_AS(build_rho_table(20, 1.0 / 100.5), DomainError);
  CHECK_THROWS_AS(build_rho_table(500), DomainError);
}

TEST_CASE("h_growth and l_eps") {
  const double e = std::numbers::e;
  CHECK(h_growth(e - 1) == doctest::Approx(std::exp(e - 1)));
  CHECK(h_growth(e * e - 1) == doctest::Approx(std::exp((e * e - 1) / 4)));
  CHECK(std::isinf(h_growth(0)));
  CHECK_THROWS_AS(h_growth(-1), DomainError);
  CHECK(l_eps(e, 0.1) == doctest::Approx(e));
  CHECK(l_eps(e, 0.4) == doctest::Approx(e));
  CHECK(l_eps(std::exp(32.0), 0.1) == doctest::Approx(std::exp(std::sqrt(32.0))));
  CHECK_THROWS_AS(l_eps(10, 0.6), DomainError);
  CHECK_THROWS_AS(l_eps(1, 0.1), DomainError);
}

TEST_CASE("Lambda against a direct Simpson evaluation") {
  const auto tab = build_rho_table(5);
  for (auto [x, y] : {std::pair{40.5, 7.0}, {200.25, 11.0}, {300.0, 17.0}, {120.0, 5.0}}) {
    CHECK(lambda_smooth(x, y, tab) == doctest::Approx(lambda_ref(x, y)).epsilon(1e-8));
  }
}

TEST_CASE("Lambda properties") {
  const auto tab = build_rho_table(5);
  const FactorTable ft(100'000);
  // the n = 1 jump alone gives x rho(u)
  const double x = 5e4, y = 100, u = std::log(x) / std::log(y);
  const double jump_only = rho_stieltjes(
      x, y, tab, [](std::uint64_t n) { return n == 1 ? 1.0L : 0.0L; },
      [](std::uint64_t, double) { return 0.0L; });
  CHECK(jump_only == doctest::Approx(x * tab(u)).epsilon(1e-14));

  const double lam = lambda_smooth(x, y, tab);
  CHECK(lam > 0);
  CHECK(lambda_m(x, y, 1, tab, ft) == doctest::Approx(lam).epsilon(1e-12));
  StieltjesOptions fine;
  fine.subdivisions = 2;
  CHECK(std::fabs(lambda_smooth(x, y, tab, fine) - lam) <= 1e-6 * lam);
  CHECK(std::fabs(lambda_m(x, y, 6, tab, ft, fine) - lambda_m(x, y, 6, tab, ft)) <=
        1e-6 * lambda_m(x, y, 6, tab, ft));
  for (double yy : {2.0, 10.0, 300.0, x}) CHECK(lambda_smooth(x, yy, build_rho_table(20)) > 0);
  CHECK_THROWS_AS(lambda_smooth(10, 20, tab), DomainError);
  CHECK_THROWS_AS(lambda_smooth(1e5, 2, tab), RangeError);
}

TEST_CASE("Lambda tracks Psi") {
  const FactorTable ft(1'000'000);
  const auto tab = build_rho_table(3);
  const double r = lambda_smooth(1e6, 1e3, tab) / static_cast<double>(psi(1e6, 1e3, ft));
  CHECK(r >= 0.95);
  CHECK(r <= 1.05);
  const double r2 = lambda_m(1e6, 1e3, 2, tab, ft) / static_cast<double>(psi_coprime(1e6, 1e3, 2, ft));
  CHECK(r2 >= 0.9);
  CHECK(r2 <= 1.1);
}

TEST_CASE("R_m and coprime counts") {
  const FactorTable ft(1000);
  CHECK(r_m(10, 2, ft) == 0.0);
  for (double t : {1.0, 2.5, 7.0, 99.9}) {
    CHECK(r_m(t, 1, ft) == doctest::Approx(std::floor(t) / t - 1));
    CHECK(r_m(t, 1, ft) <= 0);
  }
  CHECK(std::fabs(r_m(30000, 30, ft)) < 1e-12);
  for (std::uint64_t m = 1; m <= 60; ++m) {
    for (double t : {1.0, 17.5, 360.0}) {
      std::uint64_t c = 0;
      for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(t); ++n) c += std::gcd(n, m) == 1;
      REQUIRE(coprime_count(t, m, ft) == c);
    }
  }
  CHECK_THROWS_AS(r_m(0.5, 2, ft), DomainError);
}

TEST_CASE("Hildebrand ratio") {
  const FactorTable ft(1'000'000);
  const auto tab = build_rho_table(5);
  CHECK(hildebrand_ratio(77.5, 100, tab, ft) == doctest::Approx(77 / 77.5));
  const double r = hildebrand_ratio(1e6, 1e3, tab, ft);
  CHECK(r >= 0.5);
  CHECK(r <= 1.5);
}
