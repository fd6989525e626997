#include "friablelab/dickman.hpp"

#include <limits>
#include <numeric>

#include "friablelab/smooth.hpp"

namespace friablelab {

namespace {

constexpr int kMarchOrder = 7;

long double lagrange(std::span<const long double> v, long double pos, std::int64_t start, int m) {
  long double acc = 0;
  for (int i = 0; i < m; ++i) {
    long double w = 1;
    for (int j = 0; j < m; ++j) {
      if (j != i) w *= (pos - (start + j)) / static_cast<long double>(i - j);
    }
    acc += w * v[start + i];
  }
  return acc;
}

}  // namespace

DickmanTable::DickmanTable(double u_max, int cells_per_unit, int interpolation_order)
    : cells_per_unit_(cells_per_unit), order_(interpolation_order) {
  const auto K = static_cast<std::int64_t>(cells_per_unit);
  const auto N = static_cast<std::int64_t>(std::ceil(u_max * K - 1e-9));
  u_max_ = static_cast<double>(N) / K;
  values_.assign(N + 1, 1.0L);

  const GaussLegendre gl(8);
  for (std::int64_t i = K; i < N; ++i) {
    // Delayed argument t - 1 runs over cell [i-K, i-K+1], inside one unit
    // interval that is already complete.
    const std::int64_t unit = (i - K) / K;
    const std::int64_t lo = unit * K, hi = std::min(lo + K, N);
    const long double a = static_cast<long double>(i) / K;
    const long double b = static_cast<long double>(i + 1) / K;
    long double integral = 0;
    for (int g = 0; g < gl.size(); ++g) {
      const long double t = 0.5L * (a + b) + 0.5L * (b - a) * gl.node(g);
      const long double pos = (t - 1) * K;
      const int m = static_cast<int>(std::min<std::int64_t>(kMarchOrder + 1, hi - lo + 1));
      const std::int64_t start =
          std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(pos)) - (m / 2 - 1), lo, hi - m + 1);
      integral += gl.weight(g) * lagrange(values_, pos, start, m) / t;
    }
    values_[i + 1] = values_[i] - integral * 0.5L * (b - a);
    if ((i + 1) % K == 0) {
      // The derivative form conserves u rho(u) - int_{u-1}^{u} rho only up to
      // roundoff, and a nonzero value of that invariant is a parasitic
      // solution decaying like 1/u, far slower than rho. Resetting rho(k) from
      // the integral form, a sum of positive cells, keeps relative accuracy.
      long double window = 0;
      for (std::int64_t j = i + 1 - K; j <= i; ++j) window += cell_integral(j);
      values_[i + 1] = window / static_cast<long double>((i + 1) / K);
    }
  }
}

long double DickmanTable::cell_integral(std::int64_t j) const {
  static const GaussLegendre gl(6);
  long double acc = 0;
  for (int g = 0; g < gl.size(); ++g) {
    // Interior abscissae make the stencil pick the cell's own unit interval.
    acc += gl.weight(g) * interpolate(j + 0.5L + 0.5L * gl.node(g), kMarchOrder);
  }
  return acc * 0.5L / cells_per_unit_;
}

long double DickmanTable::interpolate(long double pos, int order) const {
  const auto K = static_cast<std::int64_t>(cells_per_unit_);
  const auto N = static_cast<std::int64_t>(values_.size()) - 1;
  std::int64_t unit = static_cast<std::int64_t>(std::floor(pos / K));
  if (unit * K >= N) unit = (N - 1) / K;
  const std::int64_t lo = unit * K, hi = std::min(lo + K, N);
  const int m = static_cast<int>(std::min<std::int64_t>(order + 1, hi - lo + 1));
  const std::int64_t start =
      std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(pos)) - (m / 2 - 1), lo, hi - m + 1);
  return lagrange(values_, pos, start, m);
}

long double DickmanTable::eval(double u, int order) const {
  if (u < 0) return 0;
  if (u <= 1) return 1;
  if (u > u_max_) {
    throw RangeError("rho(" + std::to_string(u) + ") beyond table u_max = " +
                     std::to_string(u_max_));
  }
  return interpolate(static_cast<long double>(u) * cells_per_unit_, order);
}

std::vector<long double> DickmanTable::cell_integrals() const {
  std::vector<long double> c(values_.size() - 1);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = cell_integral(static_cast<std::int64_t>(j));
  return c;
}

double DickmanTable::max_integral_residual(double u_limit) const {
  const auto K = static_cast<std::size_t>(cells_per_unit_);
  const std::size_t last =
      std::min(values_.size() - 1, static_cast<std::size_t>(std::floor(u_limit * K + 1e-9)));
  const auto c = cell_integrals();
  std::vector<long double> prefix(c.size() + 1, 0);
  for (std::size_t j = 0; j < c.size(); ++j) prefix[j + 1] = prefix[j] + c[j];
  long double worst = 0;
  for (std::size_t i = K; i <= last; ++i) {
    const long double u = static_cast<long double>(i) / K;
    const long double r = u * values_[i] - (prefix[i] - prefix[i - K]);
    worst = std::max(worst, std::fabs(r));
  }
  return static_cast<double>(worst);
}

DickmanTable build_rho_table(double u_max, double step, int interpolation_order) {
  if (!(u_max >= 1.0 && u_max <= 200.0)) throw DomainError("u_max must lie in [1, 200]");
  if (!(step > 0.0)) throw DomainError("step must be positive");
  if (step > 1.0 / 64) {
    throw AccuracyError("step " + std::to_string(step) +
                        " too coarse for the 1e-9 residual target (need <= 1/64)");
  }
  const double k = 1.0 / step;
  const auto K = static_cast<int>(std::lround(k));
  if (std::fabs(k - K) > 1e-9 * k) throw DomainError("1/step must be an integer");
  if (interpolation_order < 1 || interpolation_order > 7) {
    throw DomainError("interpolation order must lie in [1, 7]");
  }
  DickmanTable tab(u_max, K, interpolation_order);
  const double res = tab.max_integral_residual();
  if (!(res <= kRhoResidualTolerance)) {
    throw AccuracyError("Dickman table residual " + std::to_string(res) + " exceeds 1e-9");
  }
  return tab;
}

double rho(double u, const DickmanTable& tab) { return tab(u); }

double h_growth(double u) {
  if (!(u >= 0.0)) throw DomainError("H(u) needs u >= 0");
  if (u == 0.0) return std::numeric_limits<double>::infinity();
  const double l = std::log1p(u);
  return std::exp(u / (l * l));
}

double l_eps(double y, double eps) {
  if (!(y > 1.0)) throw DomainError("L_eps(y) needs y > 1");
  if (!(eps > 0.0 && eps < 0.6)) throw DomainError("L_eps needs eps in (0, 3/5)");
  return std::exp(std::pow(std::log(y), 0.6 - eps));
}

double lambda_smooth(double x, double y, const DickmanTable& tab, const StieltjesOptions& opt) {
  return rho_stieltjes(
      x, y, tab, [](std::uint64_t n) { return 1.0L / n; },
      [](std::uint64_t n, double t) { return -static_cast<long double>(n) / (static_cast<long double>(t) * t); },
      opt);
}

std::uint64_t coprime_count(double t, std::uint64_t m, const FactorTable& ft) {
  if (m == 0) throw DomainError("m must be positive");
  const std::uint64_t T = floor_count(t);
  const auto primes = m == 1 ? std::vector<std::uint64_t>{} : ft.distinct_primes(m);
  std::int64_t count = 0;
  const std::size_t subsets = std::size_t{1} << primes.size();
  for (std::size_t s = 0; s < subsets; ++s) {
    std::uint64_t d = 1;
    int sign = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (s >> i & 1) {
        d *= primes[i];
        sign = -sign;
      }
    }
    count += sign * static_cast<std::int64_t>(T / d);
  }
  return static_cast<std::uint64_t>(count);
}

double r_m(double t, std::uint64_t m, const FactorTable& ft) {
  if (!(t >= 1.0)) throw DomainError("R_m(t) needs t >= 1");
  const double phi = m == 1 ? 1.0 : static_cast<double>(euler_phi(m, ft));
  return static_cast<double>(coprime_count(t, m, ft)) / t - phi / static_cast<double>(m);
}

double lambda_m(double x, double y, std::uint64_t m, const DickmanTable& tab,
                const FactorTable& ft, const StieltjesOptions& opt) {
  if (m == 0) throw DomainError("m must be positive");
  if (m > 1) ft.factorize(m);  // capacity check
  const std::uint64_t X = floor_count(x);
  std::vector<std::uint64_t> count(X + 1, 0);
  for (std::uint64_t n = 1; n <= X; ++n) count[n] = count[n - 1] + (std::gcd(n, m) == 1);
  return rho_stieltjes(
      x, y, tab, [&](std::uint64_t n) { return std::gcd(n, m) == 1 ? 1.0L / n : 0.0L; },
      [&](std::uint64_t n, double t) {
        return -static_cast<long double>(count[n]) / (static_cast<long double>(t) * t);
      },
      opt);
}

double hildebrand_ratio(double x, double y, const DickmanTable& tab, const FactorTable& ft) {
  if (!(x >= 1.0 && y >= 1.0)) throw DomainError("hildebrand_ratio needs x, y >= 1");
  const double u = y >= x ? 1.0 : std::log(x) / std::log(y);
  return static_cast<double>(psi(x, y, ft)) / (x * tab(u));
}

}  // namespace friablelab
