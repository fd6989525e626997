#include "friablelab/titchmarsh.hpp"

#include <cmath>
#include <string>

#include "friablelab/errors.hpp"
#include "friablelab/parallel.hpp"
#include "friablelab/saddle.hpp"
#include "friablelab/smooth.hpp"

namespace friablelab {

namespace {

std::uint64_t checked_x(double x, const FactorTable& ft) {
  const std::uint64_t X = floor_count(x);
  if (X > ft.limit()) {
    throw CapacityError("x = " + std::to_string(X) + " beyond factor table limit " +
                        std::to_string(ft.limit()));
  }
  return X;
}

std::span<const std::uint32_t> cutoff_primes(std::uint64_t p_cutoff, const FactorTable& ft) {
  if (p_cutoff < 100) throw DomainError("prime cutoff must be >= 100");
  if (p_cutoff > ft.limit()) throw CapacityError("prime cutoff beyond factor table");
  return ft.primes_up_to(static_cast<double>(p_cutoff));
}

// Prefix data on 1..X: G(n) = sum g, GH(n) = sum g h, J(n) = sum_{k<=n} g(k) log(n/k).
struct PrefixTables {
  std::vector<long double> g, G, GH, J;
};

PrefixTables prefix_tables(std::uint64_t X, const FactorTable& ft) {
  PrefixTables t;
  t.g.assign(X + 1, 0);
  t.G.assign(X + 1, 0);
  t.GH.assign(X + 1, 0);
  t.J.assign(X + 1, 0);
  for (std::uint64_t n = 1; n <= X; ++n) {
    const auto v = gh_values(n, ft);
    t.g[n] = v.g;
    t.G[n] = t.G[n - 1] + v.g;
    t.GH[n] = t.GH[n - 1] + static_cast<long double>(v.g) * v.h;
    // The new term g(n) log(n/n) vanishes, so J only drifts with G.
    if (n > 1) t.J[n] = t.J[n - 1] + t.G[n - 1] * std::log(static_cast<long double>(n) / (n - 1));
  }
  return t;
}

}  // namespace

std::uint64_t titchmarsh_sum(double x, double y, const FactorTable& ft, unsigned threads) {
  const std::uint64_t X = checked_x(x, ft);
  if (X < 2) return 0;
  const auto lpf = ft.lpf();
  constexpr std::uint64_t kBlock = 1 << 14;
  const std::uint64_t blocks = (X - 1 + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> part(blocks, 0);
  parallel_for(0, blocks, threads, [&](std::size_t b) {
    const std::uint64_t lo = 2 + b * kBlock, hi = std::min(X, lo + kBlock - 1);
    std::uint64_t s = 0;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (static_cast<double>(lpf[n]) <= y) s += divisor_count(n - 1, ft);
    }
    part[b] = s;
  });
  std::uint64_t total = 0;
  for (auto s : part) total += s;
  return total;
}

std::uint64_t titchmarsh_sum_split(double x, double y, const FactorTable& ft) {
  const std::uint64_t X = checked_x(x, ft);
  if (X < 2) return 0;
  const auto lpf = ft.lpf();
  const auto smooth = [&](std::uint64_t n) { return static_cast<double>(lpf[n]) <= y; };
  auto z = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X)));
  while (z * z > X) --z;
  while ((z + 1) * (z + 1) <= X) ++z;
  std::uint64_t total = 0;
  for (std::uint64_t r = 1; r <= z; ++r) {
    for (std::uint64_t n = 1 + r; n <= X; n += r) total += smooth(n);
  }
  // n - 1 = j r with r > z, so j <= (X - 1) / (z + 1).
  for (std::uint64_t j = 1; j * (z + 1) + 1 <= X; ++j) {
    for (std::uint64_t n = 1 + j * (z + 1); n <= X; n += j) total += smooth(n);
  }
  return total;
}

BarredValue c_alpha(double alpha, std::uint64_t p_cutoff, const FactorTable& ft) {
  if (!(alpha > 0)) throw DomainError("C(alpha) needs alpha > 0");
  const auto primes = cutoff_primes(p_cutoff, ft);
  long double log_c = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const long double p = *it;
    const long double d = std::pow(p, -static_cast<long double>(alpha)) - 1 / p;
    log_c += std::log1p(-d / (p - 1));
  }
  BarredValue out{static_cast<double>(std::exp(log_c)), 0.0};
  if (alpha != 1.0) {
    // |p^{-alpha} - p^{-1}| / (p - 1) <= n^{-a} / (n - 1), a = min(alpha, 1),
    // summed over n > P and compared with the integral.
    const double P = static_cast<double>(p_cutoff), a = std::min(alpha, 1.0);
    const double tail = P / (P - 1) * std::pow(P, -a) / a;
    const double x_max = std::pow(P, -a) / (P - 1);
    out.tail_bar = tail / (1 - x_max);
  }
  return out;
}

FtConstants ft_constants(std::uint64_t p_cutoff, const FactorTable& ft) {
  const auto primes = cutoff_primes(p_cutoff, ft);
  long double log_a0 = 0, s1 = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const long double p = *it;
    log_a0 += std::log1p(1 / (p * (p - 1)));
    s1 += std::log(p) / (1 + p * (p - 1));
  }
  const double P = static_cast<double>(p_cutoff);
  FtConstants c{};
  c.cutoff = p_cutoff;
  // sum_{n>P} 1/(n(n-1)) = 1/P bounds the omitted logarithm.
  c.A0 = {static_cast<double>(std::exp(log_a0)), 1 / P};
  // sum_{n>P} log n / (n(n-1)) <= int_{P-1}^inf log(v+1)/v^2 dv.
  c.A1 = {static_cast<double>(kEulerGamma - s1),
          (std::log(P - 1) + 1) / (P - 1) + 1 / (2 * (P - 1) * (P - 1))};
  return c;
}

GhValues gh_values(std::uint64_t n, const FactorTable& ft) {
  if (n == 0) throw DomainError("n must be positive");
  GhValues v{1.0, 0.0};
  if (n == 1) return v;
  for (std::uint64_t pi : ft.distinct_primes(n)) {
    const double p = static_cast<double>(pi);
    const double q = 1 + p * (p - 1);
    v.g *= 1 - p / q;
    v.h += p * p * std::log(p) / ((p - 1) * q);
  }
  return v;
}

MValues m_functions(double t, const FactorTable& ft, const FtConstants& consts) {
  if (!(t >= 1)) throw DomainError("M_i(t) needs t >= 1");
  const std::uint64_t T = checked_x(t, ft);
  const long double A0 = consts.A0.value, A1 = consts.A1.value, tt = t;
  long double G = 0, GH = 0, integral = 0;
  for (std::uint64_t n = 1; n <= T; ++n) {
    const auto v = gh_values(n, ft);
    G += v.g;
    GH += static_cast<long double>(v.g) * v.h;
    // On [n, min(n+1, t)) M0(v) = A0 G(n) / v.
    const long double right = n == T ? tt : static_cast<long double>(n + 1);
    integral += A0 * G * std::log(right / n);
  }
  const long double M0 = A0 * G / tt;
  const long double M1 = 2 * A1 * M0 + 2 * A0 * GH / tt - integral / tt;
  return {static_cast<double>(M0), static_cast<double>(M1)};
}

TIntegrals t_integrals(double x, double y, const DickmanTable& tab, const FactorTable& ft,
                       const FtConstants& consts, const StieltjesOptions& opt) {
  const std::uint64_t X = checked_x(x, ft);
  const auto pt = prefix_tables(X, ft);
  const long double A0 = consts.A0.value, A1 = consts.A1.value;
  TIntegrals out{};
  out.T0 = rho_stieltjes(
      x, y, tab, [&](std::uint64_t n) { return A0 * pt.g[n] / n; },
      [&](std::uint64_t n, double t) {
        return -A0 * pt.G[n] / (static_cast<long double>(t) * t);
      },
      opt);
  out.T1 = rho_stieltjes(
      x, y, tab,
      [&](std::uint64_t n) {
        const auto v = gh_values(n, ft);
        return (2 * A1 * A0 * pt.g[n] + 2 * A0 * pt.g[n] * v.h) / n;
      },
      [&](std::uint64_t n, double t) {
        const long double tl = t;
        const long double J = pt.J[n] + pt.G[n] * std::log(tl / n);
        return (-2 * A1 * A0 * pt.G[n] - 2 * A0 * pt.GH[n] - A0 * pt.G[n] + A0 * J) / (tl * tl);
      },
      opt);
  return out;
}

TitchmarshReport titchmarsh_report(double x, double y, const DickmanTable& tab,
                                   const FactorTable& ft, const FtConstants& consts,
                                   unsigned threads) {
  if (!(y >= 2 && y <= x)) throw DomainError("Titchmarsh report needs 2 <= y <= x");
  TitchmarshReport rep{};
  rep.x = x;
  rep.y = y;
  rep.u = std::log(x) / std::log(y);
  rep.alpha = saddle_alpha(x, y, ft).alpha;
  rep.t_exact = titchmarsh_sum(x, y, ft, threads);
  rep.psi = psi(x, y, ft);
  rep.c_alpha = c_alpha(rep.alpha, consts.cutoff, ft);
  rep.main_18 = rep.c_alpha.value * static_cast<double>(rep.psi) * std::log(x);
  rep.ratio_18 = static_cast<double>(rep.t_exact) / rep.main_18;
  const auto ti = t_integrals(x, y, tab, ft, consts);
  rep.t0 = ti.T0;
  rep.t1 = ti.T1;
  rep.main_43 = ti.T0 * std::log(x) + ti.T1;
  rep.ratio_43 = static_cast<double>(rep.t_exact) / rep.main_43;
  return rep;
}

}  // namespace friablelab
