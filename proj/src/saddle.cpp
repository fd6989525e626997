#include "friablelab/saddle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "friablelab/errors.hpp"
#include "friablelab/smooth.hpp"

namespace friablelab {

namespace {

constexpr double kBracketLo = 1e-6;
constexpr double kBracketHi = 10.0;
constexpr int kMaxIterations = 200;

std::span<const std::uint32_t> primes_for(double y, const FactorTable& ft) {
  if (y > static_cast<double>(ft.limit())) {
    throw CapacityError("y = " + std::to_string(y) + " beyond prime table limit " +
                        std::to_string(ft.limit()));
  }
  return ft.primes_up_to(y);
}

// Both sums run from the largest prime down.
double phi2_sum(double s, std::span<const std::uint32_t> primes) {
  long double acc = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const long double lp = std::log(static_cast<long double>(*it));
    const long double d = std::expm1(s * lp);  // p^s - 1
    acc += (d + 1) * lp * lp / (d * d);
  }
  return static_cast<double>(acc);
}

}  // namespace

double saddle_lhs(double s, std::span<const std::uint32_t> primes) {
  long double acc = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const long double lp = std::log(static_cast<long double>(*it));
    acc += lp / std::expm1(s * lp);
  }
  return static_cast<double>(acc);
}

SaddleResult saddle_alpha(double x, double y, const FactorTable& ft) {
  if (!(x >= 2.0 && y >= 2.0)) throw DomainError("saddle point needs x >= 2 and y >= 2");
  const auto primes = primes_for(y, ft);
  const double target = std::log(x);
  const auto f = [&](double s) { return saddle_lhs(s, primes) - target; };

  double lo = kBracketLo, hi = kBracketHi;
  const double flo = f(lo), fhi = f(hi);
  if (!(flo > 0 && fhi < 0)) {
    throw AccuracyError("saddle bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] does not straddle log x: f(lo) = " + std::to_string(flo) +
                        ", f(hi) = " + std::to_string(fhi));
  }
  SaddleResult res{};
  int it = 0;
  while (it < kMaxIterations && hi - lo > 1e-3 * std::max(1.0, lo)) {
    ++it;
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  double fs = f(s);
  const double tol = 1e-13 * std::max(1.0, target);
  while (it < kMaxIterations && std::fabs(fs) > tol) {
    ++it;
    (fs > 0 ? lo : hi) = s;
    double next = s + fs / phi2_sum(s, primes);  // f' = -phi2
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == s) break;
    s = next;
    fs = f(s);
  }
  res.alpha = s;
  res.residual = fs;
  res.iterations = it;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  if (!(std::fabs(fs) <= 1e-9 * target)) {
    throw AccuracyError("saddle residual " + std::to_string(fs) + " above 1e-9 log x after " +
                        std::to_string(it) + " iterations");
  }
  return res;
}

double log_zeta_y(double s, double y, const FactorTable& ft) {
  if (!(s > 0)) throw DomainError("zeta(s, y) needs s > 0");
  if (y < 2) return 0.0;
  const auto primes = primes_for(y, ft);
  long double acc = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    acc -= std::log1p(-std::exp(-s * std::log(static_cast<long double>(*it))));
  }
  return static_cast<double>(acc);
}

double zeta_y(double s, double y, const FactorTable& ft) { return std::exp(log_zeta_y(s, y, ft)); }

double phi2(double s, double y, const FactorTable& ft) {
  if (!(s > 0)) throw DomainError("phi2(s, y) needs s > 0");
  if (y < 2) return 0.0;
  return phi2_sum(s, primes_for(y, ft));
}

HtEstimate ht_estimate(double x, double y, const FactorTable& ft) {
  if (!(y >= 2.0 && y <= x)) throw DomainError("HT estimate needs 2 <= y <= x");
  HtEstimate est{};
  est.alpha = saddle_alpha(x, y, ft).alpha;
  const double a = est.alpha;
  est.log_psi_tilde = a * std::log(x) + log_zeta_y(a, y, ft) - std::log(a) -
                      0.5 * std::log(2 * std::numbers::pi * phi2(a, y, ft));
  est.psi_tilde = std::exp(est.log_psi_tilde);
  if (floor_count(x) <= ft.limit()) {
    est.psi = psi(x, y, ft);
    est.ratio = est.psi_tilde / static_cast<double>(*est.psi);
  }
  return est;
}

double g_m_alpha(std::uint64_t m, double alpha, const FactorTable& ft) {
  if (m == 0) throw DomainError("m must be positive");
  if (m == 1) return 1.0;
  double g = 1.0;
  for (std::uint64_t p : ft.distinct_primes(m)) g *= -std::expm1(-alpha * std::log(double(p)));
  return g;
}

Lemma1Report lemma1_report(double x, double y, std::span<const std::uint64_t> d_list,
                           std::span<const std::uint64_t> m_list, const FactorTable& ft) {
  if (!(y >= 2.0 && y <= x)) throw DomainError("Lemma 1 report needs 2 <= y <= x");
  Lemma1Report rep{x, y, saddle_alpha(x, y, ft).alpha, psi(x, y, ft), {}, {}};
  const double P = static_cast<double>(rep.psi);
  for (std::uint64_t d : d_list) {
    if (d == 0 || static_cast<double>(d) > x) throw DomainError("d must lie in [1, x]");
    const std::uint64_t v = psi(x / static_cast<double>(d), y, ft);
    rep.divisors.push_back({d, v, static_cast<double>(v) * std::pow(double(d), rep.alpha) / P});
  }
  for (std::uint64_t m : m_list) {
    const std::uint64_t v = psi_coprime(x, y, m, ft);
    const double g = g_m_alpha(m, rep.alpha, ft);
    rep.moduli.push_back({m, v, g, static_cast<double>(v) / (g * P)});
  }
  return rep;
}

}  // namespace friablelab
