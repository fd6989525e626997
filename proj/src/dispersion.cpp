#include "friablelab/dispersion.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "friablelab/errors.hpp"

namespace friablelab {

namespace {

using lcplx = std::complex<long double>;

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

std::uint64_t phi_trial(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

// Per-modulus data shared by the three evaluations.
struct Modulus {
  std::uint64_t r;
  std::uint64_t phi;
  std::vector<cplx> omega;  // omega(k; r) for k mod r
  std::uint64_t a1bar_a2;   // a1^{-1} a2 mod r
  std::uint64_t a1_a2bar;   // a1 a2^{-1} mod r
};

std::vector<Modulus> moduli(const TripleSequences& ts) {
  std::vector<Modulus> out;
  for (std::uint64_t r = ts.R + 1; r <= 2 * ts.R; ++r) {
    const auto ri = static_cast<std::int64_t>(r);
    if (gcd(ts.a1, ri) != 1 || gcd(ts.a2, ri) != 1) continue;
    Modulus md{r, phi_trial(r), omega_table(r, ts.Q_chi), 0, 0};
    md.a1bar_a2 = mul_mod(mod_inverse(ts.a1, r), mod_reduce(ts.a2, r), r);
    md.a1_a2bar = mul_mod(mod_reduce(ts.a1, r), mod_inverse(ts.a2, r), r);
    out.push_back(std::move(md));
  }
  return out;
}

// Integers m with f(m) = Phi_0(m/M) != 0.
std::vector<std::pair<std::uint64_t, double>> weights(const TripleSequences& ts) {
  std::vector<std::pair<std::uint64_t, double>> w;
  const double M = static_cast<double>(ts.M);
  const auto hi = static_cast<std::uint64_t>(std::ceil(ts.bump.hi * M));
  for (std::uint64_t m = 1; m <= hi; ++m) {
    const double f = bump(static_cast<double>(m) / M, ts.bump);
    if (f > 0) w.emplace_back(m, f);
  }
  return w;
}

}  // namespace

void validate(const TripleSequences& ts) {
  if (ts.M == 0 || ts.N == 0 || ts.L == 0 || ts.R == 0) {
    throw DomainError("M, N, L, R must be positive");
  }
  if (ts.M > kDispersionCap || ts.N > kDispersionCap || ts.L > kDispersionCap ||
      ts.R > kDispersionCap) {
    throw CapacityError("dispersion ranges are capped at 64");
  }
  if (!(ts.Q_chi >= 1.0)) throw DomainError("Q_chi must be >= 1");
  if (ts.Q_chi > kDispersionCharCutoffCap) throw CapacityError("Q_chi is capped at 16");
  if (ts.alpha.size() != ts.M || ts.beta.size() != ts.N || ts.lambda.size() != ts.L) {
    throw DomainError("sequence lengths must equal M, N, L");
  }
  if (ts.a1 == 0 || ts.a2 == 0 || gcd(ts.a1, ts.a2) != 1) {
    throw DomainError("a1, a2 must be nonzero and coprime");
  }
  for (const auto* seq : {&ts.alpha, &ts.beta, &ts.lambda}) {
    for (const auto& z : *seq) {
      if (!(std::abs(z) <= 1 + 1e-12)) throw DomainError("sequence entries must have modulus <= 1");
    }
  }
  if (!(ts.bump.lo > 0 && ts.bump.lo < ts.bump.rise_end && ts.bump.rise_end <= 1 &&
        ts.bump.fall_start >= 2 && ts.bump.fall_start < ts.bump.hi)) {
    throw DomainError("bump must dominate the indicator of [1, 2] with support in (0, inf)");
  }
}

Convolution convolve_u(std::span<const cplx> beta, std::uint64_t N, std::span<const cplx> lambda,
                       std::uint64_t L) {
  if (beta.size() != N || lambda.size() != L) throw DomainError("sequence lengths must equal N, L");
  Convolution c{N * L, std::vector<cplx>(3 * N * L)};
  std::vector<lcplx> acc(3 * N * L);
  for (std::uint64_t i = 0; i < N; ++i) {
    for (std::uint64_t j = 0; j < L; ++j) {
      const std::uint64_t k = (N + 1 + i) * (L + 1 + j);
      acc[k - c.K - 1] += widen(beta[i]) * widen(lambda[j]);
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i) c.u[i] = narrow(acc[i]);
  return c;
}

DispersionReport dispersion_terms(const TripleSequences& ts) {
  validate(ts);
  const auto conv = convolve_u(ts.beta, ts.N, ts.lambda, ts.L);
  const auto mods = moduli(ts);
  const auto fw = weights(ts);
  long double S1 = 0, S3 = 0;
  lcplx S2 = 0;
  for (const auto& md : mods) {
    const std::uint64_t r = md.r;
    std::vector<lcplx> U(r);
    for (std::uint64_t k = conv.K + 1; k <= 4 * conv.K; ++k) U[k % r] += widen(conv.at(k));
    const long double inv_phi = 1.0L / static_cast<long double>(md.phi);
    for (const auto& [m, f] : fw) {
      if (std::gcd(m, r) != 1) continue;
      const std::uint64_t cls = mul_mod(md.a1_a2bar, mod_inverse(static_cast<std::int64_t>(m), r), r);
      const lcplx A = U[cls];
      const std::uint64_t scale = mul_mod(m % r, md.a1bar_a2, r);
      lcplx B = 0;
      for (std::uint64_t c = 0; c < r; ++c) {
        if (std::gcd(c, r) == 1) B += U[c] * widen(md.omega[mul_mod(scale, c, r)]);
      }
      B *= inv_phi;
      S1 += f * std::norm(A);
      S2 += static_cast<long double>(f) * B * std::conj(A);
      S3 += f * std::norm(B);
    }
  }
  DispersionReport rep{};
  rep.S1 = static_cast<double>(S1);
  rep.S2 = narrow(S2);
  rep.S3 = static_cast<double>(S3);
  rep.variance = static_cast<double>(S1 - 2 * S2.real() + S3);
  rep.scale = static_cast<double>(S1 + S3);
  rep.moduli = mods.size();
  rep.delta = dispersion_delta(ts);
  rep.cs_bound = std::sqrt(static_cast<double>(ts.M) * static_cast<double>(rep.moduli) *
                           std::max(0.0, rep.variance));
  return rep;
}

VarianceIdentity variance_identity_check(const TripleSequences& ts) {
  const auto rep = dispersion_terms(ts);
  const auto conv = convolve_u(ts.beta, ts.N, ts.lambda, ts.L);
  long double rhs = 0;
  for (const auto& md : moduli(ts)) {
    const std::uint64_t r = md.r;
    for (const auto& [m, f] : weights(ts)) {
      if (std::gcd(m, r) != 1) continue;
      const std::uint64_t target =
          mul_mod(md.a1_a2bar, mod_inverse(static_cast<std::int64_t>(m), r), r);
      lcplx A = 0, B = 0;
      for (std::uint64_t k = conv.K + 1; k <= 4 * conv.K; ++k) {
        const lcplx uk = widen(conv.at(k));
        if (k % r == target) A += uk;
        if (std::gcd(k, r) == 1) {
          const std::uint64_t arg = mul_mod(mul_mod(m % r, k % r, r), md.a1bar_a2, r);
          B += uk * widen(md.omega[arg]);
        }
      }
      B /= static_cast<long double>(md.phi);
      rhs += f * std::norm(A - B);
    }
  }
  VarianceIdentity out{rep.variance, static_cast<double>(rhs), 0.0};
  out.abs_err = std::fabs(out.lhs - out.rhs);
  return out;
}

double dispersion_delta(const TripleSequences& ts) {
  validate(ts);
  long double delta = 0;
  for (const auto& md : moduli(ts)) {
    const std::uint64_t r = md.r;
    lcplx first = 0, second = 0;
    for (std::uint64_t i = 0; i < ts.M; ++i) {
      const std::uint64_t m = ts.M + 1 + i;
      for (std::uint64_t j = 0; j < ts.N; ++j) {
        const std::uint64_t mn = (m % r) * ((ts.N + 1 + j) % r) % r;
        const lcplx ab = widen(ts.alpha[i]) * widen(ts.beta[j]);
        for (std::uint64_t l = 0; l < ts.L; ++l) {
          const std::uint64_t k = mn * ((ts.L + 1 + l) % r) % r;
          const lcplx term = ab * widen(ts.lambda[l]);
          if (k == md.a1_a2bar) first += term;
          if (std::gcd(k, r) == 1) second += term * widen(md.omega[mul_mod(k, md.a1bar_a2, r)]);
        }
      }
    }
    delta += std::abs(first - second / static_cast<long double>(md.phi));
  }
  return static_cast<double>(delta);
}

double sine_integral(double x) {
  if (x < 0) return -sine_integral(-x);
  if (x == 0) return 0;
  const long double X = x;
  if (x <= 4) {
    long double term = X, sum = X;  // term = (-1)^k x^{2k+1} / (2k+1)!
    for (int k = 1; k < 60; ++k) {
      term *= -X * X / ((2 * k) * (2 * k + 1));
      const long double add = term / (2 * k + 1);
      sum += add;
      if (std::fabs(add) < 1e-22L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
  }
  // E1(ix) by its continued fraction (modified Lentz); Si = pi/2 + Im(e^{-ix} cf).
  constexpr long double tiny = std::numeric_limits<long double>::min() * 1e10L;
  lcplx b(1, X), c = 1 / tiny, d = 1.0L / b, h = d;
  for (int i = 2; i < 100000; ++i) {
    const long double a = -static_cast<long double>(i - 1) * (i - 1);
    b += 2;
    d = 1.0L / (a * d + b);
    c = b + a / c;
    const lcplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0L) < 1e-19L) break;
  }
  h *= lcplx(std::cos(X), -std::sin(X));
  return static_cast<double>(std::numbers::pi_v<long double> / 2 + h.imag());
}

IndicatorFourier indicator_fourier(double theta, double T) {
  if (theta == 0 || !std::isfinite(theta)) throw DomainError("theta must be a nonzero real");
  if (!(T >= 1)) throw DomainError("T must be >= 1");
  const double a = std::fabs(theta);
  const double s = (sine_integral(a * T) - sine_integral(a / T)) / std::numbers::pi;
  IndicatorFourier out{};
  out.approx = theta > 0 ? 0.5 + s : 0.5 - s;
  out.exact = theta > 0 ? 1.0 : 0.0;
  out.abs_err = std::fabs(out.approx - out.exact);
  out.bound = (a + 1 / a) / T;
  return out;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<cplx> random_unimodular(std::size_t n, std::mt19937_64& rng) {
  std::vector<cplx> v(n);
  for (auto& z : v) {
    const double t = 2 * std::numbers::pi * uniform01(rng);
    z = {std::cos(t), std::sin(t)};
  }
  return v;
}

TripleSequences random_triple(std::uint64_t M, std::uint64_t N, std::uint64_t L, std::uint64_t R,
                              double Q_chi, std::int64_t a1, std::int64_t a2, std::uint64_t seed) {
  if (M > kDispersionCap || N > kDispersionCap || L > kDispersionCap) {
    throw CapacityError("dispersion ranges are capped at 64");
  }
  std::mt19937_64 rng(seed);
  TripleSequences ts;
  ts.M = M, ts.N = N, ts.L = L, ts.R = R, ts.Q_chi = Q_chi, ts.a1 = a1, ts.a2 = a2;
  ts.alpha = random_unimodular(M, rng);
  ts.beta = random_unimodular(N, rng);
  ts.lambda = random_unimodular(L, rng);
  validate(ts);
  return ts;
}

std::vector<IndexedValue> read_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sequence file " + path);
  std::vector<IndexedValue> rows;
  std::string line;
  std::size_t lineno = 0;
  const auto bad = [&](const std::string& why) {
    return ConfigError(path + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "index,re,im") continue;
    std::stringstream ss(line);
    std::string f[3];
    for (auto& s : f) {
      if (!std::getline(ss, s, ',')) throw bad("expected three columns");
    }
    std::string extra;
    if (std::getline(ss, extra)) throw bad("expected three columns");
    IndexedValue row{};
    auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), row.index);
    if (ec != std::errc{} || p != f[0].data() + f[0].size()) throw bad("bad index");
    double re = 0, im = 0;
    try {
      std::size_t u = 0, v = 0;
      re = std::stod(f[1], &u);
      im = std::stod(f[2], &v);
      if (u != f[1].size() || v != f[2].size()) throw bad("bad number");
    } catch (const std::logic_error&) {
      throw bad("bad number");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) throw bad("non-finite value");
    row.value = {re, im};
    rows.push_back(row);
  }
  return rows;
}

void write_sequence_csv(const std::string& path, std::span<const IndexedValue> rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << "index,re,im\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.index;
    std::snprintf(buf, sizeof buf, ",%.17g", r.value.real());
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.17g", r.value.imag());
    out << buf << '\n';
  }
}

std::vector<cplx> sequence_on_range(std::span<const IndexedValue> rows, std::uint64_t lo,
                                    std::uint64_t len) {
  std::vector<cplx> v(len);
  for (const auto& r : rows) {
    if (r.index <= static_cast<std::int64_t>(lo) || r.index > static_cast<std::int64_t>(lo + len)) {
      throw ConfigError("sequence index " + std::to_string(r.index) + " outside (" +
                        std::to_string(lo) + ", " + std::to_string(lo + len) + "]");
    }
    v[r.index - lo - 1] = r.value;
  }
  return v;
}

}  // namespace friablelab
