#include "friablelab/characters.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>

#include "friablelab/errors.hpp"
#include "friablelab/parallel.hpp"
#include "friablelab/smooth.hpp"

namespace friablelab {

namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;
constexpr std::uint32_t kNoLog = 0xffffffffu;

std::vector<PrimePower> trial_factor(std::uint64_t n) {
  std::vector<PrimePower> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) n /= p, ++e;
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

std::uint64_t ipow(std::uint64_t p, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= p;
  return r;
}

std::uint64_t primitive_root_mod_p(std::uint64_t p) {
  if (p == 2) return 1;
  const auto f = trial_factor(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& pe : f) {
      if (pow_mod(g, (p - 1) / pe.prime, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

std::uint64_t reduce(std::int64_t k, std::uint64_t q) { return mod_reduce(k, q); }

}  // namespace

std::complex<long double> e_rational(std::int64_t num, std::uint64_t den) {
  if (den == 0) throw DomainError("e(num/den) needs den > 0");
  std::int64_t r = static_cast<std::int64_t>(reduce(num, den));
  if (static_cast<std::uint64_t>(2 * r) > den) r -= static_cast<std::int64_t>(den);
  const long double ang = kTwoPi * static_cast<long double>(r) / static_cast<long double>(den);
  return {std::cos(ang), std::sin(ang)};
}

CharacterGroup::CharacterGroup(std::uint64_t q) : q_(q) {
  if (q == 0) throw DomainError("modulus must be positive");
  if (q > kCharacterModulusCap) {
    throw CapacityError("character modulus " + std::to_string(q) + " beyond cap " +
                        std::to_string(kCharacterModulusCap));
  }
  for (const auto& [p, e] : trial_factor(q)) {
    const std::uint64_t pe = ipow(p, e);
    if (p == 2) {
      if (e == 1) continue;
      std::vector<std::uint32_t> la(pe, kNoLog), lb(pe, kNoLog);
      const std::uint64_t ob = e >= 3 ? pe / 4 : 1;
      std::uint64_t five = 1;
      for (std::uint64_t b = 0; b < ob; ++b) {
        la[five] = 0, lb[five] = static_cast<std::uint32_t>(b);
        la[pe - five] = 1, lb[pe - five] = static_cast<std::uint32_t>(b);
        five = five * 5 % pe;
      }
      comps_.push_back({2, e, pe, pe - 1, 2, false});
      logs_.push_back(std::move(la));
      if (e >= 3) {
        comps_.push_back({2, e, pe, 5, ob, true});
        logs_.push_back(std::move(lb));
      }
      continue;
    }
    std::uint64_t g = primitive_root_mod_p(p);
    if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
    const std::uint64_t order = pe / p * (p - 1);
    std::vector<std::uint32_t> lg(pe, kNoLog);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      lg[x] = static_cast<std::uint32_t>(i);
      x = x * g % pe;
    }
    comps_.push_back({p, e, pe, g, order, false});
    logs_.push_back(std::move(lg));
  }
  for (const auto& c : comps_) {
    size_ *= c.order;
    L_ = std::lcm(L_, c.order);
  }
  for (const auto& c : comps_) weight_.push_back(L_ / c.order);
  roots_.resize(L_);
  for (std::uint64_t t = 0; t < L_; ++t) {
    const auto z = e_rational(static_cast<std::int64_t>(t), L_);
    roots_[t] = {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
}

std::uint64_t CharacterGroup::log(std::size_t j, std::uint64_t k) const {
  const auto v = logs_[j][k % comps_[j].modulus];
  if (v == kNoLog) throw DomainError("discrete log of a non-unit");
  return v;
}

std::int64_t CharacterGroup::phase(std::span<const std::uint64_t> exps, std::int64_t k) const {
  const std::uint64_t kr = reduce(k, q_);
  if (std::gcd(kr, q_) != 1) return -1;
  std::uint64_t t = 0;
  for (std::size_t j = 0; j < comps_.size(); ++j) {
    const std::uint64_t l = logs_[j][kr % comps_[j].modulus];
    t = (t + mul_mod(exps[j], l, comps_[j].order) * weight_[j]) % L_;
  }
  return static_cast<std::int64_t>(t);
}

std::uint64_t CharacterGroup::conductor(std::span<const std::uint64_t> exps) const {
  std::uint64_t f = 1;
  for (std::size_t j = 0; j < comps_.size(); ++j) {
    const auto& c = comps_[j];
    if (c.prime == 2) {
      if (c.five_part) continue;  // handled with the <-1> factor
      const std::uint64_t a = exps[j];
      const bool has_five = j + 1 < comps_.size() && comps_[j + 1].five_part;
      const std::uint64_t b = has_five ? exps[j + 1] : 0;
      if (b == 0) {
        if (a == 1) f *= 4;
        continue;
      }
      // 5^{2^{f-2}} generates the kernel of reduction mod 2^f.
      const std::uint64_t ob = comps_[j + 1].order;
      unsigned ff = 3;
      while ((b << (ff - 2)) % ob != 0) ++ff;
      f *= ipow(2, ff);
      continue;
    }
    // g^{phi(p^f)} generates the kernel of reduction mod p^f.
    if (exps[j] == 0) continue;
    std::uint64_t pf = 1;
    for (unsigned ff = 1; ff <= c.exponent; ++ff) {
      pf *= c.prime;
      const std::uint64_t phi_pf = pf / c.prime * (c.prime - 1);
      if (mul_mod(exps[j], phi_pf, c.order) == 0) break;
    }
    f *= pf;
  }
  return f;
}

DirichletCharacter CharacterGroup::character(std::uint64_t index) const {
  if (index >= size_) throw DomainError("character index out of range");
  std::vector<std::uint64_t> exps(comps_.size());
  for (std::size_t j = 0; j < comps_.size(); ++j) {
    exps[j] = index % comps_[j].order;
    index /= comps_[j].order;
  }
  return {shared_from_this(), std::move(exps)};
}

DirichletCharacter CharacterGroup::from_exponents(std::vector<std::uint64_t> exps) const {
  if (exps.size() != comps_.size()) throw DomainError("exponent vector has the wrong length");
  for (std::size_t j = 0; j < comps_.size(); ++j) {
    if (exps[j] >= comps_[j].order) throw DomainError("exponent exceeds component order");
  }
  return {shared_from_this(), std::move(exps)};
}

std::vector<DirichletCharacter> CharacterGroup::characters() const {
  std::vector<DirichletCharacter> out;
  out.reserve(size_);
  for (std::uint64_t i = 0; i < size_; ++i) out.push_back(character(i));
  return out;
}

std::shared_ptr<const CharacterGroup> character_group(std::uint64_t q) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::shared_ptr<const CharacterGroup>> cache;
  static std::uint64_t cached_size = 0;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  auto g = std::make_shared<const CharacterGroup>(q);
  std::lock_guard lock(mu);
  if (cached_size + q > 8 * kCharacterModulusCap) {
    cache.clear();
    cached_size = 0;
  }
  auto [it, inserted] = cache.emplace(q, g);
  if (inserted) cached_size += q;
  return it->second;
}

std::shared_ptr<const CharacterGroup> character_group(std::uint64_t q, const FactorTable&) {
  return character_group(q);
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group,
                                       std::vector<std::uint64_t> exps)
    : group_(std::move(group)), exps_(std::move(exps)), conductor_(group_->conductor(exps_)) {}

bool DirichletCharacter::is_trivial() const {
  for (auto e : exps_) {
    if (e) return false;
  }
  return true;
}

std::uint64_t DirichletCharacter::index() const {
  std::uint64_t idx = 0;
  const auto comps = group_->components();
  for (std::size_t j = comps.size(); j-- > 0;) idx = idx * comps[j].order + exps_[j];
  return idx;
}

cplx DirichletCharacter::operator()(std::int64_t k) const {
  const auto t = phase(k);
  return t < 0 ? cplx{} : group_->root(static_cast<std::uint64_t>(t));
}

DirichletCharacter DirichletCharacter::conj() const {
  auto e = exps_;
  const auto comps = group_->components();
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = e[j] ? comps[j].order - e[j] : 0;
  return {group_, std::move(e)};
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
  if (a.modulus() != b.modulus()) throw DomainError("characters have different moduli");
  auto e = a.exps_;
  const auto comps = a.group_->components();
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = (e[j] + b.exps_[j]) % comps[j].order;
  return {a.group_, std::move(e)};
}

std::uint64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

cplx omega_eps(std::int64_t k, std::uint64_t r, double cutoff) {
  if (r == 0) throw DomainError("modulus must be positive");
  if (!(cutoff >= 1.0)) throw DomainError("conductor cutoff must be >= 1");
  if (gcd(k, static_cast<std::int64_t>(r)) != 1) {
    throw DomainError("omega(k; r) needs gcd(k, r) = 1");
  }
  const auto g = character_group(r);
  std::complex<long double> acc = 0;
  for (std::uint64_t i = 0; i < g->size(); ++i) {
    const auto chi = g->character(i);
    if (static_cast<double>(chi.conductor()) <= cutoff) acc += std::complex<long double>(chi(k));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::vector<cplx> omega_table(std::uint64_t r, double cutoff) {
  if (r == 0) throw DomainError("modulus must be positive");
  if (!(cutoff >= 1.0)) throw DomainError("conductor cutoff must be >= 1");
  const auto g = character_group(r);
  std::vector<std::complex<long double>> acc(r);
  std::vector<std::uint64_t> units;
  for (std::uint64_t k = 0; k < r; ++k) {
    if (std::gcd(k, r) == 1) units.push_back(k);
  }
  for (std::uint64_t i = 0; i < g->size(); ++i) {
    const auto chi = g->character(i);
    if (!(static_cast<double>(chi.conductor()) <= cutoff)) continue;
    for (auto k : units) {
      acc[k] += std::complex<long double>(g->root(chi.phase(static_cast<std::int64_t>(k))));
    }
  }
  std::vector<cplx> out(r);
  for (std::uint64_t k = 0; k < r; ++k) out[k] = {double(acc[k].real()), double(acc[k].imag())};
  return out;
}

GaussPairSum gauss_pair_sum(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                            std::int64_t h, std::uint64_t r) {
  if (chi1.modulus() != r || chi2.modulus() != r) {
    throw DomainError("gauss_pair_sum expects characters modulo r");
  }
  const auto prod = chi1 * chi2.conj();
  const std::uint64_t L = chi1.group().phase_denominator();
  const std::uint64_t D = std::lcm(L, r);
  const std::uint64_t hr = mod_reduce(h, r);
  std::complex<long double> acc = 0;
  for (std::uint64_t b = 1; b < r || (r == 1 && b == 1); ++b) {
    const auto t = prod.phase(static_cast<std::int64_t>(b));
    if (t < 0) continue;
    // chi1 conj(chi2)(b) e(-bh/r) = e(t/L - bh/r)
    const std::int64_t num = static_cast<std::int64_t>(static_cast<std::uint64_t>(t) * (D / L) % D) -
                             static_cast<std::int64_t>(mul_mod(b % r, hr, r) * (D / r));
    acc += e_rational(num, D);
    if (r == 1) break;
  }
  GaussPairSum out{};
  out.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  out.conductor = prod.conductor();
  const std::uint64_t d0 = std::gcd(hr, r);  // (0, r) = r
  std::uint64_t sigma = 0;
  for (std::uint64_t d = 1; d * d <= d0; ++d) {
    if (d0 % d == 0) sigma += d + (d * d == d0 ? 0 : d0 / d);
  }
  out.bound = std::sqrt(static_cast<double>(out.conductor)) * static_cast<double>(sigma);
  out.bound_ratio = std::abs(out.value) / out.bound;
  return out;
}

CharSumReport char_sum_smooth(double x, double y, double Q, double cond_cutoff,
                              const FactorTable& ft, unsigned threads) {
  const std::uint64_t X = floor_count(x);
  if (X > ft.limit()) throw CapacityError("x beyond factor table");
  const std::uint64_t q_max = floor_count(Q);
  if (q_max > kCharacterModulusCap) throw CapacityError("Q beyond character capacity");
  const auto lpf = ft.lpf();
  std::vector<std::uint64_t> smooth;
  for (std::uint64_t n = 1; n <= X; ++n) {
    if (static_cast<double>(lpf[n]) <= y) smooth.push_back(n);
  }
  std::vector<double> per_q(q_max + 1, 0.0);
  std::vector<std::uint64_t> used(q_max + 1, 0);
  if (cond_cutoff >= 2.0) {
    parallel_for(1, q_max + 1, threads, [&](std::size_t q) {
      const auto g = character_group(q);
      std::vector<std::uint64_t> counts(q, 0);
      for (auto n : smooth) ++counts[n % q];
      long double total = 0;
      for (std::uint64_t i = 1; i < g->size(); ++i) {
        const auto chi = g->character(i);
        const auto f = static_cast<double>(chi.conductor());
        if (!(f > 1 && f <= cond_cutoff)) continue;
        std::complex<long double> s = 0;
        for (std::uint64_t k = 0; k < q; ++k) {
          if (!counts[k]) continue;
          const auto t = chi.phase(static_cast<std::int64_t>(k));
          if (t >= 0) s += static_cast<long double>(counts[k]) * std::complex<long double>(g->root(t));
        }
        total += std::abs(s);
        ++used[q];
      }
      per_q[q] = static_cast<double>(total / static_cast<long double>(g->size()));
    });
  }
  CharSumReport rep{0.0, smooth.size(), 0.0, 0};
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    rep.sum += per_q[q];
    rep.characters += used[q];
  }
  rep.normalized = rep.psi ? rep.sum / static_cast<double>(rep.psi) : 0.0;
  return rep;
}

LargeSieveReport large_sieve_check(std::uint64_t Q, std::uint64_t M, std::span<const cplx> seq) {
  if (Q == 0) throw DomainError("Q must be positive");
  if (Q > kCharacterModulusCap) throw CapacityError("Q beyond character capacity");
  long double norm = 0;
  for (const auto& a : seq) norm += std::norm(std::complex<long double>(a));
  const long double N = static_cast<long double>(seq.size());
  LargeSieveReport rep{};
  rep.rhs = static_cast<double>((N + static_cast<long double>(Q) * Q - 1) * norm);
  long double lhs = 0;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    const auto g = character_group(q);
    std::vector<std::complex<long double>> folded(q);
    for (std::size_t i = 0; i < seq.size(); ++i) folded[(M + 1 + i) % q] += std::complex<long double>(seq[i]);
    long double inner = 0;
    for (std::uint64_t idx = 0; idx < g->size(); ++idx) {
      const auto chi = g->character(idx);
      if (!chi.primitive()) continue;
      std::complex<long double> s = 0;
      for (std::uint64_t k = 0; k < q; ++k) {
        const auto t = chi.phase(static_cast<std::int64_t>(k));
        if (t >= 0) s += folded[k] * std::complex<long double>(g->root(t));
      }
      inner += std::norm(s);
    }
    lhs += static_cast<long double>(q) / static_cast<long double>(g->size()) * inner;
  }
  rep.lhs = static_cast<double>(lhs);
  rep.ok = rep.lhs <= rep.rhs * (1 + 1e-9);
  return rep;
}

KloostermanResult kloosterman(std::int64_t a, std::int64_t b, std::uint64_t c) {
  if (c == 0) throw DomainError("modulus must be positive");
  if (c > kKloostermanModulusCap) throw CapacityError("Kloosterman modulus beyond cap");
  const std::uint64_t ar = mod_reduce(a, c), br = mod_reduce(b, c);
  std::complex<long double> acc = 0;
  std::uint64_t phi = 0;
  for (std::uint64_t x = 0; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    ++phi;
    const std::uint64_t xi = mod_inverse(static_cast<std::int64_t>(x), c);
    const std::uint64_t t = (mul_mod(ar, x, c) + mul_mod(br, xi, c)) % c;
    acc += e_rational(static_cast<std::int64_t>(t), c);
  }
  KloostermanResult res{};
  res.value = static_cast<double>(acc.real());
  res.imag = static_cast<double>(acc.imag());
  if (!(std::fabs(res.imag) <= 1e-9 * static_cast<double>(phi))) {
    throw AccuracyError("Kloosterman sum has imaginary part " + std::to_string(res.imag));
  }
  const std::uint64_t g = std::gcd(std::gcd(ar, br), c);
  res.weil_bound = static_cast<double>(divisor_count_trial(c)) * std::sqrt(double(g)) *
                   std::sqrt(static_cast<double>(c));
  res.weil_ratio = std::fabs(res.value) / res.weil_bound;
  return res;
}

IncompleteKloosterman incomplete_kloosterman(std::int64_t b, std::uint64_t c, double D,
                                             const IncompleteVariant& variant,
                                             const FactorTable& ft) {
  if (c == 0) throw DomainError("modulus must be positive");
  if (c > kKloostermanModulusCap) throw CapacityError("modulus beyond cap");
  const bool weighted = variant.kind == IncompleteVariant::Kind::phi_weighted;
  if (weighted && (variant.k == 0 || variant.l == 0)) throw DomainError("k and l must be positive");
  const std::uint64_t Dn = floor_count(D);
  if (weighted && Dn > ft.limit()) throw CapacityError("D beyond factor table");
  const std::uint64_t br = mod_reduce(b, c);
  std::complex<long double> acc = 0;
  std::uint64_t terms = 0;
  for (std::uint64_t d = 1; d <= Dn; ++d) {
    if (std::gcd(d, c) != 1) continue;
    long double w = 1;
    if (weighted) {
      if (std::gcd(d, variant.k) != 1 || d % variant.l != 0) continue;
      w = static_cast<long double>(d) / static_cast<long double>(d == 1 ? 1 : euler_phi(d, ft));
    }
    const std::uint64_t di = mod_inverse(static_cast<std::int64_t>(d), c);
    acc += w * e_rational(static_cast<std::int64_t>(mul_mod(br, di, c)), c);
    ++terms;
  }
  IncompleteKloosterman out{};
  out.value = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  out.terms = terms;
  const double g = static_cast<double>(std::gcd(br, c));
  const double root = std::sqrt(g * static_cast<double>(divisor_count_trial(c))) *
                      std::sqrt(static_cast<double>(c));
  const double lg = std::log(std::max(D, 0.0) + 1);
  const double Dp = std::max(D, 0.0);
  if (!weighted) {
    out.shape = lg * root + g * Dp / static_cast<double>(c);
  } else {
    const double l = static_cast<double>(variant.l);
    const double two_omega = std::ldexp(1.0, static_cast<int>(trial_factor(variant.k).size()));
    out.shape = (lg * lg * root + g * std::log(l + 1) * Dp / (l * static_cast<double>(c))) * two_omega;
  }
  out.shape_ratio = out.shape > 0 ? std::abs(out.value) / out.shape : 0.0;
  return out;
}

double smooth_step(double w) {
  if (w <= 0) return 0.0;
  if (w >= 1) return 1.0;
  // e^{-1/w} / (e^{-1/w} + e^{-1/(1-w)}) = 1 / (1 + e^{1/w - 1/(1-w)})
  return 1.0 / (1.0 + std::exp(1.0 / w - 1.0 / (1.0 - w)));
}

double bump(double t, const BumpSpec& s) {
  if (t <= s.lo || t >= s.hi) return 0.0;
  if (t < s.rise_end) return smooth_step((t - s.lo) / (s.rise_end - s.lo));
  if (t <= s.fall_start) return 1.0;
  return smooth_step((s.hi - t) / (s.hi - s.fall_start));
}

std::vector<std::complex<long double>> bump_fourier(std::span<const double> nu, const BumpSpec& spec) {
  double nu_max = 0;
  for (double v : nu) nu_max = std::max(nu_max, std::fabs(v));
  const long double width = spec.hi - spec.lo;
  const auto n = static_cast<std::int64_t>(std::ceil(width * (2 * nu_max + 4096)));
  const long double step = width / n;
  std::vector<long double> vals(n + 1);
  for (std::int64_t j = 0; j <= n; ++j) vals[j] = bump(static_cast<double>(spec.lo + j * step), spec);
  std::vector<std::complex<long double>> out;
  out.reserve(nu.size());
  constexpr std::int64_t kResync = 1024;
  for (double v : nu) {
    const auto at = [&](std::int64_t j) {
      const long double ang = kTwoPi * v * (spec.lo + j * step);
      return std::complex<long double>(std::cos(ang), std::sin(ang));
    };
    const std::complex<long double> rot(std::cos(kTwoPi * v * step), std::sin(kTwoPi * v * step));
    std::complex<long double> acc = 0, z = 0;
    for (std::int64_t j = 0; j <= n; ++j) {
      z = j % kResync == 0 ? at(j) : z * rot;
      acc += vals[j] * z;
    }
    out.push_back(acc * step);
  }
  return out;
}

PoissonReport poisson_check(double M, std::uint64_t q, std::int64_t a, double H, const BumpSpec& spec) {
  if (!(M >= 1.0)) throw DomainError("M must be >= 1");
  if (q == 0) throw DomainError("q must be positive");
  if (!(H >= 0.0)) throw DomainError("H must be nonnegative");
  PoissonReport rep{};
  const std::uint64_t ar = mod_reduce(a, q);
  long double lhs = 0;
  const auto m_lo = static_cast<std::uint64_t>(std::floor(spec.lo * M));
  const auto m_hi = static_cast<std::uint64_t>(std::ceil(spec.hi * M));
  std::uint64_t m = m_lo + (ar + q - m_lo % q) % q;
  for (; m <= m_hi; m += q) lhs += bump(static_cast<double>(m) / M, spec);
  rep.lhs = static_cast<double>(lhs);

  rep.H = static_cast<std::int64_t>(std::floor(H));
  std::vector<double> nu;
  for (std::int64_t h = 0; h <= rep.H; ++h) nu.push_back(M * static_cast<double>(h) / q);
  const auto fh = bump_fourier(nu, spec);
  // Refinement check on the most oscillatory term.
  {
    // A larger companion frequency forces a finer grid.
    const double probe[] = {nu.back(), nu.back() + 0.5 * (nu.back() + 2048)};
    const auto fine = bump_fourier(probe, spec);
    const long double diff = std::abs(fine[0] - fh.back());
    if (!(diff <= 1e-12L * (spec.hi - spec.lo))) {
      throw AccuracyError("bump transform not converged: refinement changes it by " +
                          std::to_string(static_cast<double>(diff)));
    }
  }
  std::complex<long double> rhs = 0;
  for (std::int64_t h = -rep.H; h <= rep.H; ++h) {
    const auto& v = fh[static_cast<std::size_t>(h < 0 ? -h : h)];
    const std::complex<long double> fhat = static_cast<long double>(M) * (h < 0 ? std::conj(v) : v);
    rhs += fhat * e_rational(-static_cast<std::int64_t>(ar) * h, q);
  }
  rhs /= static_cast<long double>(q);
  rep.rhs = {static_cast<double>(rhs.real()), static_cast<double>(rhs.imag())};
  rep.abs_err = static_cast<double>(std::abs(rhs - lhs));
  return rep;
}

}  // namespace friablelab
