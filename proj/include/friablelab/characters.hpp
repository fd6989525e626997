#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "friablelab/arith.hpp"

namespace friablelab {

inline constexpr std::uint64_t kCharacterModulusCap = 1'000'000;
inline constexpr std::uint64_t kKloostermanModulusCap = 100'000'000;

using cplx = std::complex<double>;

// e(num/den) = exp(2 pi i num/den), with the fraction reduced mod 1 in
// integers before any floating-point work.
std::complex<long double> e_rational(std::int64_t num, std::uint64_t den);

// One cyclic factor of (Z/qZ)^*. Odd p^e contributes one factor generated by
// a primitive root; 2^e contributes <-1> (e >= 2) and <5> (e >= 3).
struct CyclicComponent {
  std::uint64_t prime;
  unsigned exponent;
  std::uint64_t modulus;  // p^e
  std::uint64_t generator;
  std::uint64_t order;
  bool five_part;  // the <5> factor of a 2-power
};

class DirichletCharacter;

class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
 public:
  // Use character_group(); the constructor is public only for make_shared.
  explicit CharacterGroup(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t size() const { return size_; }
  // L = lcm of the component orders; every value is e(t/L) for an integer t.
  std::uint64_t phase_denominator() const { return L_; }
  std::span<const CyclicComponent> components() const { return comps_; }

  // Discrete log of k on component j; k must be coprime to q.
  std::uint64_t log(std::size_t j, std::uint64_t k) const;

  // t with chi(k) = e(t/L), or -1 when gcd(k, q) > 1.
  std::int64_t phase(std::span<const std::uint64_t> exps, std::int64_t k) const;
  cplx root(std::uint64_t t) const { return roots_[t]; }

  // Conductor of the character with the given exponents.
  std::uint64_t conductor(std::span<const std::uint64_t> exps) const;

  // Characters are numbered by mixed radix over the component orders;
  // index 0 is the trivial character.
  DirichletCharacter character(std::uint64_t index) const;
  DirichletCharacter from_exponents(std::vector<std::uint64_t> exps) const;
  std::vector<DirichletCharacter> characters() const;

 private:
  std::uint64_t q_;
  std::uint64_t size_ = 1;
  std::uint64_t L_ = 1;
  std::vector<CyclicComponent> comps_;
  std::vector<std::uint64_t> weight_;            // L / order
  std::vector<std::vector<std::uint32_t>> logs_;  // per component, indexed by k mod p^e
  std::vector<cplx> roots_;
};

// Cached per modulus; thread-safe. Throws CapacityError beyond 10^6.
std::shared_ptr<const CharacterGroup> character_group(std::uint64_t q);
std::shared_ptr<const CharacterGroup> character_group(std::uint64_t q, const FactorTable& ft);

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint64_t> exps);

  std::uint64_t modulus() const { return group_->modulus(); }
  const CharacterGroup& group() const { return *group_; }
  std::span<const std::uint64_t> exponents() const { return exps_; }
  std::uint64_t conductor() const { return conductor_; }
  bool primitive() const { return conductor_ == modulus(); }
  bool is_trivial() const;
  std::uint64_t index() const;

  std::int64_t phase(std::int64_t k) const { return group_->phase(exps_, k); }
  cplx operator()(std::int64_t k) const;

  DirichletCharacter conj() const;
  // Both factors must share the modulus.
  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exps_ == b.exps_;
  }

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint64_t> exps_;
  std::uint64_t conductor_;
};

std::uint64_t conductor(const DirichletCharacter& chi);

// omega(k; r) = sum of chi(k) over primitive chi with cond(chi) | r and
// cond(chi) <= cutoff. For (k, r) = 1 this equals the sum over characters
// mod r of conductor <= cutoff. Throws DomainError when gcd(k, r) > 1 or
// cutoff < 1.
cplx omega_eps(std::int64_t k, std::uint64_t r, double cutoff);

// omega(k; r) for every k in [0, r); zero where gcd(k, r) > 1.
std::vector<cplx> omega_table(std::uint64_t r, double cutoff);

struct GaussPairSum {
  cplx value;
  std::uint64_t conductor;  // cond(chi1 conj(chi2))
  double bound;             // cond^{1/2} sum_{d | (h, r)} d
  double bound_ratio;
};

// sum_{0<b<r, (b,r)=1} chi1(b) conj(chi2(b)) e(-bh/r) for characters mod r.
GaussPairSum gauss_pair_sum(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                            std::int64_t h, std::uint64_t r);

struct CharSumReport {
  double sum;
  std::uint64_t psi;
  double normalized;  // sum / Psi(x, y)
  std::uint64_t characters;  // number of (q, chi) pairs that entered
};

// sum_{q<=Q} 1/phi(q) sum_{chi mod q, 1 < cond(chi) <= cond_cutoff}
//   |sum_{n<=x, P+(n)<=y} chi(n)|.
CharSumReport char_sum_smooth(double x, double y, double Q, double cond_cutoff,
                              const FactorTable& ft, unsigned threads = 1);

struct LargeSieveReport {
  double lhs;
  double rhs;
  bool ok;
};

// seq[i] = a_{M+1+i}. lhs = sum_{q<=Q} q/phi(q) sum_{chi primitive mod q}
// |sum a_n chi(n)|^2, rhs = (N + Q^2 - 1) sum |a_n|^2.
LargeSieveReport large_sieve_check(std::uint64_t Q, std::uint64_t M, std::span<const cplx> seq);

struct KloostermanResult {
  double value;
  double imag;
  double weil_bound;  // tau(c) (a,b,c)^{1/2} c^{1/2}
  double weil_ratio;
};

// S(a,b;c) = sum_{x mod c, (x,c)=1} e((a x + b xbar)/c). Throws AccuracyError
// if the imaginary part exceeds 1e-9 phi(c).
KloostermanResult kloosterman(std::int64_t a, std::int64_t b, std::uint64_t c);

struct IncompleteVariant {
  enum class Kind { plain, phi_weighted } kind = Kind::plain;
  std::uint64_t k = 1;  // phi_weighted: (d, ck) = 1
  std::uint64_t l = 1;  // phi_weighted: d = 0 mod l
};

struct IncompleteKloosterman {
  cplx value;
  std::uint64_t terms;
  double shape;  // the bound's shape without its implicit constant
  double shape_ratio;
};

// plain: sum_{d<=D, (d,c)=1} e(b dbar/c), shape
//   log(D+1) ((b,c) tau(c))^{1/2} c^{1/2} + (b,c) D / c.
// phi_weighted: sum_{d<=D, (d,ck)=1, l|d} d/phi(d) e(b dbar/c), shape
//   (log(D+1)^2 ((b,c) tau(c))^{1/2} c^{1/2} + (b,c) log(l+1) D / (l c)) 2^omega(k).
IncompleteKloosterman incomplete_kloosterman(std::int64_t b, std::uint64_t c, double D,
                                             const IncompleteVariant& variant,
                                             const FactorTable& ft);

// Phi_0: 1 on [rise_end, fall_start], 0 outside (lo, hi), joined by the
// smooth step s(w) = e^{-1/w} / (e^{-1/w} + e^{-1/(1-w)}).
struct BumpSpec {
  double lo = 0.5;
  double rise_end = 1.0;
  double fall_start = 2.0;
  double hi = 3.0;
};

double smooth_step(double w);
double bump(double t, const BumpSpec& spec = {});

// int Phi_0(s) e(nu s) ds for each nu, by the trapezoidal rule over the whole
// support with 1/step >= 2 max|nu| + 4096. Phi_0 is smooth with compact
// support, so the rule converges faster than any power of the step.
std::vector<std::complex<long double>> bump_fourier(std::span<const double> nu,
                                                    const BumpSpec& spec = {});

struct PoissonReport {
  double lhs;
  cplx rhs;
  double abs_err;
  std::int64_t H;  // largest |h| used
};

// lhs = sum_{m = a mod q} f(m), rhs = (1/q) sum_{|h|<=H} fhat(h/q) e(-ah/q)
// with f(t) = Phi_0(t/M) and fhat(xi) = int f(t) e(xi t) dt.
PoissonReport poisson_check(double M, std::uint64_t q, std::int64_t a, double H,
                            const BumpSpec& spec = {});

}  // namespace friablelab
