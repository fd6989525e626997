#pragma once

#include <cstdint>
#include <vector>

#include "friablelab/arith.hpp"
#include "friablelab/dickman.hpp"

namespace friablelab {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr std::uint64_t kDefaultPrimeCutoff = 1'000'000;

// T(x, y) = sum over y-smooth 1 < n <= x of tau(n - 1), by direct scan.
std::uint64_t titchmarsh_sum(double x, double y, const FactorTable& ft, unsigned threads = 1);

// Same sum through tau(m) = #{r | m : r <= z} + #{r | m : r > z}, z = sqrt(x):
// the first part counts smooth n = 1 (mod r) for r <= z, the second counts
// pairs n = 1 + j r with r > z.
std::uint64_t titchmarsh_sum_split(double x, double y, const FactorTable& ft);

// A truncated Euler product or prime sum. The omitted primes change the
// logarithm of a product (or the value of a sum) by at most tail_bar.
struct BarredValue {
  double value;
  double tail_bar;
};

// C(alpha) = prod_p (1 - (p^{-alpha} - p^{-1}) / (p - 1)) over p <= p_cutoff.
BarredValue c_alpha(double alpha, std::uint64_t p_cutoff, const FactorTable& ft);

struct FtConstants {
  BarredValue A0;  // prod_p (1 + 1/(p(p-1)))
  BarredValue A1;  // gamma - sum_p log p / (1 + p(p-1))
  std::uint64_t cutoff;
};

FtConstants ft_constants(std::uint64_t p_cutoff, const FactorTable& ft);

struct GhValues {
  double g;  // prod_{p|n} (1 - p / (1 + p(p-1)))
  double h;  // sum_{p|n} p^2 log p / ((p-1)(1 + p(p-1)))
};

GhValues gh_values(std::uint64_t n, const FactorTable& ft);

struct MValues {
  double M0;
  double M1;
};

// M0(t) = (A0/t) sum_{n<=t} g(n);
// M1(t) = 2 A1 M0(t) + (2 A0/t) sum_{n<=t} g(n) h(n) - (1/t) int_1^t M0(v) dv,
// the integral taken exactly piece by piece (M0 = c/v between integers).
MValues m_functions(double t, const FactorTable& ft, const FtConstants& consts);

struct TIntegrals {
  double T0;
  double T1;
};

// T_i(x, y) = x int rho(u - v) dM_i(y^v), each dM_i split into its jumps at
// the integers and its density between them.
TIntegrals t_integrals(double x, double y, const DickmanTable& tab, const FactorTable& ft,
                       const FtConstants& consts, const StieltjesOptions& opt = {});

struct TitchmarshReport {
  double x;
  double y;
  double u;
  double alpha;
  std::uint64_t t_exact;
  std::uint64_t psi;
  BarredValue c_alpha;
  double main_18;  // C(alpha) Psi(x, y) log x
  double ratio_18;
  double t0;
  double t1;
  double main_43;  // T0 log x + T1
  double ratio_43;
};

TitchmarshReport titchmarsh_report(double x, double y, const DickmanTable& tab,
                                   const FactorTable& ft, const FtConstants& consts,
                                   unsigned threads = 1);

}  // namespace friablelab
