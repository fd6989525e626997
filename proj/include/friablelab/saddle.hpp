#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "friablelab/arith.hpp"

namespace friablelab {

struct SaddleResult {
  double alpha;
  double residual;  // sum_{p<=y} log p / (p^alpha - 1) - log x
  int iterations;
  double bracket_lo;
  double bracket_hi;
};

// sum_{p<=y} log p / (p^s - 1), primes taken in decreasing order.
double saddle_lhs(double s, std::span<const std::uint32_t> primes);

// Root of sum_{p<=y} log p / (p^alpha - 1) = log x: bisection on [1e-6, 10]
// followed by safeguarded Newton steps. The root may exceed 1 when y is
// close to x. Throws AccuracyError when the bracket does not straddle log x
// or the residual misses 1e-9 log x, CapacityError when y is beyond the table.
SaddleResult saddle_alpha(double x, double y, const FactorTable& ft);

// prod_{p<=y} (1 - p^{-s})^{-1}, and its logarithm.
double zeta_y(double s, double y, const FactorTable& ft);
double log_zeta_y(double s, double y, const FactorTable& ft);

// sum_{p<=y} p^s (log p)^2 / (p^s - 1)^2.
double phi2(double s, double y, const FactorTable& ft);

struct HtEstimate {
  double alpha;
  double psi_tilde;      // x^alpha zeta(alpha,y) / (alpha sqrt(2 pi phi2))
  double log_psi_tilde;
  std::optional<std::uint64_t> psi;  // exact count when x is inside the table
  std::optional<double> ratio;       // psi_tilde / psi
};

HtEstimate ht_estimate(double x, double y, const FactorTable& ft);

// prod_{p | m} (1 - p^{-alpha}).
double g_m_alpha(std::uint64_t m, double alpha, const FactorTable& ft);

struct Lemma1DivisorRow {
  std::uint64_t d;
  std::uint64_t psi_xd;  // Psi(x/d, y)
  double ratio;          // Psi(x/d, y) d^alpha / Psi(x, y)
};

struct Lemma1ModulusRow {
  std::uint64_t m;
  std::uint64_t psi_m;  // Psi_m(x, y)
  double g_m;
  double ratio;  // Psi_m / (g_m(alpha) Psi)
};

struct Lemma1Report {
  double x;
  double y;
  double alpha;
  std::uint64_t psi;
  std::vector<Lemma1DivisorRow> divisors;
  std::vector<Lemma1ModulusRow> moduli;
};

Lemma1Report lemma1_report(double x, double y, std::span<const std::uint64_t> d_list,
                           std::span<const std::uint64_t> m_list, const FactorTable& ft);

}  // namespace friablelab
