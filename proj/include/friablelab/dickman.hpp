#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "friablelab/arith.hpp"
#include "friablelab/errors.hpp"
#include "friablelab/quadrature.hpp"

namespace friablelab {

inline constexpr double kRhoResidualTolerance = 1e-9;

// Grid solution of the Dickman equation u rho'(u) = -rho(u-1), rho = 1 on
// [0, 1], rho = 0 for u < 0. Nodes sit at multiples of step = 1/K so that
// every unit interval [k, k+1] is a union of whole cells; interpolation
// stencils never straddle an integer, where rho loses smoothness.
class DickmanTable {
 public:
  DickmanTable(double u_max, int cells_per_unit, int interpolation_order);

  double u_max() const { return u_max_; }
  double step() const { return 1.0 / cells_per_unit_; }
  int cells_per_unit() const { return cells_per_unit_; }
  int interpolation_order() const { return order_; }
  // values()[i] = rho(i * step).
  std::span<const long double> values() const { return values_; }

  // rho(u) with the table's interpolation order. Throws RangeError beyond u_max.
  double operator()(double u) const { return static_cast<double>(eval(u, order_)); }
  long double eval(double u, int order) const;

  // max |u rho(u) - int_{u-1}^{u} rho(t) dt| over grid points in [1, u_limit].
  double max_integral_residual(double u_limit) const;
  double max_integral_residual() const { return max_integral_residual(u_max_); }

 private:
  long double interpolate(long double pos, int order) const;
  long double cell_integral(std::int64_t j) const;
  std::vector<long double> cell_integrals() const;

  double u_max_;
  int cells_per_unit_;
  int order_;
  std::vector<long double> values_;
};

// Marches the derivative form cell by cell with an 8-point Gauss-Legendre
// rule, the delayed term interpolated at degree 7 inside its unit interval,
// and resets rho(k) at each integer k from k rho(k) = int_{k-1}^{k} rho so
// that values keep relative accuracy far into the tail.
// Requires u_max <= 200, step <= 1/64 with 1/step an integer. Throws
// AccuracyError when the integral-equation residual exceeds 1e-9.
DickmanTable build_rho_table(double u_max = 20.0, double step = 1.0 / 256,
                             int interpolation_order = 3);

double rho(double u, const DickmanTable& tab);

// H(u) = exp(u / log(u+1)^2); +infinity at u = 0.
double h_growth(double u);

// L_eps(y) = exp((log y)^{3/5 - eps}).
double l_eps(double y, double eps);

struct StieltjesOptions {
  int gauss_nodes = 6;
  // Equal sub-pieces per smooth piece; doubling it halves the quadrature step.
  int subdivisions = 1;
};

// x * integral_{0-}^{inf} rho(u - v) dF(y^v) for a measure F on [1, inf)
// given as point masses jump(n) at the integers plus a density density(n, t)
// on [n, n+1). After t = y^v:
//   x * [ sum_{n <= x} rho(u - log n / log y) jump(n)
//         + int_1^x rho(u - log t / log y) density(floor t, t) dt ].
// Each [n, n+1] is split where u - log t/log y crosses an integer. For
// integer x the n = x mass is taken with rho(0) = 1 (right limit).
template <class Jump, class Density>
double rho_stieltjes(double x, double y, const DickmanTable& tab, Jump&& jump, Density&& density,
                     const StieltjesOptions& opt = {}) {
  if (!(y >= 2.0 && x >= y)) throw DomainError("Stieltjes integral needs 2 <= y <= x");
  if (opt.gauss_nodes < 1 || opt.subdivisions < 1) throw DomainError("bad quadrature options");
  const double lx = std::log(x), ly = std::log(y);
  const double u = lx / ly;
  if (u > tab.u_max()) {
    throw RangeError("u = " + std::to_string(u) + " beyond Dickman table u_max = " +
                     std::to_string(tab.u_max()));
  }
  const GaussLegendre gl(opt.gauss_nodes);
  const auto arg = [&](double t) { return std::max(0.0, (lx - std::log(t)) / ly); };

  std::vector<double> kinks;  // t with u - log t/log y integer, ascending
  for (int k = static_cast<int>(std::floor(u)); k >= 1; --k) {
    kinks.push_back(std::exp(lx - k * ly));
  }

  const auto X = static_cast<std::uint64_t>(std::floor(x));
  long double jumps = 0, cont = 0;
  std::size_t next_kink = 0;
  for (std::uint64_t n = 1; n <= X; ++n) {
    const double tn = static_cast<double>(n);
    jumps += static_cast<long double>(tab(arg(tn))) * jump(n);
    const double b = std::min(tn + 1.0, x);
    if (b <= tn) continue;
    double lo = tn;
    auto piece = [&](double a, double c) {
      const double w = (c - a) / opt.subdivisions;
      for (int s = 0; s < opt.subdivisions; ++s) {
        const double pa = a + s * w, pb = s + 1 == opt.subdivisions ? c : pa + w;
        cont += gl.integrate(
            [&](double t) {
              return static_cast<long double>(tab(arg(t))) * density(n, t);
            },
            pa, pb);
      }
    };
    while (next_kink < kinks.size() && kinks[next_kink] <= tn) ++next_kink;
    while (next_kink < kinks.size() && kinks[next_kink] < b) {
      piece(lo, kinks[next_kink]);
      lo = kinks[next_kink++];
    }
    piece(lo, b);
  }
  return static_cast<double>(static_cast<long double>(x) * (jumps + cont));
}

// Lambda(x, y) = x int rho(u - v) d(floor(y^v) / y^v).
double lambda_smooth(double x, double y, const DickmanTable& tab, const StieltjesOptions& opt = {});

// R_m(t) = #{n <= t : (n, m) = 1} / t - phi(m)/m, exact count by
// inclusion-exclusion over the squarefree divisors of m.
double r_m(double t, std::uint64_t m, const FactorTable& ft);
std::uint64_t coprime_count(double t, std::uint64_t m, const FactorTable& ft);

// Lambda_m(x, y) = x int rho(u - v) dR_m(y^v).
double lambda_m(double x, double y, std::uint64_t m, const DickmanTable& tab,
                const FactorTable& ft, const StieltjesOptions& opt = {});

// Psi(x, y) / (x rho(u)).
double hildebrand_ratio(double x, double y, const DickmanTable& tab, const FactorTable& ft);

}  // namespace friablelab
