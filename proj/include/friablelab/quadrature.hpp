#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace friablelab {

// Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration on P_n.
class GaussLegendre {
 public:
  explicit GaussLegendre(int n) : nodes_(n), weights_(n) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    for (int i = 0; i < n; ++i) {
      long double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      long double dp = 0;
      for (int it = 0; it < 100; ++it) {
        long double p0 = 1, p1 = 0;
        for (int j = 1; j <= n; ++j) {
          const long double p2 = p1;
          p1 = p0;
          p0 = ((2 * j - 1) * z * p1 - (j - 1) * p2) / j;
        }
        dp = n * (z * p0 - p1) / (z * z - 1);
        const long double dz = p0 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-19L) break;
      }
      nodes_[i] = static_cast<double>(z);
      weights_[i] = static_cast<double>(2 / ((1 - z * z) * dp * dp));
    }
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  double node(int i) const { return nodes_[i]; }
  double weight(int i) const { return weights_[i]; }

  template <class F>
  auto integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(a)) acc{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
    return acc * half;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace friablelab
