#include "primeshape/quadrature.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "primeshape/error.h"

namespace primeshape {

namespace {

// Orthonormal Hermite values h_n(z) and h_{n-1}(z).
void hermite_pair(int n, double z, double& hn, double& hn1) {
  double p1 = 1.0 / std::pow(std::numbers::pi, 0.25);
  double p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
  }
  hn = p1;
  hn1 = p2;
}

// Number of nodes below x: Sturm count on the Jacobi matrix with zero
// diagonal and off-diagonal sqrt(j/2).
int count_below(int n, double x) {
  int count = 0;
  double q = -x;
  if (q == 0.0) q = -std::numeric_limits<double>::min();
  if (q < 0.0) ++count;
  for (int j = 1; j < n; ++j) {
    q = -x - (0.5 * j) / q;
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

// Each nonnegative root is bracketed by Sturm bisection, then polished with
// one Newton step; weights are 2 / (h_n'(x))^2.
GaussHermite gauss_hermite(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Hermite needs at least one node");
  GaussHermite rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);

  const double bound = 2.0 * std::sqrt(0.5 * std::max(1, n - 1)) + 1.0;
  for (int r = n / 2; r < n; ++r) {
    double z = 0.0;
    if (!(n % 2 == 1 && r == n / 2)) {
      double lo = 0.0;
      double hi = bound;
      for (int it = 0; it < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (count_below(n, mid) > r ? hi : lo) = mid;
      }
      z = 0.5 * (lo + hi);
      double hn = 0.0;
      double hn1 = 0.0;
      hermite_pair(n, z, hn, hn1);
      const double step = hn / (std::sqrt(2.0 * n) * hn1);
      if (std::abs(step) < hi - lo + 1e-12) z -= step;
    }
    double hn = 0.0;
    double hn1 = 0.0;
    hermite_pair(n, z, hn, hn1);
    const double pp = std::sqrt(2.0 * n) * hn1;
    const double w = 2.0 / (pp * pp);
    if (!std::isfinite(w)) throw NonConvergence("Gauss-Hermite weight is not finite");
    rule.nodes[static_cast<std::size_t>(r)] = z;
    rule.nodes[static_cast<std::size_t>(n - 1 - r)] = -z;
    rule.weights[static_cast<std::size_t>(r)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - r)] = w;
  }
  return rule;
}

}  // namespace primeshape
