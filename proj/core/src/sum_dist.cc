#include "primeshape/sum_dist.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "primeshape/error.h"

namespace primeshape {

namespace {

constexpr double kImagTolerance = 1e-10;

Prime check_factors(std::span<const SymbolDistribution> factors) {
  if (factors.empty()) {
    throw InvalidArgument("sum distribution needs at least one factor");
  }
  const Prime f = factors.front().field();
  for (const auto& q : factors) {
    if (q.field() != f) throw InvalidArgument("factor field mismatch");
  }
  return f;
}

// Clamp tiny negative rounding residue and renormalize.
std::vector<double> clean(std::vector<double> probs) {
  double total = 0.0;
  for (double& v : probs) {
    if (v < 0.0) v = 0.0;
    total += v;
  }
  for (double& v : probs) v /= total;
  return probs;
}

}  // namespace

SymbolDistribution::SymbolDistribution(Prime field, std::vector<double> probs)
    : field_(field), probs_(std::move(probs)) {
  if (probs_.size() != field.value()) {
    throw InvalidArgument("distribution over F_" + std::to_string(field.value()) +
                          " needs " + std::to_string(field.value()) + " entries");
  }
  double total = 0.0;
  for (double v : probs_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("probabilities must be finite and nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidArgument("probabilities sum to " + std::to_string(total));
  }
}

SymbolDistribution SymbolDistribution::uniform(Prime field) {
  return SymbolDistribution(
      field, std::vector<double>(field.value(), 1.0 / field.value()));
}

SymbolDistribution SymbolDistribution::point_mass(Prime field, std::uint32_t symbol) {
  std::vector<double> probs(field.value(), 0.0);
  probs.at(symbol) = 1.0;
  return SymbolDistribution(field, std::move(probs));
}

SymbolDistribution sum_distribution_dft(std::span<const SymbolDistribution> factors) {
  const Prime field = check_factors(factors);
  const std::size_t p = field.value();

  // roots[j] = w^j, indexed mod p so every power is taken from one table.
  std::vector<std::complex<double>> roots(p);
  for (std::size_t j = 0; j < p; ++j) {
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                   static_cast<double>(p));
  }

  // spectrum[i] = prod_l Q_l(w^i); spectrum[0] = 1 for valid PMFs.
  std::vector<std::complex<double>> spectrum(p, {1.0, 0.0});
  for (std::size_t i = 1; i < p; ++i) {
    for (const auto& q : factors) {
      std::complex<double> s{0.0, 0.0};
      for (std::size_t b = 0; b < p; ++b) s += q[b] * roots[(i * b) % p];
      spectrum[i] *= s;
    }
  }

  std::vector<double> out(p);
  for (std::size_t k = 0; k < p; ++k) {
    std::complex<double> acc{1.0, 0.0};
    for (std::size_t i = 1; i < p; ++i) {
      acc += spectrum[i] * roots[(p - (i * k) % p) % p];
    }
    acc /= static_cast<double>(p);
    if (std::abs(acc.imag()) > kImagTolerance) {
      throw NonConvergence("inverse DFT left imaginary residue " +
                           std::to_string(acc.imag()));
    }
    out[k] = acc.real();
  }
  return SymbolDistribution(field, clean(std::move(out)));
}

SymbolDistribution sum_distribution_convolve(std::span<const SymbolDistribution> factors) {
  const Prime field = check_factors(factors);
  const std::size_t p = field.value();
  std::vector<double> acc = factors.front().probs();
  std::vector<double> next(p);
  for (std::size_t l = 1; l < factors.size(); ++l) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t a = 0; a < p; ++a) {
      if (acc[a] == 0.0) continue;
      for (std::size_t b = 0; b < p; ++b) {
        next[(a + b) % p] += acc[a] * factors[l][b];
      }
    }
    acc.swap(next);
  }
  return SymbolDistribution(field, clean(std::move(acc)));
}

double uniformity_gap(const SymbolDistribution& d) {
  const double u = 1.0 / static_cast<double>(d.size());
  double gap = 0.0;
  for (double v : d.probs()) gap = std::max(gap, std::abs(v - u));
  return gap;
}

}  // namespace primeshape
