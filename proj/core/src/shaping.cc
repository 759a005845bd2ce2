#include "primeshape/shaping.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "primeshape/error.h"

namespace primeshape {

MaxwellBoltzmann mb_prior(std::span<const double> amplitudes, double nu) {
  if (!(nu >= 0.0)) throw InvalidArgument("MB parameter nu must be >= 0");
  if (amplitudes.empty()) throw InvalidArgument("MB prior needs amplitudes");

  MaxwellBoltzmann mb;
  mb.nu = nu;
  mb.amplitudes.assign(amplitudes.begin(), amplitudes.end());
  mb.probs.resize(amplitudes.size());

  double min_sq = std::numeric_limits<double>::infinity();
  for (double a : amplitudes) min_sq = std::min(min_sq, a * a);

  double total = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const double excess = amplitudes[i] * amplitudes[i] - min_sq;
    double w;
    if (std::isinf(nu)) {
      w = excess == 0.0 ? 1.0 : 0.0;
    } else {
      // Shifting by the smallest energy keeps the largest weight at 1.
      w = std::exp(-nu * excess);
    }
    mb.probs[i] = w;
    total += w;
  }
  for (double& v : mb.probs) v /= total;
  return mb;
}

MaxwellBoltzmann mb_ask_prior(Prime p, double nu) {
  require_odd(p);
  std::vector<double> amplitudes(p.value());
  for (std::uint32_t s = 0; s < p.value(); ++s) {
    amplitudes[s] = std::abs(ask_point(p, s));
  }
  MaxwellBoltzmann mb = mb_prior(amplitudes, nu);
  // Enforce exact mirror symmetry.
  for (std::uint32_t i = 1; i <= (p.value() - 1) / 2; ++i) {
    mb.probs[p.value() - i] = mb.probs[i];
  }
  return mb;
}

double ask_energy(const MaxwellBoltzmann& prior, Prime p) {
  require_odd(p);
  if (prior.probs.size() != p.value()) {
    throw InvalidArgument("prior size does not match p");
  }
  double e = 0.0;
  for (std::uint32_t s = 0; s < p.value(); ++s) {
    const double x = ask_point(p, s);
    e += prior.probs[s] * x * x;
  }
  return e;
}

std::vector<double> cqam_prior(const MaxwellBoltzmann& shell_prior, Prime p) {
  const std::size_t q = p.value();
  if (shell_prior.probs.size() != q) {
    throw InvalidArgument("CQAM shell prior needs exactly p shells");
  }
  std::vector<double> out(q * q);
  for (std::size_t i = 0; i < q; ++i) {
    const double v = shell_prior.probs[i] / static_cast<double>(q);
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(i * q), q, v);
  }
  return out;
}

double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double v : probs) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

}  // namespace primeshape
