#ifndef PRIMESHAPE_SHAPING_H_
#define PRIMESHAPE_SHAPING_H_

#include <span>
#include <vector>

#include "primeshape/field.h"

namespace primeshape {

// Discrete Maxwell-Boltzmann prior: probs[i] proportional to
// exp(-nu * amplitudes[i]^2), normalized.
struct MaxwellBoltzmann {
  double nu = 0.0;
  std::vector<double> amplitudes;
  std::vector<double> probs;
};

// General MB prior over arbitrary amplitude classes. nu may be +infinity, in
// which case the mass is split evenly over the smallest amplitudes.
MaxwellBoltzmann mb_prior(std::span<const double> amplitudes, double nu);

// MB prior over p-ASK indexed by field symbol: probs[s] prop. to
// exp(-nu * ask_point(s)^2), so probs[i] == probs[p - i].
MaxwellBoltzmann mb_ask_prior(Prime p, double nu);

// Average energy sum_s probs[s] * ask_point(s)^2 of the p-ASK set.
double ask_energy(const MaxwellBoltzmann& prior, Prime p);

// Per-point prior of a p^2-CQAM: point i*p + l carries shell_prior.probs[i]/p.
std::vector<double> cqam_prior(const MaxwellBoltzmann& shell_prior, Prime p);

// Shannon entropy in bits.
double entropy_bits(std::span<const double> probs);

}  // namespace primeshape

#endif  // PRIMESHAPE_SHAPING_H_
