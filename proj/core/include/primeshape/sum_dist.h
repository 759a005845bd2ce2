#ifndef PRIMESHAPE_SUM_DIST_H_
#define PRIMESHAPE_SUM_DIST_H_

#include <span>
#include <vector>

#include "primeshape/field.h"

namespace primeshape {

// Probability mass function over F_p. Entries are nonnegative and sum to one
// within kSumTolerance.
class SymbolDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  SymbolDistribution(Prime field, std::vector<double> probs);

  static SymbolDistribution uniform(Prime field);
  static SymbolDistribution point_mass(Prime field, std::uint32_t symbol);

  Prime field() const { return field_; }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::size_t size() const { return probs_.size(); }

 private:
  Prime field_;
  std::vector<double> probs_;
};

// Pr{s_1 + ... + s_m = k} for independent s_l via the inverse DFT over the
// p-th roots of unity: (1/p) sum_i w^{-ik} prod_l (sum_b q_l(b) w^{ib}).
SymbolDistribution sum_distribution_dft(std::span<const SymbolDistribution> factors);

// Same quantity by repeated cyclic convolution mod p.
SymbolDistribution sum_distribution_convolve(std::span<const SymbolDistribution> factors);

// max_k |d[k] - 1/p|
double uniformity_gap(const SymbolDistribution& d);

}  // namespace primeshape

#endif  // PRIMESHAPE_SUM_DIST_H_
