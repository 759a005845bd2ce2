#include "primeshape/ccdm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "primeshape/error.h"

namespace primeshape {

namespace {

void check_plan(const CompositionPlan& plan) {
  if (plan.counts.empty()) throw InvalidArgument("composition plan has no symbols");
  const std::size_t total =
      std::accumulate(plan.counts.begin(), plan.counts.end(), std::size_t{0});
  if (total != plan.block_length) {
    throw InvalidArgument("composition counts sum to " + std::to_string(total) +
                          ", expected " + std::to_string(plan.block_length));
  }
}

void check_alphabet(const CompositionPlan& plan, Prime p) {
  if (plan.counts.size() != p.value()) {
    throw InvalidArgument("composition plan alphabet does not match p");
  }
}

BigInt power(std::uint32_t base, std::size_t exponent) {
  BigInt r = 1;
  for (std::size_t i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace

CompositionPlan make_composition(std::span<const double> probs, std::size_t block_length) {
  if (probs.empty()) throw InvalidArgument("empty distribution");
  double total = 0.0;
  for (double v : probs) {
    if (!(v >= 0.0)) throw InvalidArgument("negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("probabilities must sum to 1");

  CompositionPlan plan;
  plan.block_length = block_length;
  plan.counts.resize(probs.size());
  std::vector<double> remainder(probs.size());
  std::size_t assigned = 0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    const double target = probs[a] / total * static_cast<double>(block_length);
    const double fl = std::floor(target);
    plan.counts[a] = static_cast<std::size_t>(fl);
    remainder[a] = target - fl;
    assigned += plan.counts[a];
  }
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return remainder[x] > remainder[y];
  });
  for (std::size_t i = 0; assigned < block_length; ++i, ++assigned) {
    ++plan.counts[order[i % order.size()]];
  }
  return plan;
}

BigInt type_class_size(const CompositionPlan& plan) {
  check_plan(plan);
  BigInt m = 1;
  std::size_t placed = 0;
  for (std::size_t c : plan.counts) {
    for (std::size_t j = 1; j <= c; ++j) {
      ++placed;
      m *= placed;
      m /= j;
    }
  }
  return m;
}

std::size_t ccdm_input_length(const CompositionPlan& plan, Prime p) {
  const BigInt m = type_class_size(plan);
  std::size_t k = 0;
  BigInt pk = p.value();
  while (pk <= m) {
    ++k;
    pk *= p.value();
  }
  return k;
}

BigInt ccdm_rank(const CompositionPlan& plan, std::span<const std::uint32_t> sequence) {
  BigInt m = type_class_size(plan);
  if (sequence.size() != plan.block_length) {
    throw InvalidArgument("sequence length does not match block length");
  }
  std::vector<std::size_t> counts = plan.counts;
  for (std::uint32_t s : sequence) {
    if (s >= counts.size()) throw InvalidArgument("symbol outside plan alphabet");
  }
  {
    std::vector<std::size_t> seen(counts.size(), 0);
    for (std::uint32_t s : sequence) ++seen[s];
    if (seen != counts) throw InvalidArgument("sequence composition does not match plan");
  }

  BigInt rank = 0;
  std::size_t remaining = plan.block_length;
  for (std::uint32_t s : sequence) {
    for (std::uint32_t a = 0; a < s; ++a) {
      if (counts[a] == 0) continue;
      rank += m * counts[a] / remaining;
    }
    m = m * counts[s] / remaining;
    --counts[s];
    --remaining;
  }
  return rank;
}

std::vector<std::uint32_t> ccdm_unrank(const CompositionPlan& plan, const BigInt& index) {
  BigInt m = type_class_size(plan);
  if (index < 0 || index >= m) throw InvalidArgument("index outside type class");

  std::vector<std::size_t> counts = plan.counts;
  std::vector<std::uint32_t> out;
  out.reserve(plan.block_length);
  BigInt rest = index;
  std::size_t remaining = plan.block_length;
  while (remaining > 0) {
    for (std::uint32_t a = 0; a < counts.size(); ++a) {
      if (counts[a] == 0) continue;
      BigInt sub = m * counts[a] / remaining;
      if (rest < sub) {
        out.push_back(a);
        m = std::move(sub);
        --counts[a];
        --remaining;
        break;
      }
      rest -= sub;
    }
  }
  return out;
}

std::vector<std::uint32_t> ccdm_encode(const CompositionPlan& plan, Prime p,
                                       std::span<const std::uint32_t> uniform_input) {
  check_alphabet(plan, p);
  const std::size_t k = ccdm_input_length(plan, p);
  if (uniform_input.size() != k) {
    throw InvalidArgument("CCDM block consumes " + std::to_string(k) +
                          " input symbols, got " + std::to_string(uniform_input.size()));
  }
  BigInt index = 0;
  for (std::uint32_t u : uniform_input) {
    if (u >= p.value()) throw InvalidArgument("input symbol out of range");
    index *= p.value();
    index += u;
  }
  return ccdm_unrank(plan, index);
}

std::vector<std::uint32_t> ccdm_decode(const CompositionPlan& plan, Prime p,
                                       std::span<const std::uint32_t> shaped) {
  check_alphabet(plan, p);
  const std::size_t k = ccdm_input_length(plan, p);
  BigInt index = ccdm_rank(plan, shaped);
  if (index >= power(p.value(), k)) {
    throw InvalidArgument("sequence is in the type class but not in the codebook");
  }
  std::vector<std::uint32_t> digits(k);
  for (std::size_t i = k; i-- > 0;) {
    digits[i] = static_cast<std::uint32_t>(index % p.value());
    index /= p.value();
  }
  return digits;
}

}  // namespace primeshape
