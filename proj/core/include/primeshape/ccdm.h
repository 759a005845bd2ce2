#ifndef PRIMESHAPE_CCDM_H_
#define PRIMESHAPE_CCDM_H_

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "primeshape/field.h"

namespace primeshape {

using BigInt = boost::multiprecision::cpp_int;

// Target type of a constant-composition block: counts[a] occurrences of
// symbol a in every output block of length block_length.
struct CompositionPlan {
  std::size_t block_length = 0;
  std::vector<std::size_t> counts;
};

// Largest-remainder rounding of N * probs[a] so the counts sum to N exactly.
// Ties in the remainder go to the lower symbol index.
CompositionPlan make_composition(std::span<const double> probs, std::size_t block_length);

// multinomial(N; counts), the number of sequences in the type class.
BigInt type_class_size(const CompositionPlan& plan);

// floor(log_p(type_class_size)): uniform p-ary symbols consumed per block.
std::size_t ccdm_input_length(const CompositionPlan& plan, Prime p);

// Lexicographic rank of a sequence within its type class, in
// [0, type_class_size). This is exact arithmetic coding of the type class.
BigInt ccdm_rank(const CompositionPlan& plan, std::span<const std::uint32_t> sequence);

// Inverse of ccdm_rank.
std::vector<std::uint32_t> ccdm_unrank(const CompositionPlan& plan, const BigInt& index);

// Maps exactly ccdm_input_length(plan, p) uniform symbols (most significant
// first) to one block of plan.block_length symbols with composition counts.
std::vector<std::uint32_t> ccdm_encode(const CompositionPlan& plan, Prime p,
                                       std::span<const std::uint32_t> uniform_input);

// Inverse of ccdm_encode. Throws if the composition differs from the plan or
// the block was not produced by the encoder.
std::vector<std::uint32_t> ccdm_decode(const CompositionPlan& plan, Prime p,
                                       std::span<const std::uint32_t> shaped);

}  // namespace primeshape

#endif  // PRIMESHAPE_CCDM_H_
