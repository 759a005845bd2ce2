#ifndef PRIMESHAPE_PAS_H_
#define PRIMESHAPE_PAS_H_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "primeshape/ccdm.h"
#include "primeshape/constellation.h"
#include "primeshape/field.h"
#include "primeshape/rational.h"

namespace primeshape {

// Systematic [n, k] linear code over F_p with generator [I_k | P].
class CodeSpec {
 public:
  // parity is k x (n - k), row-major.
  CodeSpec(Prime field, std::size_t n, std::size_t k, std::vector<std::uint32_t> parity);

  // P with i.i.d. uniform entries on F_p from a seeded generator.
  static CodeSpec random_dense(Prime field, std::size_t n, std::size_t k, std::uint64_t seed);
  // P with a single 1 per column, at row (column mod k).
  static CodeSpec single_tap(Prime field, std::size_t n, std::size_t k);

  Prime field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  Rational rate() const { return {static_cast<std::int64_t>(k_), static_cast<std::int64_t>(n_)}; }

  std::uint32_t parity_entry(std::size_t row, std::size_t col) const {
    return parity_[row * (n_ - k_) + col];
  }
  std::size_t column_weight(std::size_t col) const;
  // Every column of P has at least ceil(k/2) nonzero entries.
  bool is_dense() const;

  // Full k x n generator matrix, row-major.
  std::vector<std::uint32_t> generator() const;

 private:
  Prime field_;
  std::size_t n_;
  std::size_t k_;
  std::vector<std::uint32_t> parity_;
};

// [info | info * P] over F_p.
std::vector<std::uint32_t> encode(const CodeSpec& code, std::span<const std::uint32_t> info);

// One PAS frame: n/2 shell symbols from the DM, k - n/2 uniform source
// symbols, n - k parity symbols, and the n/2 resulting point indices
// shell * p + phase.
struct PasFrame {
  std::vector<std::uint32_t> shaped_symbols;
  std::vector<std::uint32_t> uniform_symbols;
  std::vector<std::uint32_t> parity_symbols;
  std::vector<std::uint32_t> point_indices;
};

// Shells come from dm_out, phases from [src | parity].
PasFrame map_frame(const CodeSpec& code, const Constellation& cqam,
                   std::span<const std::uint32_t> dm_out, std::span<const std::uint32_t> src);

// Buffers CCDM blocks so shaped symbols can be drawn in any length. Uniform
// DM input comes from its own seeded generator.
class ShapedSymbolSource {
 public:
  ShapedSymbolSource(CompositionPlan plan, Prime p, std::uint64_t seed);

  std::vector<std::uint32_t> take(std::size_t count);
  std::size_t blocks_encoded() const { return blocks_; }
  const CompositionPlan& plan() const { return plan_; }

 private:
  CompositionPlan plan_;
  Prime p_;
  std::size_t input_length_;
  std::mt19937_64 rng_;
  std::vector<std::uint32_t> buffer_;
  std::size_t pos_ = 0;
  std::size_t blocks_ = 0;
};

struct PasRunConfig {
  std::size_t frames = 10000;
  std::uint64_t seed = 1;
  // DM block length; decoupled from the code length.
  std::size_t dm_block_length = 1024;
};

// Deterministic frame generation: the DM draws from seed, the uniform source
// from a second stream derived from seed. Shell prior from cqam.priors().
std::vector<PasFrame> generate_frames(const CodeSpec& code, const Constellation& cqam,
                                      const PasRunConfig& config);

struct PmfComparison {
  std::vector<double> empirical;
  std::vector<double> expected;
  double max_abs_deviation = 0.0;
  double chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
  double chi_square_q99 = 0.0;
  std::size_t samples = 0;
};

struct EmpiricalReport {
  std::size_t frames = 0;
  PmfComparison parity;  // against uniform
  double parity_uniformity_gap = 0.0;
  PmfComparison shells;  // against the shell marginal of the priors
  PmfComparison points;  // against the per-point priors
  bool code_is_dense = false;
};

inline constexpr std::size_t kMinReportFrames = 10000;

// Requires at least kMinReportFrames frames.
EmpiricalReport empirical_distributions(std::span<const PasFrame> frames,
                                        const Constellation& cqam, const CodeSpec& code);

// One CSV row per point: frame,position,shell_symbol,phase_symbol,phase_source,point_index.
void write_frames_csv(std::ostream& os, std::span<const PasFrame> frames);

}  // namespace primeshape

#endif  // PRIMESHAPE_PAS_H_
