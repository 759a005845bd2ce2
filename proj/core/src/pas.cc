#include "primeshape/pas.h"

#include <algorithm>
#include <ostream>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "primeshape/error.h"

namespace primeshape {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_pas_shape(const CodeSpec& code, const Constellation& cqam) {
  if (code.n() % 2 != 0) throw InvalidArgument("PAS needs an even code length");
  if (2 * code.k() < code.n()) throw InvalidArgument("PAS needs Rc = k/n >= 1/2");
  const std::size_t p = code.field().value();
  if (!cqam.shells() || cqam.shells()->points_per_shell != p || cqam.size() != p * p) {
    throw InvalidArgument("PAS needs a p^2-CQAM over the code's field");
  }
}

PmfComparison compare(std::vector<std::size_t> counts, std::vector<double> expected) {
  PmfComparison c;
  c.expected = std::move(expected);
  for (std::size_t v : counts) c.samples += v;
  const auto n = static_cast<double>(c.samples);
  c.empirical.resize(counts.size());
  std::size_t cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    c.empirical[i] = n > 0 ? static_cast<double>(counts[i]) / n : 0.0;
    c.max_abs_deviation = std::max(c.max_abs_deviation, std::abs(c.empirical[i] - c.expected[i]));
    const double e = n * c.expected[i];
    if (e > 0.0) {
      const double d = static_cast<double>(counts[i]) - e;
      c.chi_square += d * d / e;
      ++cells;
    }
  }
  c.degrees_of_freedom = cells > 0 ? cells - 1 : 0;
  if (c.degrees_of_freedom > 0) {
    boost::math::chi_squared dist(static_cast<double>(c.degrees_of_freedom));
    c.chi_square_q99 = boost::math::quantile(dist, 0.99);
  }
  return c;
}

}  // namespace

CodeSpec::CodeSpec(Prime field, std::size_t n, std::size_t k, std::vector<std::uint32_t> parity)
    : field_(field), n_(n), k_(k), parity_(std::move(parity)) {
  if (k == 0 || k > n) throw InvalidArgument("code needs 0 < k <= n");
  if (parity_.size() != k * (n - k)) throw InvalidArgument("parity matrix must be k x (n-k)");
  for (std::uint32_t v : parity_) {
    if (v >= field.value()) throw InvalidArgument("parity entry outside F_p");
  }
}

CodeSpec CodeSpec::random_dense(Prime field, std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n) throw InvalidArgument("code needs 0 < k <= n");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, field.value() - 1);
  std::vector<std::uint32_t> parity(k * (n - k));
  for (auto& v : parity) v = dist(rng);
  return CodeSpec(field, n, k, std::move(parity));
}

CodeSpec CodeSpec::single_tap(Prime field, std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw InvalidArgument("code needs 0 < k <= n");
  const std::size_t r = n - k;
  std::vector<std::uint32_t> parity(k * r, 0);
  for (std::size_t col = 0; col < r; ++col) parity[(col % k) * r + col] = 1;
  return CodeSpec(field, n, k, std::move(parity));
}

std::size_t CodeSpec::column_weight(std::size_t col) const {
  std::size_t w = 0;
  for (std::size_t row = 0; row < k_; ++row) w += parity_entry(row, col) != 0;
  return w;
}

bool CodeSpec::is_dense() const {
  const std::size_t need = (k_ + 1) / 2;
  for (std::size_t col = 0; col < n_ - k_; ++col) {
    if (column_weight(col) < need) return false;
  }
  return true;
}

std::vector<std::uint32_t> CodeSpec::generator() const {
  std::vector<std::uint32_t> g(k_ * n_, 0);
  for (std::size_t row = 0; row < k_; ++row) {
    g[row * n_ + row] = 1;
    for (std::size_t col = 0; col < n_ - k_; ++col) {
      g[row * n_ + k_ + col] = parity_entry(row, col);
    }
  }
  return g;
}

std::vector<std::uint32_t> encode(const CodeSpec& code, std::span<const std::uint32_t> info) {
  if (info.size() != code.k()) {
    throw InvalidArgument("encoder needs " + std::to_string(code.k()) + " information symbols");
  }
  const std::uint32_t p = code.field().value();
  const std::size_t r = code.n() - code.k();
  std::vector<std::uint32_t> out(info.begin(), info.end());
  out.resize(code.n(), 0);
  std::vector<std::uint64_t> acc(r, 0);
  for (std::size_t row = 0; row < code.k(); ++row) {
    const std::uint32_t s = info[row];
    if (s >= p) throw InvalidArgument("information symbol outside F_p");
    if (s == 0) continue;
    for (std::size_t col = 0; col < r; ++col) {
      acc[col] = (acc[col] + static_cast<std::uint64_t>(s) * code.parity_entry(row, col)) % p;
    }
  }
  for (std::size_t col = 0; col < r; ++col) out[code.k() + col] = static_cast<std::uint32_t>(acc[col]);
  return out;
}

PasFrame map_frame(const CodeSpec& code, const Constellation& cqam,
                   std::span<const std::uint32_t> dm_out, std::span<const std::uint32_t> src) {
  check_pas_shape(code, cqam);
  const std::size_t half = code.n() / 2;
  if (dm_out.size() != half) {
    throw InvalidArgument("DM output must hold n/2 = " + std::to_string(half) + " symbols");
  }
  if (src.size() != code.k() - half) {
    throw InvalidArgument("source must hold k - n/2 = " + std::to_string(code.k() - half) +
                          " symbols");
  }
  std::vector<std::uint32_t> info(dm_out.begin(), dm_out.end());
  info.insert(info.end(), src.begin(), src.end());
  const std::vector<std::uint32_t> codeword = encode(code, info);

  PasFrame f;
  f.shaped_symbols.assign(dm_out.begin(), dm_out.end());
  f.uniform_symbols.assign(src.begin(), src.end());
  f.parity_symbols.assign(codeword.begin() + static_cast<std::ptrdiff_t>(code.k()), codeword.end());
  const std::uint32_t p = code.field().value();
  f.point_indices.resize(half);
  // Codeword positions k .. n-1 are parity; the phase stream is
  // codeword[half .. n-1] = [src | parity].
  for (std::size_t t = 0; t < half; ++t) {
    f.point_indices[t] = f.shaped_symbols[t] * p + codeword[half + t];
  }
  return f;
}

ShapedSymbolSource::ShapedSymbolSource(CompositionPlan plan, Prime p, std::uint64_t seed)
    : plan_(std::move(plan)), p_(p), input_length_(ccdm_input_length(plan_, p)), rng_(seed) {}

std::vector<std::uint32_t> ShapedSymbolSource::take(std::size_t count) {
  std::vector<std::uint32_t> out;
  out.reserve(count);
  std::uniform_int_distribution<std::uint32_t> dist(0, p_.value() - 1);
  while (out.size() < count) {
    if (pos_ == buffer_.size()) {
      std::vector<std::uint32_t> input(input_length_);
      for (auto& u : input) u = dist(rng_);
      buffer_ = ccdm_encode(plan_, p_, input);
      pos_ = 0;
      ++blocks_;
    }
    const std::size_t n = std::min(count - out.size(), buffer_.size() - pos_);
    out.insert(out.end(), buffer_.begin() + static_cast<std::ptrdiff_t>(pos_),
               buffer_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
  }
  return out;
}

std::vector<PasFrame> generate_frames(const CodeSpec& code, const Constellation& cqam,
                                      const PasRunConfig& config) {
  check_pas_shape(code, cqam);
  const std::size_t p = code.field().value();
  std::vector<double> shell_prior(p, 0.0);
  for (std::size_t i = 0; i < cqam.size(); ++i) shell_prior[cqam.shell_of(i)] += cqam.priors()[i];

  ShapedSymbolSource dm(make_composition(shell_prior, config.dm_block_length), code.field(),
                        config.seed);
  std::mt19937_64 source_rng(splitmix64(config.seed));
  std::uniform_int_distribution<std::uint32_t> dist(0, code.field().value() - 1);

  const std::size_t half = code.n() / 2;
  std::vector<PasFrame> frames;
  frames.reserve(config.frames);
  std::vector<std::uint32_t> src(code.k() - half);
  for (std::size_t f = 0; f < config.frames; ++f) {
    const std::vector<std::uint32_t> shaped = dm.take(half);
    for (auto& u : src) u = dist(source_rng);
    frames.push_back(map_frame(code, cqam, shaped, src));
  }
  return frames;
}

EmpiricalReport empirical_distributions(std::span<const PasFrame> frames,
                                        const Constellation& cqam, const CodeSpec& code) {
  if (frames.size() < kMinReportFrames) {
    throw InvalidArgument("empirical report needs at least " + std::to_string(kMinReportFrames) +
                          " frames, got " + std::to_string(frames.size()));
  }
  check_pas_shape(code, cqam);
  const std::size_t p = code.field().value();

  std::vector<std::size_t> parity_counts(p, 0);
  std::vector<std::size_t> shell_counts(p, 0);
  std::vector<std::size_t> point_counts(p * p, 0);
  for (const auto& f : frames) {
    for (std::uint32_t s : f.parity_symbols) ++parity_counts[s];
    for (std::uint32_t s : f.shaped_symbols) ++shell_counts[s];
    for (std::uint32_t x : f.point_indices) ++point_counts[x];
  }

  std::vector<double> shell_prior(p, 0.0);
  for (std::size_t i = 0; i < cqam.size(); ++i) shell_prior[cqam.shell_of(i)] += cqam.priors()[i];

  EmpiricalReport r;
  r.frames = frames.size();
  r.code_is_dense = code.is_dense();
  r.parity = compare(std::move(parity_counts), std::vector<double>(p, 1.0 / static_cast<double>(p)));
  r.parity_uniformity_gap = r.parity.max_abs_deviation;
  r.shells = compare(std::move(shell_counts), std::move(shell_prior));
  r.points = compare(std::move(point_counts), cqam.priors());
  return r;
}

void write_frames_csv(std::ostream& os, std::span<const PasFrame> frames) {
  os << "frame,position,shell_symbol,phase_symbol,phase_source,point_index\n";
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const PasFrame& fr = frames[f];
    for (std::size_t t = 0; t < fr.point_indices.size(); ++t) {
      const bool from_source = t < fr.uniform_symbols.size();
      const std::uint32_t phase =
          from_source ? fr.uniform_symbols[t] : fr.parity_symbols[t - fr.uniform_symbols.size()];
      os << f << ',' << t << ',' << fr.shaped_symbols[t] << ',' << phase << ','
         << (from_source ? "source" : "parity") << ',' << fr.point_indices[t] << '\n';
    }
  }
}

}  // namespace primeshape
