#include "primeshape/pas.h"

#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "primeshape/error.h"
#include "primeshape/shaping.h"

namespace primeshape {
namespace {

Constellation shaped_cqam(std::uint32_t pv, double nu) {
  const auto c = build_cqam(Prime(pv));
  return c.with_priors(cqam_prior(mb_prior(c.shells()->radii, nu), Prime(pv)));
}

std::vector<std::uint32_t> matmul(const std::vector<std::uint32_t>& g, std::size_t k, std::size_t n,
                                  const std::vector<std::uint32_t>& u, std::uint32_t p) {
  std::vector<std::uint32_t> out(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < k; ++i) acc += static_cast<std::uint64_t>(u[i]) * g[i * n + j];
    out[j] = static_cast<std::uint32_t>(acc % p);
  }
  return out;
}

TEST(CodeSpecTest, ToyEncoding) {
  const CodeSpec code(Prime(7), 4, 2, {3, 5, 2, 6});
  const std::vector<std::uint32_t> info{4, 1};
  const auto cw = encode(code, info);
  EXPECT_EQ(cw, (std::vector<std::uint32_t>{4, 1, 0, 5}));
  EXPECT_EQ(cw, matmul(code.generator(), 2, 4, info, 7));
  EXPECT_EQ(code.rate(), (Rational{2, 4}));
}

TEST(CodeSpecTest, Linearity) {
  const auto code = CodeSpec::random_dense(Prime(11), 12, 7, 5);
  const std::vector<std::uint32_t> a{1, 2, 3, 4, 5, 6, 7};
  const std::vector<std::uint32_t> b{10, 0, 9, 3, 3, 1, 8};
  std::vector<std::uint32_t> s(7);
  for (std::size_t i = 0; i < 7; ++i) s[i] = (a[i] + b[i]) % 11;
  const auto ca = encode(code, a);
  const auto cb = encode(code, b);
  const auto cs = encode(code, s);
  for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(cs[j], (ca[j] + cb[j]) % 11);
  EXPECT_EQ(cs, matmul(code.generator(), 7, 12, s, 11));
}

TEST(CodeSpecTest, Validation) {
  EXPECT_THROW(CodeSpec(Prime(7), 4, 2, {3, 5, 2}), InvalidArgument);
  EXPECT_THROW(CodeSpec(Prime(7), 4, 2, {3, 5, 2, 7}), InvalidArgument);
  EXPECT_THROW(CodeSpec(Prime(7), 4, 5, {}), InvalidArgument);
  const CodeSpec code(Prime(7), 4, 2, {3, 5, 2, 6});
  EXPECT_THROW(encode(code, std::vector<std::uint32_t>{1}), InvalidArgument);
  EXPECT_THROW(encode(code, std::vector<std::uint32_t>{1, 7}), InvalidArgument);
}

TEST(CodeSpecTest, Density) {
  const auto sparse = CodeSpec::single_tap(Prime(7), 20, 10);
  EXPECT_FALSE(sparse.is_dense());
  for (std::size_t c = 0; c < 10; ++c) {
    EXPECT_EQ(sparse.column_weight(c), 1u);
    EXPECT_EQ(sparse.parity_entry(c % 10, c), 1u);
  }
  EXPECT_TRUE(CodeSpec::random_dense(Prime(7), 100, 50, 1).is_dense());
  EXPECT_EQ(CodeSpec::random_dense(Prime(7), 20, 10, 3).generator(),
            CodeSpec::random_dense(Prime(7), 20, 10, 3).generator());
}

TEST(MapFrameTest, RateTwoThirds) {
  const auto cqam = build_cqam(Prime(7));
  const auto code = CodeSpec::random_dense(Prime(7), 6, 4, 2);
  const std::vector<std::uint32_t> dm{1, 6, 3};
  const std::vector<std::uint32_t> src{5};
  const auto f = map_frame(code, cqam, dm, src);
  const auto cw = encode(code, std::vector<std::uint32_t>{1, 6, 3, 5});
  ASSERT_EQ(f.point_indices.size(), 3u);
  EXPECT_EQ(f.point_indices[0], 1u * 7 + 5);
  EXPECT_EQ(f.point_indices[1], 6u * 7 + cw[4]);
  EXPECT_EQ(f.point_indices[2], 3u * 7 + cw[5]);
  EXPECT_EQ(f.parity_symbols, (std::vector<std::uint32_t>{cw[4], cw[5]}));
}

TEST(MapFrameTest, RateHalf) {
  const auto cqam = build_cqam(Prime(5));
  const CodeSpec code(Prime(5), 2, 1, {3});
  const auto f = map_frame(code, cqam, std::vector<std::uint32_t>{4}, {});
  EXPECT_EQ(f.point_indices, (std::vector<std::uint32_t>{4u * 5 + 2}));
  const auto zero = map_frame(code, cqam, std::vector<std::uint32_t>{0}, {});
  EXPECT_EQ(zero.point_indices, (std::vector<std::uint32_t>{0u}));
}

TEST(MapFrameTest, Injective) {
  const auto cqam = build_cqam(Prime(5));
  const auto code = CodeSpec::random_dense(Prime(5), 4, 3, 9);
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b)
      for (std::uint32_t c = 0; c < 5; ++c)
        seen.insert(map_frame(code, cqam, std::vector<std::uint32_t>{a, b},
                              std::vector<std::uint32_t>{c})
                        .point_indices);
  EXPECT_EQ(seen.size(), 125u);
}

TEST(MapFrameTest, Preconditions) {
  const auto cqam = build_cqam(Prime(7));
  EXPECT_THROW(map_frame(CodeSpec(Prime(7), 3, 2, {1, 1}), cqam, std::vector<std::uint32_t>{1}, {}),
               InvalidArgument);
  EXPECT_THROW(map_frame(CodeSpec::random_dense(Prime(7), 6, 2, 1), cqam,
                         std::vector<std::uint32_t>{1, 2, 3}, {}),
               InvalidArgument);
  EXPECT_THROW(map_frame(CodeSpec::random_dense(Prime(5), 6, 4, 1), cqam,
                         std::vector<std::uint32_t>{1, 2, 3}, std::vector<std::uint32_t>{1}),
               InvalidArgument);
}

TEST(ShapedSourceTest, CompositionPerBlock) {
  const auto plan = make_composition(mb_ask_prior(Prime(7), 0.2).probs, 64);
  ShapedSymbolSource src(plan, Prime(7), 4);
  const auto a = src.take(30);
  const auto b = src.take(98);
  EXPECT_EQ(src.blocks_encoded(), 2u);
  std::vector<std::uint32_t> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::vector<std::size_t> c(7, 0);
  for (std::size_t i = 0; i < 64; ++i) ++c[all[i]];
  EXPECT_EQ(c, plan.counts);
}

TEST(EmpiricalTest, DenseVersusSparse) {
  const auto cqam = shaped_cqam(7, 0.3);
  PasRunConfig cfg;
  cfg.frames = kMinReportFrames;
  cfg.seed = 17;

  const auto dense = CodeSpec::random_dense(Prime(7), 20, 10, 23);
  ASSERT_TRUE(dense.is_dense());
  const auto df = generate_frames(dense, cqam, cfg);
  const auto dr = empirical_distributions(df, cqam, dense);
  EXPECT_TRUE(dr.code_is_dense);
  EXPECT_LT(dr.parity_uniformity_gap, 0.01);
  EXPECT_LT(dr.parity.chi_square, dr.parity.chi_square_q99);
  EXPECT_LT(dr.shells.chi_square, dr.shells.chi_square_q99);
  EXPECT_EQ(dr.parity.samples, 10u * kMinReportFrames);
  EXPECT_EQ(dr.parity.degrees_of_freedom, 6u);

  const auto sparse = CodeSpec::single_tap(Prime(7), 20, 10);
  const auto sf = generate_frames(sparse, cqam, cfg);
  const auto sr = empirical_distributions(sf, cqam, sparse);
  EXPECT_FALSE(sr.code_is_dense);
  EXPECT_GT(sr.parity_uniformity_gap, 0.05);
  EXPECT_GT(sr.parity.chi_square, sr.parity.chi_square_q99);
}

TEST(EmpiricalTest, DeterministicAndMinimumFrames) {
  const auto cqam = shaped_cqam(5, 0.2);
  const auto code = CodeSpec::random_dense(Prime(5), 8, 5, 1);
  PasRunConfig cfg;
  cfg.frames = 50;
  cfg.dm_block_length = 64;
  const auto a = generate_frames(code, cqam, cfg);
  const auto b = generate_frames(code, cqam, cfg);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].point_indices, b[i].point_indices);
  EXPECT_THROW(empirical_distributions(a, cqam, code), InvalidArgument);

  std::ostringstream os;
  write_frames_csv(os, std::span(a).first(1));
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "frame,position,shell_symbol,phase_symbol,phase_source,point_index");
  EXPECT_NE(os.str().find(",source,"), std::string::npos);
  EXPECT_NE(os.str().find(",parity,"), std::string::npos);
}

}  // namespace
}  // namespace primeshape
