#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>

#include "mfgprep/error.hpp"
#include "mfgprep/features.hpp"
#include "mfgprep/validation/oracles.hpp"

namespace mfgprep {
namespace {

TEST(GenerateFeatures, DeterministicAndBounded) {
  const FeatureMatrix a = generate_features(3, 2, Dtype::f32, 0);
  EXPECT_EQ(a, generate_features(3, 2, Dtype::f32, 0));
  const FeatureMatrix big = generate_features(500, 16, Dtype::f32, 4);
  for (float v : big.f32_data()) {
    EXPECT_GE(v, -1.0f);
    EXPECT_LE(v, 1.0f);
  }
  EXPECT_NE(big, generate_features(500, 16, Dtype::f32, 5));
}

TEST(GenerateFeatures, EmptyMatrix) {
  const FeatureMatrix m = generate_features(0, 8, Dtype::f32, 1);
  EXPECT_EQ(m.rows(), 0u);
  EXPECT_EQ(m.storage_bytes(), 0u);
}

TEST(GenerateFeatures, HalfStorageRoundsEachSourceValue) {
  const FeatureMatrix f32 = generate_features(200, 12, Dtype::f32, 9);
  const FeatureMatrix f16 = generate_features(200, 12, Dtype::f16, 9);
  ASSERT_EQ(f16.dtype(), Dtype::f16);
  ASSERT_EQ(f16.f16_data().size(), f32.f32_data().size());
  for (std::size_t i = 0; i < f32.f32_data().size(); ++i) {
    EXPECT_EQ(f16.f16_data()[i], validation::reference_half(f32.f32_data()[i])) << i;
  }
}

TEST(Half, MatchesSearchOracleOnEdgeValues) {
  const float cases[] = {0.0f, -0.0f, 1.0f, -1.0f, 65504.0f, 65519.99f, 65520.0f, 1e9f,
                         5.96046448e-8f, 2.98023224e-8f, 2.98023254e-8f, 6.1035156e-5f, 6.0975552e-5f,
                         1.00048828125f, 1.00146484375f, std::numeric_limits<float>::infinity(),
                         std::numeric_limits<float>::denorm_min()};
  for (float x : cases) {
    EXPECT_EQ(float_to_half(x), validation::reference_half(x)) << x;
    EXPECT_EQ(float_to_half(-x), validation::reference_half(-x)) << -x;
  }
  EXPECT_EQ(float_to_half(1.00048828125f), 0x3C00);  // tie rounds to even
  EXPECT_EQ(float_to_half(1.00146484375f), 0x3C02);
  EXPECT_EQ(float_to_half(65520.0f), 0x7C00);
  EXPECT_TRUE(std::isnan(half_to_float(float_to_half(std::numeric_limits<float>::quiet_NaN()))));
}

TEST(Half, MatchesSearchOracleOnStridedFloats) {
  // Every 4099th bit pattern spans all exponents and both signs.
  for (std::uint64_t bits = 0; bits <= 0xFFFFFFFFull; bits += 4099) {
    const float x = std::bit_cast<float>(static_cast<std::uint32_t>(bits));
    if (std::isnan(x)) continue;
    ASSERT_EQ(float_to_half(x), validation::reference_half(x)) << std::hex << bits;
  }
}

TEST(Half, EveryHalfRoundTrips) {
  for (std::uint32_t b = 0; b < 0x10000; ++b) {
    const auto h = static_cast<std::uint16_t>(b);
    const float f = half_to_float(h);
    if (std::isnan(f)) continue;
    ASSERT_EQ(float_to_half(f), h) << std::hex << b;
  }
}

TEST(FeatureMatrix, AccessAndCopyRow) {
  const FeatureMatrix m = FeatureMatrix::from_f32(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m.at(1, 2), 6.0f);
  std::vector<float> row(3);
  m.copy_row(1, row);
  EXPECT_EQ(row, (std::vector<float>{4, 5, 6}));
  const FeatureMatrix h = FeatureMatrix::to_f16(2, 3, m.f32_data());
  EXPECT_EQ(h.storage_bytes(), 12u);
  h.copy_row(0, row);
  EXPECT_EQ(row, (std::vector<float>{1, 2, 3}));
  EXPECT_THROW(FeatureMatrix::from_f32(2, 3, {1, 2}), InvalidArgument);
}

TEST(Labels, ValidatedAndDeterministic) {
  const LabelVector y = generate_labels(100, 7, 3);
  EXPECT_EQ(y, generate_labels(100, 7, 3));
  for (auto v : y.values()) EXPECT_LT(v, 7u);
  EXPECT_THROW(LabelVector({0, 7}, 7), InvalidArgument);
}

}  // namespace
}  // namespace mfgprep
