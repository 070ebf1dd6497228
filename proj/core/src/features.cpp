#include "mfgprep/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "mfgprep/error.hpp"
#include "mfgprep/rng.hpp"

namespace mfgprep {

std::uint16_t float_to_half(float value) noexcept {
  std::uint32_t x = std::bit_cast<std::uint32_t>(value);
  const auto sign = static_cast<std::uint16_t>((x >> 16) & 0x8000u);
  std::uint32_t abs = x & 0x7FFFFFFFu;

  if (abs >= 0x7F800000u) {  // inf / nan
    return sign | (abs > 0x7F800000u ? 0x7E00u : 0x7C00u);
  }
  if (abs >= 0x477FF000u) return sign | 0x7C00u;  // rounds past 65504
  if (abs < 0x38800000u) {
    // Half subnormal (or the smallest normal after rounding): value * 2^24,
    // rounded to nearest even. The scaling is exact in f32.
    const float scaled = std::bit_cast<float>(abs) * 16777216.0f;
    return sign | static_cast<std::uint16_t>(std::nearbyint(scaled));
  }
  abs += 0x0FFFu + ((abs >> 13) & 1u);
  return sign | static_cast<std::uint16_t>((abs - 0x38000000u) >> 13);
}

float half_to_float(std::uint16_t bits) noexcept {
  const std::uint32_t sign = static_cast<std::uint32_t>(bits & 0x8000u) << 16;
  const std::uint32_t exp = (bits >> 10) & 0x1Fu;
  const std::uint32_t mant = bits & 0x3FFu;
  if (exp == 0) {
    const float mag = static_cast<float>(mant) * 0x1.0p-24f;
    return sign ? -mag : mag;
  }
  if (exp == 31) return std::bit_cast<float>(sign | 0x7F800000u | (mant << 13));
  return std::bit_cast<float>(sign | ((exp + 112u) << 23) | (mant << 13));
}

const char* to_string(Dtype dtype) noexcept { return dtype == Dtype::f16 ? "f16" : "f32"; }

FeatureMatrix FeatureMatrix::from_f32(std::size_t rows, std::size_t cols, std::vector<float> data) {
  if (data.size() != rows * cols) {
    throw InvalidArgument("feature data has " + std::to_string(data.size()) + " values, expected " +
                          std::to_string(rows * cols));
  }
  FeatureMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dtype_ = Dtype::f32;
  m.f32_ = std::move(data);
  return m;
}

FeatureMatrix FeatureMatrix::from_f16_bits(std::size_t rows, std::size_t cols,
                                           std::vector<std::uint16_t> bits) {
  if (bits.size() != rows * cols) {
    throw InvalidArgument("feature data has " + std::to_string(bits.size()) + " values, expected " +
                          std::to_string(rows * cols));
  }
  FeatureMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dtype_ = Dtype::f16;
  m.f16_ = std::move(bits);
  return m;
}

FeatureMatrix FeatureMatrix::to_f16(std::size_t rows, std::size_t cols,
                                    std::span<const float> data) {
  std::vector<std::uint16_t> bits(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) bits[i] = float_to_half(data[i]);
  return from_f16_bits(rows, cols, std::move(bits));
}

void FeatureMatrix::copy_row(std::size_t row, std::span<float> out) const noexcept {
  const std::size_t base = row * cols_;
  if (dtype_ == Dtype::f32) {
    std::copy_n(f32_.data() + base, cols_, out.data());
  } else {
    const std::uint16_t* src = f16_.data() + base;
    for (std::size_t c = 0; c < cols_; ++c) out[c] = half_to_float(src[c]);
  }
}

LabelVector::LabelVector(std::vector<std::uint32_t> values, std::uint32_t num_classes)
    : values_(std::move(values)), num_classes_(num_classes) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= num_classes_) {
      throw InvalidArgument("label " + std::to_string(values_[i]) + " at row " +
                            std::to_string(i) + " is not below num_classes " +
                            std::to_string(num_classes_));
    }
  }
}

FeatureMatrix generate_features(std::size_t n, std::size_t f, Dtype dtype, std::uint64_t seed) {
  std::vector<float> values(n * f);
  for (std::size_t r = 0; r < n; ++r) {
    CounterRng rng(derive_key(seed, 0x46454154u, r));
    for (std::size_t c = 0; c < f; ++c) {
      values[r * f + c] = static_cast<float>(rng.uniform_real() * 2.0 - 1.0);
    }
  }
  if (dtype == Dtype::f16) return FeatureMatrix::to_f16(n, f, values);
  return FeatureMatrix::from_f32(n, f, std::move(values));
}

LabelVector generate_labels(std::size_t n, std::uint32_t num_classes, std::uint64_t seed) {
  if (num_classes == 0 && n > 0) throw InvalidArgument("num_classes must be positive");
  std::vector<std::uint32_t> values(n);
  CounterRng rng(derive_key(seed, 0x4C41424Cu));
  for (auto& v : values) v = static_cast<std::uint32_t>(rng.uniform(num_classes));
  return LabelVector(std::move(values), num_classes);
}

}  // namespace mfgprep
