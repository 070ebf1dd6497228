#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfgprep/types.hpp"

namespace mfgprep {

/// IEEE 754 binary16 encode, round-to-nearest-even.
std::uint16_t float_to_half(float value) noexcept;
/// IEEE 754 binary16 decode; exact.
float half_to_float(std::uint16_t bits) noexcept;

/// On-disk dtype tags of the feature file format.
enum class Dtype : std::uint8_t { f16 = 1, f32 = 2 };

const char* to_string(Dtype dtype) noexcept;

/// Row-major node feature matrix stored as f16 or f32; reads return f32.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  static FeatureMatrix from_f32(std::size_t rows, std::size_t cols, std::vector<float> data);
  static FeatureMatrix from_f16_bits(std::size_t rows, std::size_t cols,
                                     std::vector<std::uint16_t> bits);
  /// Encodes f32 values to half precision storage.
  static FeatureMatrix to_f16(std::size_t rows, std::size_t cols, std::span<const float> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Dtype dtype() const noexcept { return dtype_; }
  std::size_t element_bytes() const noexcept { return dtype_ == Dtype::f16 ? 2 : 4; }
  std::size_t storage_bytes() const noexcept { return rows_ * cols_ * element_bytes(); }

  float at(std::size_t row, std::size_t col) const noexcept {
    const std::size_t i = row * cols_ + col;
    return dtype_ == Dtype::f16 ? half_to_float(f16_[i]) : f32_[i];
  }

  /// Writes row `row` as f32 into out[0, cols).
  void copy_row(std::size_t row, std::span<float> out) const noexcept;

  std::span<const float> f32_data() const noexcept { return f32_; }
  std::span<const std::uint16_t> f16_data() const noexcept { return f16_; }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Dtype dtype_ = Dtype::f32;
  std::vector<float> f32_;
  std::vector<std::uint16_t> f16_;
};

/// Integer class labels, one per node.
class LabelVector {
 public:
  LabelVector() = default;
  LabelVector(std::vector<std::uint32_t> values, std::uint32_t num_classes);

  std::size_t size() const noexcept { return values_.size(); }
  std::uint32_t num_classes() const noexcept { return num_classes_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<std::uint32_t> values_;
  std::uint32_t num_classes_ = 0;
};

/// Uniform [-1, 1] features, deterministic in seed. f16 storage holds the
/// rounded f32 draw.
FeatureMatrix generate_features(std::size_t n, std::size_t f, Dtype dtype, std::uint64_t seed);
LabelVector generate_labels(std::size_t n, std::uint32_t num_classes, std::uint64_t seed);

}  // namespace mfgprep
