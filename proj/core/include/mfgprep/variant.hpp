#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mfgprep {

/// Global-to-local lookup structure backing an IdMap.
enum class MapImpl { std_hash, flat_probing, flat_probing_with_size_hint };
/// Set used to reject already-drawn edge slots while sampling.
enum class SetImpl { hash_set, vector_set, bit_set };

/// One point of the sampler design space. Every variant produces the same
/// MFG; they differ only in speed.
struct SamplerVariant {
  MapImpl map = MapImpl::flat_probing;
  SetImpl set = SetImpl::vector_set;
  bool fused = true;

  /// "<map>/<set>/<fused|twopass>"
  std::string descriptor() const;

  friend bool operator==(const SamplerVariant&, const SamplerVariant&) = default;
};

std::string_view to_string(MapImpl impl) noexcept;
std::string_view to_string(SetImpl impl) noexcept;

/// Parses a descriptor; throws InvalidArgument on anything else.
SamplerVariant parse_variant(std::string_view descriptor);

/// All 18 variants in a fixed order: map-major, then set, then fused before
/// two-pass.
std::vector<SamplerVariant> list_variants();

/// Standard-library containers without fusion; the reference point of sweeps.
inline constexpr SamplerVariant kBaselineVariant{MapImpl::std_hash, SetImpl::hash_set, false};
/// Flat map, array set, fused: the fast configuration.
inline constexpr SamplerVariant kFastVariant{MapImpl::flat_probing, SetImpl::vector_set, true};

}  // namespace mfgprep
