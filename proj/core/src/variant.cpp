#include "mfgprep/variant.hpp"

#include <array>

#include "mfgprep/error.hpp"

namespace mfgprep {
namespace {

constexpr std::array kMaps{MapImpl::std_hash, MapImpl::flat_probing,
                           MapImpl::flat_probing_with_size_hint};
constexpr std::array kSets{SetImpl::hash_set, SetImpl::vector_set, SetImpl::bit_set};

}  // namespace

std::string_view to_string(MapImpl impl) noexcept {
  switch (impl) {
    case MapImpl::std_hash: return "std_hash";
    case MapImpl::flat_probing: return "flat_probing";
    case MapImpl::flat_probing_with_size_hint: return "flat_probing_with_size_hint";
  }
  return "?";
}

std::string_view to_string(SetImpl impl) noexcept {
  switch (impl) {
    case SetImpl::hash_set: return "hash_set";
    case SetImpl::vector_set: return "vector_set";
    case SetImpl::bit_set: return "bit_set";
  }
  return "?";
}

std::string SamplerVariant::descriptor() const {
  std::string out(to_string(map));
  out += '/';
  out += to_string(set);
  out += fused ? "/fused" : "/twopass";
  return out;
}

SamplerVariant parse_variant(std::string_view descriptor) {
  for (const auto& v : list_variants()) {
    if (v.descriptor() == descriptor) return v;
  }
  throw InvalidArgument("unknown sampler variant \"" + std::string(descriptor) +
                        "\"; expected <map>/<set>/<fused|twopass>");
}

std::vector<SamplerVariant> list_variants() {
  std::vector<SamplerVariant> out;
  out.reserve(kMaps.size() * kSets.size() * 2);
  for (MapImpl m : kMaps) {
    for (SetImpl s : kSets) {
      out.push_back({m, s, true});
      out.push_back({m, s, false});
    }
  }
  return out;
}

}  // namespace mfgprep
