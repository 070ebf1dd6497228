#include "mfgprep/id_map.hpp"

#include <bit>

namespace mfgprep {

FlatIdTable::FlatIdTable(std::size_t expected_size) {
  rehash(16);
  if (expected_size > 0) reserve(expected_size);
}

std::optional<LocalId> FlatIdTable::find(NodeId key) const noexcept {
  std::size_t i = bucket(key);
  while (true) {
    const Slot& s = slots_[i];
    if (s.value == kEmpty) return std::nullopt;
    if (s.key == key) return s.value;
    i = (i + 1) & mask_;
  }
}

void FlatIdTable::reserve(std::size_t expected_size) {
  const std::size_t needed = std::bit_ceil((expected_size * 8 + 4) / 5 + 1);
  if (needed > slots_.size()) rehash(needed);
}

void FlatIdTable::grow() { rehash(slots_.size() * 2); }

void FlatIdTable::rehash(std::size_t new_capacity) {
  std::vector<Slot> old = std::move(slots_);
  slots_.assign(new_capacity, Slot{0, kEmpty});
  mask_ = new_capacity - 1;
  shift_ = 64 - static_cast<unsigned>(std::countr_zero(new_capacity));
  for (const Slot& s : old) {
    if (s.value == kEmpty) continue;
    std::size_t i = bucket(s.key);
    while (slots_[i].value != kEmpty) i = (i + 1) & mask_;
    slots_[i] = s;
  }
}

IdMap::IdMap(MapImpl impl, std::size_t size_hint) : impl_(impl) {
  switch (impl) {
    case MapImpl::std_hash:
      table_.emplace<StdTable>();
      break;
    case MapImpl::flat_probing:
      table_.emplace<FlatIdTable>();
      break;
    case MapImpl::flat_probing_with_size_hint:
      table_.emplace<FlatIdTable>(size_hint);
      globals_.reserve(size_hint);
      break;
  }
}

std::optional<LocalId> IdMap::find(NodeId global) const {
  return std::visit(
      [&](const auto& table) -> std::optional<LocalId> {
        if constexpr (std::is_same_v<std::decay_t<decltype(table)>, StdTable>) {
          const auto it = table.find(global);
          if (it == table.end()) return std::nullopt;
          return it->second;
        } else {
          return table.find(global);
        }
      },
      table_);
}

}  // namespace mfgprep
