#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "mfgprep/types.hpp"
#include "mfgprep/variant.hpp"

namespace mfgprep {

/// Open-addressing NodeId -> LocalId table: linear probing over a
/// power-of-two slot array, grown at 5/8 load.
class FlatIdTable {
 public:
  explicit FlatIdTable(std::size_t expected_size = 0);

  /// Inserts (key, value) unless key is present; returns the stored value
  /// and whether an insertion happened.
  std::pair<LocalId, bool> try_emplace(NodeId key, LocalId value) {
    if ((size_ + 1) * 8 > slots_.size() * 5) grow();
    std::size_t i = bucket(key);
    while (true) {
      Slot& s = slots_[i];
      if (s.value == kEmpty) {
        s = {key, value};
        ++size_;
        return {value, true};
      }
      if (s.key == key) return {s.value, false};
      i = (i + 1) & mask_;
    }
  }

  std::optional<LocalId> find(NodeId key) const noexcept;
  void reserve(std::size_t expected_size);

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return slots_.size(); }

 private:
  static constexpr LocalId kEmpty = ~LocalId{0};
  struct Slot {
    NodeId key;
    LocalId value;
  };

  std::size_t bucket(NodeId key) const noexcept {
    return static_cast<std::size_t>((std::uint64_t{key} * 0x9E3779B97F4A7C15ULL) >> shift_);
  }
  void grow();
  void rehash(std::size_t new_capacity);

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  unsigned shift_ = 64;
  std::size_t size_ = 0;
};

/// Insertion-ordered bijection between global node IDs and compact local
/// IDs 0..size-1. Destinations are inserted first, so they form a prefix.
class IdMap {
 public:
  using StdTable = std::unordered_map<NodeId, LocalId>;

  explicit IdMap(MapImpl impl = MapImpl::flat_probing, std::size_t size_hint = 0);

  /// Local ID of `global`, assigning the next free one on first sight.
  LocalId insert(NodeId global);

  std::optional<LocalId> find(NodeId global) const;
  NodeId global(LocalId local) const noexcept { return globals_[local]; }
  std::span<const NodeId> globals() const noexcept { return globals_; }
  std::size_t size() const noexcept { return globals_.size(); }
  MapImpl impl() const noexcept { return impl_; }

  /// Runs f(table, globals) on the concrete lookup table. Used by the
  /// sampler to keep its inner loop free of per-insert dispatch.
  template <class F>
  decltype(auto) with_table(F&& f) {
    return std::visit([&](auto& table) -> decltype(auto) { return f(table, globals_); }, table_);
  }

  template <class Table>
  static LocalId intern(Table& table, std::vector<NodeId>& globals, NodeId global) {
    const auto next = static_cast<LocalId>(globals.size());
    if constexpr (std::is_same_v<Table, StdTable>) {
      const auto [it, inserted] = table.try_emplace(global, next);
      if (inserted) globals.push_back(global);
      return it->second;
    } else {
      const auto [local, inserted] = table.try_emplace(global, next);
      if (inserted) globals.push_back(global);
      return local;
    }
  }

  /// Maps compare by their ordered global sequence.
  friend bool operator==(const IdMap& a, const IdMap& b) { return a.globals_ == b.globals_; }

 private:
  MapImpl impl_;
  std::vector<NodeId> globals_;
  std::variant<StdTable, FlatIdTable> table_;
};

inline LocalId IdMap::insert(NodeId global) {
  return with_table([&](auto& table, std::vector<NodeId>& globals) -> LocalId {
    return intern(table, globals, global);
  });
}

}  // namespace mfgprep
