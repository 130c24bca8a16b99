#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reltutte/graph.hpp"

namespace reltutte {

/// Canonical data for one block, shared by every key that contains it.
struct BlockInfo {
  std::string code;
  /// Canonical realization: vertices 0..n-1, edge ids "e0", "e1", ...
  ColoredMultigraph graph;
  std::size_t nu_edges = 0;
  std::size_t lambda0_edges = 0;
  bool bridge = false;  // two vertices joined by a single edge
  bool loop = false;    // a single loop
};

/// Canonical code of a block (2-connected piece, bridge or loop). The code is
/// the lexicographically smallest colored edge list over all vertex orders
/// compatible with a refined degree partition; bridges, loops and cycles get
/// short names (bridge(c), loop(c), cycleN(c1,...,cN)).
std::string block_code(const ColoredMultigraph& block);

/// Block info by code; the code must have been produced by block_code.
const BlockInfo& block_info(const std::string& code);

/// Vertex-pivot equivalence class of a zero-edge graph: the sorted multiset of
/// its block codes. The empty multiset is the class of the single vertex.
class PivotClassKey {
 public:
  PivotClassKey() = default;
  explicit PivotClassKey(std::vector<std::string> codes);

  const std::vector<std::string>& block_codes() const noexcept { return codes_; }
  bool is_point() const noexcept { return codes_.empty(); }

  /// Rendering "z{code1,code2,...}".
  std::string str() const;
  /// Bouquet of the canonical blocks glued at vertex 0.
  ColoredMultigraph representative() const;

  std::size_t nu_edge_count() const;
  std::size_t lambda0_edge_count() const;
  /// Exactly one nu-edge and it forms a bridge (resp. loop) block.
  bool nu_is_bridge() const;
  bool nu_is_loop() const;

  /// Multiset union.
  PivotClassKey merged(const PivotClassKey& other) const;

  auto operator<=>(const PivotClassKey&) const = default;

 private:
  std::vector<std::string> codes_;
};

PivotClassKey pivot_class_key(const ColoredMultigraph& g);

/// Dense ids for keys so polynomial monomials stay small. Ids are process-local
/// and only used for storage; every rendering goes through the key itself.
using KeyId = std::uint32_t;
KeyId intern_key(const PivotClassKey& key);
const PivotClassKey& key_of(KeyId id);
/// Cached key string (same as key_of(id).str()).
const std::string& key_string(KeyId id);

}  // namespace reltutte
