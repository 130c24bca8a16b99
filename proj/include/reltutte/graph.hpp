#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reltutte/error.hpp"

namespace reltutte {

/// Color carried by the distinguished edge of a pointed graph.
inline constexpr std::string_view kPointedColor = "nu";
/// Color given to lambda-edges that are recolored into zero edges.
inline constexpr std::string_view kRecolorZero = "lambda0";

/// One edge of a colored multigraph. Endpoints are stored in the order they
/// were given; loops have u == v.
struct EdgeRecord {
  std::string id;
  int u = 0;
  int v = 0;
  std::string color;
  bool zero = false;
  bool pointed = false;

  bool is_loop() const noexcept { return u == v; }
  /// Smaller and larger endpoint.
  std::pair<int, int> ordered() const noexcept { return u <= v ? std::pair{u, v} : std::pair{v, u}; }
  bool operator==(const EdgeRecord&) const = default;
};

/// Colored multigraph with zero and pointed edge flags. Parallel edges and
/// loops are allowed. Edge ids are unique and survive contraction and
/// deletion. Values are built with add_vertex/add_edge and then treated as
/// immutable: every structural operation below returns a fresh graph.
class ColoredMultigraph {
 public:
  ColoredMultigraph() = default;

  void add_vertex(int v);
  /// Adds the edge (and its endpoints). Throws DuplicateEdgeId.
  void add_edge(EdgeRecord e);

  const std::vector<int>& vertices() const noexcept { return vertices_; }
  const std::vector<EdgeRecord>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool has_vertex(int v) const;
  int max_vertex() const;

  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Throws UnknownEdge.
  const EdgeRecord& edge(std::string_view id) const;

  std::size_t component_count() const;
  bool is_connected() const { return component_count() <= 1; }
  /// Connected components as vertex lists, each sorted, ordered by smallest vertex.
  std::vector<std::vector<int>> components() const;

  /// Edges with the pointed flag.
  std::vector<const EdgeRecord*> pointed_edges() const;

  bool operator==(const ColoredMultigraph&) const = default;

 private:
  std::vector<int> vertices_;  // sorted
  std::vector<EdgeRecord> edges_;
};

/// Contracts a non-loop edge; the merged vertex keeps the smaller id.
/// Throws UnknownEdge, ContractLoop.
ColoredMultigraph contract(const ColoredMultigraph& g, std::string_view edge_id);
/// Removes an edge, keeping all vertices. Throws UnknownEdge.
ColoredMultigraph delete_edge(const ColoredMultigraph& g, std::string_view edge_id);

bool is_loop(const ColoredMultigraph& g, std::string_view edge_id);
bool is_bridge(const ColoredMultigraph& g, std::string_view edge_id);

/// Maximal 2-connected subgraphs, bridges and loops. Every edge lands in
/// exactly one block; isolated vertices produce none. Blocks keep the
/// original vertex and edge ids and are ordered by their smallest edge index.
std::vector<ColoredMultigraph> blocks(const ColoredMultigraph& g);

/// Cutpoint split followed by re-splicing (see README for the exact side
/// selection rule). The vertex `reattach.first` lies on the side that keeps
/// the cutpoint id; `reattach.second` lies on the side that gets a fresh copy
/// of the cutpoint. Throws NotACutpoint, BadReattachChoice.
ColoredMultigraph vertex_pivot(const ColoredMultigraph& g, int cutpoint, std::pair<int, int> reattach);

/// Disjoint union of the inputs with every connected component spliced onto a
/// single hub vertex. An empty input yields the single-vertex graph.
ColoredMultigraph splice_all(std::span<const ColoredMultigraph> gs);

/// 2-sum along base_edge and patch_edge. Endpoints are matched in ascending
/// vertex-id order on both sides (reversed when `flip`). Base vertex ids are
/// kept; patch vertices are renumbered above them. Throws LoopTwoSum,
/// UnknownEdge, DuplicateEdgeId.
ColoredMultigraph two_sum(const ColoredMultigraph& base, std::string_view base_edge,
                          const ColoredMultigraph& patch, std::string_view patch_edge, bool flip = false);

/// Recolors a set of regular edges sharing one color into zero edges of
/// `new_color`. Throws NotRegular, MixedColors, UnknownEdge.
ColoredMultigraph recolor_subset(const ColoredMultigraph& g, const std::set<std::string>& edge_ids,
                                 std::string_view new_color = kRecolorZero);

/// Copy with vertex ids shifted by `offset` and edge ids prefixed by `prefix`.
ColoredMultigraph relabeled(const ColoredMultigraph& g, int offset, std::string_view prefix);

/// Checks the color discipline: zero edges and regular edges use disjoint
/// color sets, lambda0 only on zero edges, nu only on one edge, pointed edges
/// are never zero. Throws ColorClash or TwoPointedEdges.
void validate_colors(const ColoredMultigraph& g);

}  // namespace reltutte
