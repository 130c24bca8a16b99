#include "reltutte/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

namespace reltutte {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

std::size_t vertex_index(const std::vector<int>& sorted, int v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

// Components of the graph restricted to edges not flagged in `skip`.
std::size_t count_components(const ColoredMultigraph& g, std::optional<std::size_t> skip) {
  const auto& vs = g.vertices();
  DisjointSets ds(vs.size());
  std::size_t comps = vs.size();
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (skip && *skip == i) continue;
    if (ds.unite(vertex_index(vs, es[i].u), vertex_index(vs, es[i].v))) --comps;
  }
  return comps;
}

}  // namespace

void ColoredMultigraph::add_vertex(int v) {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) vertices_.insert(it, v);
}

void ColoredMultigraph::add_edge(EdgeRecord e) {
  if (find_edge(e.id)) throw Error(Errc::DuplicateEdgeId, "edge id '" + e.id + "' already present");
  add_vertex(e.u);
  add_vertex(e.v);
  edges_.push_back(std::move(e));
}

bool ColoredMultigraph::has_vertex(int v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

int ColoredMultigraph::max_vertex() const { return vertices_.empty() ? -1 : vertices_.back(); }

std::optional<std::size_t> ColoredMultigraph::find_edge(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  return std::nullopt;
}

const EdgeRecord& ColoredMultigraph::edge(std::string_view id) const {
  auto idx = find_edge(id);
  if (!idx) throw Error(Errc::UnknownEdge, "no edge with id '" + std::string(id) + "'");
  return edges_[*idx];
}

std::size_t ColoredMultigraph::component_count() const { return count_components(*this, std::nullopt); }

std::vector<std::vector<int>> ColoredMultigraph::components() const {
  DisjointSets ds(vertices_.size());
  for (const auto& e : edges_) ds.unite(vertex_index(vertices_, e.u), vertex_index(vertices_, e.v));
  std::map<std::size_t, std::vector<int>> by_root;
  for (std::size_t i = 0; i < vertices_.size(); ++i) by_root[ds.find(i)].push_back(vertices_[i]);
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : by_root) out.push_back(std::move(vs));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<const EdgeRecord*> ColoredMultigraph::pointed_edges() const {
  std::vector<const EdgeRecord*> out;
  for (const auto& e : edges_)
    if (e.pointed) out.push_back(&e);
  return out;
}

ColoredMultigraph contract(const ColoredMultigraph& g, std::string_view edge_id) {
  const EdgeRecord& target = g.edge(edge_id);
  if (target.is_loop()) throw Error(Errc::ContractLoop, "cannot contract loop '" + target.id + "'");
  const auto [keep, gone] = target.ordered();
  ColoredMultigraph out;
  for (int v : g.vertices())
    if (v != gone) out.add_vertex(v);
  for (const auto& e : g.edges()) {
    if (e.id == target.id) continue;
    EdgeRecord c = e;
    if (c.u == gone) c.u = keep;
    if (c.v == gone) c.v = keep;
    out.add_edge(std::move(c));
  }
  return out;
}

ColoredMultigraph delete_edge(const ColoredMultigraph& g, std::string_view edge_id) {
  const EdgeRecord& target = g.edge(edge_id);
  ColoredMultigraph out;
  for (int v : g.vertices()) out.add_vertex(v);
  for (const auto& e : g.edges())
    if (e.id != target.id) out.add_edge(e);
  return out;
}

bool is_loop(const ColoredMultigraph& g, std::string_view edge_id) { return g.edge(edge_id).is_loop(); }

bool is_bridge(const ColoredMultigraph& g, std::string_view edge_id) {
  auto idx = g.find_edge(edge_id);
  if (!idx) throw Error(Errc::UnknownEdge, "no edge with id '" + std::string(edge_id) + "'");
  if (g.edges()[*idx].is_loop()) return false;
  return count_components(g, idx) > g.component_count();
}

std::vector<ColoredMultigraph> blocks(const ColoredMultigraph& g) {
  const auto& vs = g.vertices();
  const auto& es = g.edges();
  const std::size_t n = vs.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (edge, neighbour)
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i].is_loop()) {
      groups.push_back({i});
      continue;
    }
    const auto a = vertex_index(vs, es[i].u);
    const auto b = vertex_index(vs, es[i].v);
    adj[a].push_back({i, b});
    adj[b].push_back({i, a});
  }

  std::vector<int> disc(n, 0), low(n, 0);
  std::vector<std::size_t> stack;
  int timer = 0;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t parent_edge) {
    disc[v] = low[v] = ++timer;
    for (auto [e, w] : adj[v]) {
      if (e == parent_edge) continue;
      if (disc[w] == 0) {
        stack.push_back(e);
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<std::size_t> group;
          while (true) {
            std::size_t top = stack.back();
            stack.pop_back();
            group.push_back(top);
            if (top == e) break;
          }
          groups.push_back(std::move(group));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (disc[v] == 0) dfs(v, kNone);

  for (auto& grp : groups) std::sort(grp.begin(), grp.end());
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<ColoredMultigraph> out;
  out.reserve(groups.size());
  for (const auto& grp : groups) {
    ColoredMultigraph b;
    for (auto idx : grp) b.add_edge(es[idx]);
    out.push_back(std::move(b));
  }
  return out;
}

ColoredMultigraph vertex_pivot(const ColoredMultigraph& g, int cutpoint, std::pair<int, int> reattach) {
  if (!g.has_vertex(cutpoint)) throw Error(Errc::NotACutpoint, "vertex " + std::to_string(cutpoint) + " not in graph");
  const auto& es = g.edges();

  // Branches at the cutpoint: one per component of g - cutpoint touching it,
  // plus one per loop at the cutpoint. Each branch is a list of edge indices.
  ColoredMultigraph rest;
  for (int v : g.vertices())
    if (v != cutpoint) rest.add_vertex(v);
  for (const auto& e : es)
    if (e.u != cutpoint && e.v != cutpoint) rest.add_edge(e);
  const auto comps = rest.components();
  std::unordered_map<int, std::size_t> comp_of;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = c;

  std::map<std::size_t, std::vector<std::size_t>> by_comp;
  std::vector<std::vector<std::size_t>> branches;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& e = es[i];
    if (e.u == cutpoint && e.v == cutpoint) {
      branches.push_back({i});
    } else {
      const int other = e.u == cutpoint ? e.v : e.u;
      if (e.u == cutpoint || e.v == cutpoint) by_comp[comp_of.at(other)].push_back(i);
    }
  }
  for (auto& [c, idx] : by_comp) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      const auto& e = es[i];
      if (e.u != cutpoint && e.v != cutpoint && comp_of.at(e.u) == c) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    branches.push_back(idx);
  }
  if (branches.size() < 2)
    throw Error(Errc::NotACutpoint, "vertex " + std::to_string(cutpoint) + " is not a cutpoint");
  std::sort(branches.begin(), branches.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  auto branch_vertices = [&](const std::vector<std::size_t>& br) {
    std::set<int> out;
    for (auto i : br) {
      out.insert(es[i].u);
      out.insert(es[i].v);
    }
    return out;
  };

  const auto [v1, v2] = reattach;
  std::optional<std::size_t> side_b;
  if (v2 != cutpoint) {
    for (std::size_t b = 0; b < branches.size(); ++b)
      if (branch_vertices(branches[b]).count(v2)) side_b = b;
  } else if (v1 != cutpoint) {
    for (std::size_t b = 0; b < branches.size() && !side_b; ++b)
      if (!branch_vertices(branches[b]).count(v1)) side_b = b;
  }
  if (!side_b) throw Error(Errc::BadReattachChoice, "no split side for reattach vertex " + std::to_string(v2));

  std::set<int> side_a_vertices{cutpoint};
  for (std::size_t b = 0; b < branches.size(); ++b)
    if (b != *side_b) {
      auto vs = branch_vertices(branches[b]);
      side_a_vertices.insert(vs.begin(), vs.end());
    }
  if (!side_a_vertices.count(v1))
    throw Error(Errc::BadReattachChoice, "vertex " + std::to_string(v1) + " is not on the cutpoint side");

  const int copy = g.max_vertex() + 1;
  const int merged_away = v2 == cutpoint ? copy : v2;
  std::set<std::size_t> in_b(branches[*side_b].begin(), branches[*side_b].end());

  ColoredMultigraph out;
  for (int v : g.vertices())
    if (v != merged_away) out.add_vertex(v);
  if (merged_away != copy) out.add_vertex(copy);
  for (std::size_t i = 0; i < es.size(); ++i) {
    EdgeRecord e = es[i];
    if (in_b.count(i)) {
      if (e.u == cutpoint) e.u = copy;
      if (e.v == cutpoint) e.v = copy;
    }
    if (e.u == merged_away) e.u = v1;
    if (e.v == merged_away) e.v = v1;
    out.add_edge(std::move(e));
  }
  return out;
}

ColoredMultigraph relabeled(const ColoredMultigraph& g, int offset, std::string_view prefix) {
  ColoredMultigraph out;
  for (int v : g.vertices()) out.add_vertex(v + offset);
  for (const auto& e : g.edges()) {
    EdgeRecord c = e;
    c.id = std::string(prefix) + c.id;
    c.u += offset;
    c.v += offset;
    out.add_edge(std::move(c));
  }
  return out;
}

ColoredMultigraph splice_all(std::span<const ColoredMultigraph> gs) {
  ColoredMultigraph joined;
  int next = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (gs[i].vertex_count() == 0) continue;
    const int offset = next - gs[i].vertices().front();
    auto part = relabeled(gs[i], offset, std::to_string(i) + "/");
    for (int v : part.vertices()) joined.add_vertex(v);
    for (const auto& e : part.edges()) joined.add_edge(e);
    next = joined.max_vertex() + 1;
  }
  if (joined.vertex_count() == 0) {
    ColoredMultigraph point;
    point.add_vertex(0);
    return point;
  }
  const auto comps = joined.components();
  const int hub = comps.front().front();
  std::unordered_map<int, int> target;
  for (std::size_t c = 1; c < comps.size(); ++c) target[comps[c].front()] = hub;
  ColoredMultigraph out;
  for (int v : joined.vertices())
    if (!target.count(v)) out.add_vertex(v);
  for (auto e : joined.edges()) {
    if (auto it = target.find(e.u); it != target.end()) e.u = it->second;
    if (auto it = target.find(e.v); it != target.end()) e.v = it->second;
    out.add_edge(std::move(e));
  }
  return out;
}

ColoredMultigraph two_sum(const ColoredMultigraph& base, std::string_view base_edge, const ColoredMultigraph& patch,
                          std::string_view patch_edge, bool flip) {
  const EdgeRecord& be = base.edge(base_edge);
  const EdgeRecord& pe = patch.edge(patch_edge);
  if (be.is_loop() || pe.is_loop()) throw Error(Errc::LoopTwoSum, "2-sum along a loop edge");
  auto [a, b] = be.ordered();
  if (flip) std::swap(a, b);
  const auto [p, q] = pe.ordered();

  std::map<int, int> vmap{{p, a}, {q, b}};
  int next = base.max_vertex() + 1;
  for (int v : patch.vertices())
    if (!vmap.count(v)) vmap[v] = next++;

  ColoredMultigraph out;
  for (int v : base.vertices()) out.add_vertex(v);
  for (const auto& e : base.edges())
    if (e.id != be.id) out.add_edge(e);
  for (const auto& [from, to] : vmap) out.add_vertex(to);
  for (const auto& e : patch.edges()) {
    if (e.id == pe.id) continue;
    EdgeRecord c = e;
    c.u = vmap.at(c.u);
    c.v = vmap.at(c.v);
    out.add_edge(std::move(c));
  }
  return out;
}

ColoredMultigraph recolor_subset(const ColoredMultigraph& g, const std::set<std::string>& edge_ids,
                                 std::string_view new_color) {
  std::optional<std::string> shared;
  for (const auto& id : edge_ids) {
    const auto& e = g.edge(id);
    if (e.zero || e.pointed) throw Error(Errc::NotRegular, "edge '" + id + "' is not a regular edge");
    if (shared && *shared != e.color) throw Error(Errc::MixedColors, "edges to recolor carry different colors");
    shared = e.color;
  }
  ColoredMultigraph out;
  for (int v : g.vertices()) out.add_vertex(v);
  for (auto e : g.edges()) {
    if (edge_ids.count(e.id)) {
      e.color = std::string(new_color);
      e.zero = true;
    }
    out.add_edge(std::move(e));
  }
  return out;
}

void validate_colors(const ColoredMultigraph& g) {
  std::set<std::string> regular, zero;
  std::size_t nu_count = 0;
  std::size_t pointed_count = 0;
  for (const auto& e : g.edges()) {
    if (e.pointed && e.zero) throw Error(Errc::PointedZeroConflict, "edge '" + e.id + "' is both pointed and zero");
    if (e.pointed) ++pointed_count;
    if (e.color == kPointedColor) {
      ++nu_count;
      continue;
    }
    if (e.pointed) throw Error(Errc::ColorClash, "pointed edge '" + e.id + "' must carry color nu");
    if (e.color == kRecolorZero && !e.zero)
      throw Error(Errc::ColorClash, "color lambda0 is reserved for zero edges (edge '" + e.id + "')");
    (e.zero ? zero : regular).insert(e.color);
  }
  if (pointed_count > 1) throw Error(Errc::TwoPointedEdges, "more than one pointed edge");
  if (nu_count > 1) throw Error(Errc::ColorClash, "color nu is carried by more than one edge");
  for (const auto& c : regular)
    if (zero.count(c)) throw Error(Errc::ColorClash, "color '" + c + "' is used by regular and zero edges");
}

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::DuplicateEdgeId: return "DuplicateEdgeId";
    case Errc::ContractLoop: return "ContractLoop";
    case Errc::NotACutpoint: return "NotACutpoint";
    case Errc::BadReattachChoice: return "BadReattachChoice";
    case Errc::LoopTwoSum: return "LoopTwoSum";
    case Errc::NotRegular: return "NotRegular";
    case Errc::MixedColors: return "MixedColors";
    case Errc::ColorClash: return "ColorClash";
    case Errc::ImproperLabeling: return "ImproperLabeling";
    case Errc::InvalidContractingSet: return "InvalidContractingSet";
    case Errc::NotLinearInZ: return "NotLinearInZ";
    case Errc::MissingKey: return "MissingKey";
    case Errc::NoPointedEdge: return "NoPointedEdge";
    case Errc::PointedIsLoopOrBridge: return "PointedIsLoopOrBridge";
    case Errc::InvalidPointedGraph: return "InvalidPointedGraph";
    case Errc::InstanceInvalid: return "InstanceInvalid";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::ParseError: return "ParseError";
    case Errc::TwoPointedEdges: return "TwoPointedEdges";
    case Errc::PointedZeroConflict: return "PointedZeroConflict";
    case Errc::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

}  // namespace reltutte
