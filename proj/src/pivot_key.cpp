#include "reltutte/pivot_key.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

namespace reltutte {

namespace {

using EdgeTuple = std::tuple<int, int, int>;  // (small vertex, large vertex, color rank)

struct LocalBlock {
  int n = 0;
  std::vector<std::pair<int, int>> ends;  // vertex indices 0..n-1
  std::vector<int> color;                 // rank into `palette`
  std::vector<std::string> palette;       // sorted distinct colors
};

LocalBlock localize(const ColoredMultigraph& block) {
  LocalBlock lb;
  const auto& vs = block.vertices();
  lb.n = static_cast<int>(vs.size());
  for (const auto& e : block.edges()) lb.palette.push_back(e.color);
  std::sort(lb.palette.begin(), lb.palette.end());
  lb.palette.erase(std::unique(lb.palette.begin(), lb.palette.end()), lb.palette.end());
  for (const auto& e : block.edges()) {
    auto idx = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
    lb.ends.emplace_back(idx(e.u), idx(e.v));
    lb.color.push_back(
        static_cast<int>(std::lower_bound(lb.palette.begin(), lb.palette.end(), e.color) - lb.palette.begin()));
  }
  return lb;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

struct Canonical {
  std::string code;
  ColoredMultigraph graph;
};

ColoredMultigraph graph_from_tuples(const std::vector<EdgeTuple>& tuples, int n,
                                    const std::vector<std::string>& palette) {
  ColoredMultigraph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const auto& [a, b, c] = tuples[i];
    // Keys describe all-zero graphs; the nu-edge keeps its pointed role.
    const auto& color = palette[static_cast<std::size_t>(c)];
    const bool nu = color == kPointedColor;
    g.add_edge(EdgeRecord{"e" + std::to_string(i), a, b, color, !nu, nu});
  }
  return g;
}

// A cycle is determined up to isomorphism by its color sequence up to rotation
// and reflection.
std::optional<Canonical> canonical_cycle(const LocalBlock& lb) {
  const int n = lb.n;
  if (n < 2 || static_cast<int>(lb.ends.size()) != n) return std::nullopt;
  std::vector<std::vector<std::size_t>> inc(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < lb.ends.size(); ++i) {
    if (lb.ends[i].first == lb.ends[i].second) return std::nullopt;
    inc[static_cast<std::size_t>(lb.ends[i].first)].push_back(i);
    inc[static_cast<std::size_t>(lb.ends[i].second)].push_back(i);
  }
  for (const auto& list : inc)
    if (list.size() != 2) return std::nullopt;

  std::vector<int> seq;
  std::vector<bool> used(lb.ends.size(), false);
  int at = 0;
  std::size_t edge = inc[0][0];
  for (int step = 0; step < n; ++step) {
    used[edge] = true;
    seq.push_back(lb.color[edge]);
    at = lb.ends[edge].first == at ? lb.ends[edge].second : lb.ends[edge].first;
    const auto& next = inc[static_cast<std::size_t>(at)];
    if (step + 1 < n) edge = !used[next[0]] ? next[0] : next[1];
  }
  if (static_cast<int>(seq.size()) != n || std::find(used.begin(), used.end(), false) != used.end())
    return std::nullopt;

  std::vector<int> best;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<int> s = seq;
    if (dir) std::reverse(s.begin(), s.end());
    for (int r = 0; r < n; ++r) {
      std::rotate(s.begin(), s.begin() + 1, s.end());
      if (best.empty() || s < best) best = s;
    }
  }
  std::vector<std::string> names;
  std::vector<EdgeTuple> tuples;
  for (int i = 0; i < n; ++i) {
    names.push_back(lb.palette[static_cast<std::size_t>(best[static_cast<std::size_t>(i)])]);
    const int a = i, b = (i + 1) % n;
    tuples.emplace_back(std::min(a, b), std::max(a, b), best[static_cast<std::size_t>(i)]);
  }
  return Canonical{"cycle" + std::to_string(n) + "(" + join(names, ",") + ")",
                   graph_from_tuples(tuples, n, lb.palette)};
}

// Isomorphism-invariant vertex ranks from iterated neighbourhood refinement.
std::vector<int> refined_ranks(const LocalBlock& lb) {
  const auto n = static_cast<std::size_t>(lb.n);
  std::vector<std::vector<int>> sig(n);
  for (std::size_t i = 0; i < lb.ends.size(); ++i) {
    const auto [a, b] = lb.ends[i];
    if (a == b) {
      sig[static_cast<std::size_t>(a)].push_back(-1 - lb.color[i]);
    } else {
      sig[static_cast<std::size_t>(a)].push_back(lb.color[i]);
      sig[static_cast<std::size_t>(b)].push_back(lb.color[i]);
    }
  }
  auto to_ranks = [&](const std::vector<std::vector<int>>& s) {
    std::vector<std::vector<int>> uniq = s;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> rank(n);
    for (std::size_t v = 0; v < n; ++v)
      rank[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), s[v]) - uniq.begin());
    return std::pair{rank, uniq.size()};
  };
  for (auto& x : sig) std::sort(x.begin(), x.end());
  auto [rank, classes] = to_ranks(sig);
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::vector<int>> next(n);
    for (std::size_t i = 0; i < lb.ends.size(); ++i) {
      const auto [a, b] = lb.ends[i];
      if (a == b) continue;
      next[static_cast<std::size_t>(a)].push_back(lb.color[i] * 4096 + rank[static_cast<std::size_t>(b)]);
      next[static_cast<std::size_t>(b)].push_back(lb.color[i] * 4096 + rank[static_cast<std::size_t>(a)]);
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(next[v].begin(), next[v].end());
      next[v].insert(next[v].begin(), rank[v]);
    }
    auto [r2, c2] = to_ranks(next);
    rank = r2;
    if (c2 == classes) break;
    classes = c2;
  }
  return rank;
}

Canonical canonical_generic(const LocalBlock& lb) {
  const auto n = static_cast<std::size_t>(lb.n);
  const auto rank = refined_ranks(lb);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]; });
  // Cells are runs of equal rank in `order`; positions are fixed per cell and
  // every permutation inside each cell is tried.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && rank[static_cast<std::size_t>(order[j])] == rank[static_cast<std::size_t>(order[i])]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  std::vector<EdgeTuple> best, cur;
  std::vector<int> pos(n);
  auto evaluate = [&]() {
    for (std::size_t i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    cur.clear();
    for (std::size_t i = 0; i < lb.ends.size(); ++i) {
      int a = pos[static_cast<std::size_t>(lb.ends[i].first)], b = pos[static_cast<std::size_t>(lb.ends[i].second)];
      cur.emplace_back(std::min(a, b), std::max(a, b), lb.color[i]);
    }
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  };
  std::function<void(std::size_t)> walk = [&](std::size_t cell) {
    if (cell == cells.size()) {
      evaluate();
      return;
    }
    auto first = order.begin() + static_cast<std::ptrdiff_t>(cells[cell].first);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(cells[cell].second);
    std::sort(first, last);
    do {
      walk(cell + 1);
    } while (std::next_permutation(first, last));
  };
  walk(0);

  std::vector<std::string> parts;
  for (const auto& [a, b, c] : best)
    parts.push_back(std::to_string(a) + "-" + std::to_string(b) + ":" + lb.palette[static_cast<std::size_t>(c)]);
  return Canonical{"blk" + std::to_string(n) + "(" + join(parts, ",") + ")",
                   graph_from_tuples(best, lb.n, lb.palette)};
}

Canonical canonicalize(const ColoredMultigraph& block) {
  const LocalBlock lb = localize(block);
  if (lb.ends.size() == 1) {
    const auto& color = lb.palette.front();
    if (lb.ends[0].first == lb.ends[0].second)
      return {"loop(" + color + ")", graph_from_tuples({{0, 0, 0}}, 1, lb.palette)};
    return {"bridge(" + color + ")", graph_from_tuples({{0, 1, 0}}, 2, lb.palette)};
  }
  if (auto c = canonical_cycle(lb)) return *c;
  return canonical_generic(lb);
}

std::string raw_signature(const ColoredMultigraph& block) {
  const auto& vs = block.vertices();
  std::string sig = std::to_string(vs.size()) + "|";
  for (const auto& e : block.edges()) {
    auto idx = [&](int v) { return std::lower_bound(vs.begin(), vs.end(), v) - vs.begin(); };
    sig += std::to_string(idx(e.u)) + "-" + std::to_string(idx(e.v)) + ":" + e.color + ";";
  }
  return sig;
}

struct Registry {
  std::shared_mutex mutex;
  std::unordered_map<std::string, std::string> code_by_signature;
  std::unordered_map<std::string, BlockInfo> info_by_code;
  std::map<PivotClassKey, KeyId> id_by_key;
  std::deque<PivotClassKey> keys;
  std::deque<std::string> key_strings;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

std::string block_code(const ColoredMultigraph& block) {
  auto& reg = registry();
  const std::string sig = raw_signature(block);
  {
    std::shared_lock lock(reg.mutex);
    if (auto it = reg.code_by_signature.find(sig); it != reg.code_by_signature.end()) return it->second;
  }
  Canonical canon = canonicalize(block);
  BlockInfo info;
  info.code = canon.code;
  info.graph = std::move(canon.graph);
  for (const auto& e : info.graph.edges()) {
    if (e.color == kPointedColor) ++info.nu_edges;
    if (e.color == kRecolorZero) ++info.lambda0_edges;
  }
  info.loop = info.graph.edge_count() == 1 && info.graph.edges()[0].is_loop();
  info.bridge = info.graph.edge_count() == 1 && !info.loop;
  std::unique_lock lock(reg.mutex);
  reg.code_by_signature.emplace(sig, info.code);
  reg.info_by_code.emplace(info.code, std::move(info));
  return canon.code;
}

const BlockInfo& block_info(const std::string& code) {
  auto& reg = registry();
  std::shared_lock lock(reg.mutex);
  auto it = reg.info_by_code.find(code);
  if (it == reg.info_by_code.end()) throw Error(Errc::MissingKey, "unknown block code " + code);
  return it->second;
}

PivotClassKey::PivotClassKey(std::vector<std::string> codes) : codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
}

std::string PivotClassKey::str() const { return "z{" + join(codes_, ",") + "}"; }

ColoredMultigraph PivotClassKey::representative() const {
  ColoredMultigraph out;
  out.add_vertex(0);
  int next = 1;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    const auto& g = block_info(codes_[i]).graph;
    const std::string prefix = "b" + std::to_string(i) + ".";
    for (const auto& e : g.edges()) {
      EdgeRecord c = e;
      c.id = prefix + e.id;
      c.u = e.u == 0 ? 0 : e.u + next - 1;
      c.v = e.v == 0 ? 0 : e.v + next - 1;
      out.add_edge(std::move(c));
    }
    next += static_cast<int>(g.vertex_count()) - 1;
  }
  return out;
}

std::size_t PivotClassKey::nu_edge_count() const {
  std::size_t n = 0;
  for (const auto& c : codes_) n += block_info(c).nu_edges;
  return n;
}

std::size_t PivotClassKey::lambda0_edge_count() const {
  std::size_t n = 0;
  for (const auto& c : codes_) n += block_info(c).lambda0_edges;
  return n;
}

bool PivotClassKey::nu_is_bridge() const {
  if (nu_edge_count() != 1) return false;
  for (const auto& c : codes_) {
    const auto& info = block_info(c);
    if (info.nu_edges == 1) return info.bridge;
  }
  return false;
}

bool PivotClassKey::nu_is_loop() const {
  if (nu_edge_count() != 1) return false;
  for (const auto& c : codes_) {
    const auto& info = block_info(c);
    if (info.nu_edges == 1) return info.loop;
  }
  return false;
}

PivotClassKey PivotClassKey::merged(const PivotClassKey& other) const {
  std::vector<std::string> all = codes_;
  all.insert(all.end(), other.codes_.begin(), other.codes_.end());
  return PivotClassKey(std::move(all));
}

PivotClassKey pivot_class_key(const ColoredMultigraph& g) {
  std::vector<std::string> codes;
  for (const auto& b : blocks(g)) codes.push_back(block_code(b));
  return PivotClassKey(std::move(codes));
}

KeyId intern_key(const PivotClassKey& key) {
  auto& reg = registry();
  {
    std::shared_lock lock(reg.mutex);
    if (auto it = reg.id_by_key.find(key); it != reg.id_by_key.end()) return it->second;
  }
  std::unique_lock lock(reg.mutex);
  if (auto it = reg.id_by_key.find(key); it != reg.id_by_key.end()) return it->second;
  const auto id = static_cast<KeyId>(reg.keys.size());
  reg.keys.push_back(key);
  reg.key_strings.push_back(key.str());
  reg.id_by_key.emplace(key, id);
  return id;
}

const PivotClassKey& key_of(KeyId id) {
  auto& reg = registry();
  std::shared_lock lock(reg.mutex);
  return reg.keys.at(id);
}

const std::string& key_string(KeyId id) {
  auto& reg = registry();
  std::shared_lock lock(reg.mutex);
  return reg.key_strings.at(id);
}

}  // namespace reltutte
