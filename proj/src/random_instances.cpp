#include "reltutte/random_instances.hpp"

#include <algorithm>

#include "reltutte/error.hpp"

namespace reltutte {

namespace {

constexpr int kMaxAttempts = 100000;

const std::string& pick(Rng& rng, const std::vector<std::string>& v) {
  return v[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
}

std::pair<int, int> endpoints(Rng& rng, int n, bool allow_loops) {
  while (true) {
    const int u = static_cast<int>(rng.uniform(0, n - 1));
    const int v = static_cast<int>(rng.uniform(0, n - 1));
    if (u != v || allow_loops || n == 1) return {u, v};
  }
}

/// One draw with the given named regular edges (id, color) plus zero edges.
ColoredMultigraph draw(Rng& rng, const RandomGraphSpec& spec, int n,
                       const std::vector<std::pair<std::string, std::string>>& regular, int zeros) {
  ColoredMultigraph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (const auto& [id, color] : regular) {
    const auto [u, v] = endpoints(rng, n, spec.allow_loops);
    g.add_edge(EdgeRecord{id, u, v, color, false, false});
  }
  for (int i = 0; i < zeros; ++i) {
    const auto [u, v] = endpoints(rng, n, spec.allow_loops);
    g.add_edge(EdgeRecord{"h" + std::to_string(i), u, v, pick(rng, spec.zero_colors), true, false});
  }
  return g;
}

}  // namespace

ColoredMultigraph random_graph(Rng& rng, const RandomGraphSpec& spec) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const int n = static_cast<int>(rng.uniform(spec.min_vertices, spec.max_vertices));
    const int k = static_cast<int>(rng.uniform(spec.min_regular, spec.max_regular));
    const int z = static_cast<int>(rng.uniform(spec.min_zero, spec.max_zero));
    std::vector<std::pair<std::string, std::string>> regular;
    for (int i = 0; i < k; ++i) regular.emplace_back("r" + std::to_string(i), pick(rng, spec.colors));
    ColoredMultigraph g = draw(rng, spec, n, regular, z);
    if (!spec.connected || g.is_connected()) return g;
  }
  throw Error(Errc::InternalInvariant, "random_graph: no connected draw within the attempt budget");
}

ProperLabeling random_labeling(const ColoredMultigraph& g, Rng& rng) {
  std::vector<std::string> regular;
  ProperLabeling lab;
  for (const auto& e : g.edges()) {
    if (is_regular(e)) {
      regular.push_back(e.id);
    } else {
      lab.labels[e.id] = 0;
    }
  }
  // Fisher-Yates with the documented draw rule.
  for (std::size_t i = regular.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(regular[i - 1], regular[j]);
  }
  for (std::size_t i = 0; i < regular.size(); ++i) lab.labels[regular[i]] = static_cast<unsigned>(i + 1);
  return lab;
}

PointedGraph random_pointed_graph(Rng& rng, const RandomGraphSpec& spec) {
  RandomGraphSpec inner = spec;
  inner.connected = false;
  inner.min_vertices = std::max(spec.min_vertices, 2);
  inner.max_vertices = std::max(spec.max_vertices, 2);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    ColoredMultigraph g = random_graph(rng, inner);
    const int n = static_cast<int>(g.vertex_count());
    const int u = static_cast<int>(rng.uniform(0, n - 1));
    int v = static_cast<int>(rng.uniform(0, n - 2));
    if (v >= u) ++v;
    g.add_edge(EdgeRecord{"e", u, v, std::string(kPointedColor), false, true});
    if (!g.is_connected() || is_bridge(g, "e")) continue;
    return PointedGraph::from(std::move(g));
  }
  throw Error(Errc::InternalInvariant, "random_pointed_graph: no valid draw within the attempt budget");
}

TensorInstance random_tensor_instance(Rng& rng, const RandomInstanceSpec& spec) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const auto& s1 = spec.g1;
    const int n = static_cast<int>(rng.uniform(s1.min_vertices, s1.max_vertices));
    const int k = static_cast<int>(rng.uniform(std::max(s1.min_regular, spec.min_lambda), s1.max_regular));
    const int l = static_cast<int>(rng.uniform(spec.min_lambda, std::min(spec.max_lambda, k)));
    const int z = static_cast<int>(rng.uniform(s1.min_zero, s1.max_zero));
    std::vector<std::pair<std::string, std::string>> regular;
    for (int i = 0; i < l; ++i) regular.emplace_back("f" + std::to_string(i), spec.lambda);
    for (int i = l; i < k; ++i) regular.emplace_back("r" + std::to_string(i - l), pick(rng, s1.colors));
    ColoredMultigraph g1 = draw(rng, s1, n, regular, z);
    if (!g1.is_connected()) continue;
    PointedGraph g2 = random_pointed_graph(rng, spec.g2);
    try {
      return TensorInstance::make(std::move(g1), std::move(g2.graph), spec.lambda);
    } catch (const Error& e) {
      if (e.code() != Errc::InstanceInvalid) throw;
    }
  }
  throw Error(Errc::InternalInvariant, "random_tensor_instance: no valid draw within the attempt budget");
}

}  // namespace reltutte
