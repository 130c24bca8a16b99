#include "reltutte/pointed.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "reltutte/error.hpp"
#include "reltutte/pivot_key.hpp"

namespace reltutte {

PointedGraph PointedGraph::from(ColoredMultigraph g) {
  validate_colors(g);
  const auto pointed = g.pointed_edges();
  if (pointed.empty()) throw Error(Errc::NoPointedEdge, "graph has no pointed edge");
  if (pointed.size() > 1) throw Error(Errc::TwoPointedEdges, "graph has more than one pointed edge");
  const std::string id = pointed.front()->id;
  if (!g.is_connected()) throw Error(Errc::InvalidPointedGraph, "pointed graph must be connected");
  if (is_loop(g, id) || is_bridge(g, id)) throw Error(Errc::PointedIsLoopOrBridge, "pointed edge " + id + " is a loop or a bridge");
  return PointedGraph{std::move(g), id};
}

std::string_view pair_type_name(PairType t) noexcept {
  switch (t) {
    case PairType::TypeC: return "C";
    case PairType::TypeD: return "D";
    case PairType::TypeZero: return "0";
  }
  return "?";
}

PairType classify_pair(const PointedGraph& pg, const ContractingSet& cs) {
  const auto& g = pg.graph;
  if (!is_contracting_set(g, cs)) throw Error(Errc::InvalidContractingSet, "not a contracting set");
  const auto& e = g.edge(pg.pointed);

  const auto& vs = g.vertices();
  auto index = [&](int v) { return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
  std::vector<std::size_t> parent(vs.size());
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  // Union-find over the edges accepted by `keep`; returns the number of merges.
  auto merges = [&](auto keep) {
    std::iota(parent.begin(), parent.end(), 0);
    std::size_t n = 0;
    for (const auto& f : g.edges()) {
      if (!keep(f)) continue;
      const auto a = find(index(f.u)), b = find(index(f.v));
      if (a != b) {
        parent[a] = b;
        ++n;
      }
    }
    return n;
  };

  // C + e contains a cycle iff the endpoints of e are joined inside C.
  merges([&](const EdgeRecord& f) { return cs.C.count(f.id) > 0; });
  const bool type_c = find(index(e.u)) == find(index(e.v));

  // D + e contains a cocycle iff removing D and e disconnects.
  const std::size_t rest = merges([&](const EdgeRecord& f) { return !cs.D.count(f.id) && f.id != e.id; });
  const bool type_d = vs.size() - rest > g.component_count();

  if (type_c && type_d) throw Error(Errc::InternalInvariant, "pair is both type C and type D");
  const PairType by_definition = type_c ? PairType::TypeC : type_d ? PairType::TypeD : PairType::TypeZero;

  const ColoredMultigraph h = terminal_graph(g, canonical_labeling(g), cs);
  const PairType by_status = is_loop(h, e.id)     ? PairType::TypeC
                             : is_bridge(h, e.id) ? PairType::TypeD
                                                  : PairType::TypeZero;
  if (by_definition != by_status) throw Error(Errc::InternalInvariant, "type disagrees with terminal status of " + e.id);
  return by_definition;
}

namespace {

template <class Keep>
RelPolynomial project(const RelPolynomial& p, Keep keep) {
  return map_z_linear(p, [&](KeyId k) {
    const auto& key = key_of(k);
    return keep(key) ? RelPolynomial::z(k) : RelPolynomial{};
  });
}

/// Id of the single nu-edge in the key's representative.
std::string nu_edge_id(const ColoredMultigraph& rep) {
  for (const auto& e : rep.edges()) {
    if (e.color == kPointedColor) return e.id;
  }
  throw Error(Errc::InternalInvariant, "representative has no nu-edge");
}

}  // namespace

RelPolynomial pi_C(const RelPolynomial& p) {
  return project(p, [](const PivotClassKey& k) { return k.nu_is_bridge(); });
}

RelPolynomial pi_L(const RelPolynomial& p) {
  return project(p, [](const PivotClassKey& k) { return k.nu_is_loop(); });
}

RelPolynomial pi_0(const RelPolynomial& p) {
  return project(p, [](const PivotClassKey& k) {
    return k.nu_edge_count() == 1 && !k.nu_is_bridge() && !k.nu_is_loop();
  });
}

RelPolynomial pi_contract(const RelPolynomial& p) {
  return map_z_linear(p, [](KeyId k) {
    const auto& key = key_of(k);
    if (key.nu_edge_count() != 1 || key.nu_is_loop()) return RelPolynomial{};
    const auto rep = key.representative();
    return RelPolynomial::z(pivot_class_key(contract(rep, nu_edge_id(rep))));
  });
}

RelPolynomial pi_delete(const RelPolynomial& p) {
  return map_z_linear(p, [](KeyId k) {
    const auto& key = key_of(k);
    if (key.nu_edge_count() != 1 || key.nu_is_bridge()) return RelPolynomial{};
    const auto rep = key.representative();
    return RelPolynomial::z(pivot_class_key(delete_edge(rep, nu_edge_id(rep))));
  });
}

PointedPolys pointed_polys(const PointedGraph& pg) {
  PointedPolys out;
  out.U = universal_tutte_statesum(pg.graph);
  out.T_contracted = universal_tutte_statesum(contract(pg.graph, pg.pointed));
  out.T_deleted = universal_tutte_statesum(delete_edge(pg.graph, pg.pointed));
  out.T_C = pi_contract(pi_C(out.U));
  out.T_L = pi_delete(pi_L(out.U));
  out.T_0 = pi_0(out.U);
  out.T_slash = out.T_contracted - pi_contract(out.T_0);
  out.T_minus = out.T_deleted - pi_delete(out.T_0);
  return out;
}

}  // namespace reltutte
