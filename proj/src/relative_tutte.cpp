#include "reltutte/relative_tutte.hpp"

#include <algorithm>
#include <numeric>

#include "reltutte/error.hpp"
#include "reltutte/pivot_key.hpp"

namespace reltutte {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Ends {
  std::size_t a;
  std::size_t b;
};

/// Index-based view of a labeled graph. Regular edges are listed in
/// decreasing label order; vertices are indices into the sorted id list.
struct Compact {
  const ColoredMultigraph* g = nullptr;
  std::vector<std::size_t> zero;      // edge indices of non-regular edges
  std::vector<Ends> zero_ends;
  std::vector<std::size_t> order;     // regular edge indices, decreasing label
  std::vector<Ends> reg_ends;
  std::vector<VarCode> color_base;    // var_code(color, x) per regular position

  Compact(const ColoredMultigraph& graph, const ProperLabeling& lab) : g(&graph) {
    const auto& vs = graph.vertices();
    auto index = [&](int v) {
      return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
    };
    const auto& es = graph.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (is_regular(es[i])) {
        order.push_back(i);
      } else {
        zero.push_back(i);
        zero_ends.push_back({index(es[i].u), index(es[i].v)});
      }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return lab(es[l].id) > lab(es[r].id); });
    for (std::size_t i : order) {
      reg_ends.push_back({index(es[i].u), index(es[i].v)});
      color_base.push_back(var_code(intern_color(es[i].color), VarKind::x));
    }
  }

  std::size_t n() const { return g->vertex_count(); }
};

/// Vertex classes under the contractions made so far; the class of a vertex
/// is the smallest index merged into it.
class Classes {
 public:
  explicit Classes(std::size_t n) : cls_(n) { std::iota(cls_.begin(), cls_.end(), 0); }
  std::size_t operator[](std::size_t v) const { return cls_[v]; }

  /// Merges the classes of a and b; returns the number of relabeled vertices.
  std::size_t merge(std::size_t a, std::size_t b) {
    std::size_t ca = cls_[a], cb = cls_[b];
    if (cb < ca) std::swap(ca, cb);
    std::size_t changed = 0;
    for (std::size_t v = 0; v < cls_.size(); ++v) {
      if (cls_[v] == cb) {
        cls_[v] = ca;
        undo_.push_back(v);
        ++changed;
      }
    }
    undo_sizes_.push_back(changed);
    undo_from_.push_back(cb);
    return changed;
  }

  void undo() {
    std::size_t k = undo_sizes_.back();
    const std::size_t cb = undo_from_.back();
    undo_sizes_.pop_back();
    undo_from_.pop_back();
    while (k-- > 0) {
      cls_[undo_.back()] = cb;
      undo_.pop_back();
    }
  }

  const std::vector<std::size_t>& raw() const { return cls_; }

 private:
  std::vector<std::size_t> cls_;
  std::vector<std::size_t> undo_;
  std::vector<std::size_t> undo_sizes_;
  std::vector<std::size_t> undo_from_;
};

/// Bridge test for regular position i: the graph at that point consists of
/// the zero edges and the regular edges at positions >= i.
bool is_bridge_at(const Compact& cg, const Classes& cls, std::size_t i) {
  const std::size_t ca = cls[cg.reg_ends[i].a], cb = cls[cg.reg_ends[i].b];
  if (ca == cb) return false;
  DisjointSets ds(cg.n());
  for (const auto& e : cg.zero_ends) ds.unite(cls[e.a], cls[e.b]);
  for (std::size_t j = i + 1; j < cg.reg_ends.size(); ++j) ds.unite(cls[cg.reg_ends[j].a], cls[cg.reg_ends[j].b]);
  return ds.find(ca) != ds.find(cb);
}

/// in_c[i] tells whether regular position i is contracted.
std::vector<Activity> compact_activities(const Compact& cg, const std::vector<bool>& in_c) {
  Classes cls(cg.n());
  std::vector<Activity> out(cg.order.size());
  for (std::size_t i = 0; i < cg.order.size(); ++i) {
    const auto& e = cg.reg_ends[i];
    if (in_c[i]) {
      out[i] = is_bridge_at(cg, cls, i) ? Activity::IA : Activity::II;
      cls.merge(e.a, e.b);
    } else {
      out[i] = cls[e.a] == cls[e.b] ? Activity::EA : Activity::EI;
    }
  }
  return out;
}

Classes contracted_classes(const Compact& cg, const std::vector<bool>& in_c) {
  Classes cls(cg.n());
  for (std::size_t i = 0; i < cg.order.size(); ++i) {
    if (in_c[i]) cls.merge(cg.reg_ends[i].a, cg.reg_ends[i].b);
  }
  return cls;
}

ColoredMultigraph compact_terminal(const Compact& cg, const std::vector<bool>& in_c) {
  const Classes cls = contracted_classes(cg, in_c);
  const auto& vs = cg.g->vertices();
  ColoredMultigraph h;
  for (std::size_t v = 0; v < cg.n(); ++v) {
    if (cls[v] == v) h.add_vertex(vs[v]);
  }
  for (std::size_t k = 0; k < cg.zero.size(); ++k) {
    EdgeRecord e = cg.g->edges()[cg.zero[k]];
    e.u = vs[cls[cg.zero_ends[k].a]];
    e.v = vs[cls[cg.zero_ends[k].b]];
    h.add_edge(std::move(e));
  }
  return h;
}

std::vector<bool> membership(const Compact& cg, const ContractingSet& cs) {
  std::vector<bool> in_c(cg.order.size());
  for (std::size_t i = 0; i < cg.order.size(); ++i) in_c[i] = cs.C.count(cg.g->edges()[cg.order[i]].id) > 0;
  return in_c;
}

void require_contracting_set(const ColoredMultigraph& g, const ContractingSet& cs) {
  if (!is_contracting_set(g, cs)) throw Error(Errc::InvalidContractingSet, "not a contracting set");
}

std::size_t components_without(const ColoredMultigraph& g, const std::vector<bool>& removed) {
  const auto& vs = g.vertices();
  DisjointSets ds(vs.size());
  std::size_t comps = vs.size();
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (removed[i]) continue;
    const auto a = std::lower_bound(vs.begin(), vs.end(), es[i].u) - vs.begin();
    const auto b = std::lower_bound(vs.begin(), vs.end(), es[i].v) - vs.begin();
    if (ds.unite(a, b)) --comps;
  }
  return comps;
}

bool is_cocycle(const ColoredMultigraph& g, const std::vector<std::size_t>& set, std::size_t base_comps) {
  std::vector<bool> removed(g.edge_count(), false);
  for (std::size_t i : set) removed[i] = true;
  if (components_without(g, removed) <= base_comps) return false;
  for (std::size_t i : set) {
    removed[i] = false;
    const bool still_cut = components_without(g, removed) > base_comps;
    removed[i] = true;
    if (still_cut) return false;
  }
  return true;
}

bool is_circuit(const ColoredMultigraph& g, const std::vector<std::size_t>& set) {
  const auto& es = g.edges();
  if (set.size() == 1) return es[set[0]].is_loop();
  std::map<int, int> degree;
  for (std::size_t i : set) {
    if (es[i].is_loop()) return false;
    ++degree[es[i].u];
    ++degree[es[i].v];
  }
  if (!std::all_of(degree.begin(), degree.end(), [](const auto& d) { return d.second == 2; })) return false;
  std::map<int, std::size_t> idx;
  for (const auto& [v, d] : degree) idx.emplace(v, idx.size());
  DisjointSets ds(idx.size());
  std::size_t comps = idx.size();
  for (std::size_t i : set) {
    if (ds.unite(idx[es[i].u], idx[es[i].v])) --comps;
  }
  return comps == 1;
}

/// Is there a subset T of `pool` with pred(T + {e}) true?
template <class Pred>
bool some_subset(std::size_t e, const std::vector<std::size_t>& pool, Pred pred) {
  const std::size_t n = pool.size();
  std::vector<std::size_t> set;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    set.assign(1, e);
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1U) set.push_back(pool[k]);
    }
    if (pred(set)) return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Labelings

unsigned ProperLabeling::operator()(std::string_view edge_id) const {
  auto it = labels.find(std::string(edge_id));
  if (it == labels.end()) throw Error(Errc::ImproperLabeling, "no label for edge " + std::string(edge_id));
  return it->second;
}

ProperLabeling canonical_labeling(const ColoredMultigraph& g) {
  std::vector<std::string> regular;
  ProperLabeling lab;
  for (const auto& e : g.edges()) {
    if (is_regular(e)) {
      regular.push_back(e.id);
    } else {
      lab.labels[e.id] = 0;
    }
  }
  std::sort(regular.begin(), regular.end());
  for (std::size_t i = 0; i < regular.size(); ++i) lab.labels[regular[i]] = static_cast<unsigned>(i + 1);
  return lab;
}

void validate_labeling(const ColoredMultigraph& g, const ProperLabeling& lab) {
  validate_colors(g);
  if (lab.labels.size() != g.edge_count()) throw Error(Errc::ImproperLabeling, "labeling does not cover exactly the edges");
  std::set<unsigned> seen;
  for (const auto& e : g.edges()) {
    const unsigned l = lab(e.id);
    if (is_regular(e)) {
      if (l == 0) throw Error(Errc::ImproperLabeling, "regular edge " + e.id + " has label 0");
      if (!seen.insert(l).second) throw Error(Errc::ImproperLabeling, "label " + std::to_string(l) + " repeated");
    } else if (l != 0) {
      throw Error(Errc::ImproperLabeling, "zero edge " + e.id + " has nonzero label");
    }
  }
}

std::vector<std::string> regular_edges_by_label_desc(const ColoredMultigraph& g, const ProperLabeling& lab) {
  std::vector<std::string> ids;
  for (const auto& e : g.edges()) {
    if (is_regular(e)) ids.push_back(e.id);
  }
  std::sort(ids.begin(), ids.end(), [&](const auto& a, const auto& b) { return lab(a) > lab(b); });
  return ids;
}

// ---------------------------------------------------------------------------
// Contracting sets

bool is_contracting_set(const ColoredMultigraph& g, const ContractingSet& cs) {
  std::size_t regular = 0;
  for (const auto& e : g.edges()) {
    if (!is_regular(e)) {
      if (cs.C.count(e.id) || cs.D.count(e.id)) return false;
      continue;
    }
    ++regular;
    if (cs.C.count(e.id) == cs.D.count(e.id)) return false;
  }
  if (cs.C.size() + cs.D.size() != regular) return false;

  const auto& vs = g.vertices();
  DisjointSets ds(vs.size());
  std::vector<bool> removed(g.edge_count(), false);
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (cs.C.count(es[i].id)) {
      const auto a = std::lower_bound(vs.begin(), vs.end(), es[i].u) - vs.begin();
      const auto b = std::lower_bound(vs.begin(), vs.end(), es[i].v) - vs.begin();
      if (!ds.unite(a, b)) return false;
    }
    removed[i] = cs.D.count(es[i].id) > 0;
  }
  return components_without(g, removed) == g.component_count();
}

void enumerate_contracting_sets(const ColoredMultigraph& g, const ProperLabeling& lab,
                                const std::function<void(const ContractingSet&)>& sink) {
  validate_labeling(g, lab);
  const Compact cg(g, lab);
  Classes cls(cg.n());
  ContractingSet cs;
  const auto& es = g.edges();

  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == cg.order.size()) {
      sink(cs);
      return;
    }
    const auto& e = cg.reg_ends[i];
    const std::string& id = es[cg.order[i]].id;
    const bool loop = cls[e.a] == cls[e.b];
    const bool bridge = !loop && is_bridge_at(cg, cls, i);
    if (!loop) {
      cs.C.insert(id);
      cls.merge(e.a, e.b);
      walk(i + 1);
      cls.undo();
      cs.C.erase(id);
    }
    if (!bridge) {
      cs.D.insert(id);
      walk(i + 1);
      cs.D.erase(id);
    }
  };
  walk(0);
}

std::vector<ContractingSet> contracting_sets(const ColoredMultigraph& g, const ProperLabeling& lab) {
  std::vector<ContractingSet> out;
  enumerate_contracting_sets(g, lab, [&](const ContractingSet& cs) { out.push_back(cs); });
  return out;
}

std::string_view activity_name(Activity a) noexcept {
  switch (a) {
    case Activity::IA: return "IA";
    case Activity::II: return "II";
    case Activity::EA: return "EA";
    case Activity::EI: return "EI";
  }
  return "?";
}

std::map<std::string, Activity> activities(const ColoredMultigraph& g, const ProperLabeling& lab,
                                           const ContractingSet& cs) {
  validate_labeling(g, lab);
  require_contracting_set(g, cs);
  const Compact cg(g, lab);
  const auto acts = compact_activities(cg, membership(cg, cs));
  std::map<std::string, Activity> out;
  for (std::size_t i = 0; i < cg.order.size(); ++i) out.emplace(g.edges()[cg.order[i]].id, acts[i]);
  return out;
}

std::map<std::string, Activity> activities_via_cycles(const ColoredMultigraph& g, const ProperLabeling& lab,
                                                      const ContractingSet& cs) {
  validate_labeling(g, lab);
  require_contracting_set(g, cs);
  const auto& es = g.edges();
  const std::size_t base = g.component_count();
  std::map<std::string, Activity> out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!is_regular(es[i])) continue;
    const unsigned li = lab(es[i].id);
    const bool in_c = cs.C.count(es[i].id) > 0;
    // Larger edges from the other side of the partition.
    std::vector<std::size_t> pool;
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (!is_regular(es[j]) || lab(es[j].id) <= li) continue;
      if ((cs.D.count(es[j].id) > 0) == in_c) pool.push_back(j);
    }
    if (in_c) {
      const bool active = some_subset(i, pool, [&](const auto& s) { return is_cocycle(g, s, base); });
      out.emplace(es[i].id, active ? Activity::IA : Activity::II);
    } else {
      const bool active = some_subset(i, pool, [&](const auto& s) { return is_circuit(g, s); });
      out.emplace(es[i].id, active ? Activity::EA : Activity::EI);
    }
  }
  return out;
}

ColoredMultigraph terminal_graph(const ColoredMultigraph& g, const ProperLabeling& lab, const ContractingSet& cs) {
  validate_labeling(g, lab);
  require_contracting_set(g, cs);
  const Compact cg(g, lab);
  return compact_terminal(cg, membership(cg, cs));
}

// ---------------------------------------------------------------------------
// Polynomials

RelPolynomial activity_weight(Activity a, std::string_view color) {
  switch (a) {
    case Activity::IA: return RelPolynomial::var(VarKind::X, color);
    case Activity::II: return RelPolynomial::var(VarKind::x, color);
    case Activity::EA: return RelPolynomial::var(VarKind::Y, color);
    case Activity::EI: return RelPolynomial::var(VarKind::y, color);
  }
  return {};
}

namespace {

VarKind activity_kind(Activity a) {
  switch (a) {
    case Activity::IA: return VarKind::X;
    case Activity::II: return VarKind::x;
    case Activity::EA: return VarKind::Y;
    case Activity::EI: return VarKind::y;
  }
  return VarKind::x;
}

}  // namespace

RelPolynomial universal_tutte_statesum(const ColoredMultigraph& g, const ProperLabeling& lab) {
  const Compact cg(g, lab);
  // Terminal graphs are determined by the contracted vertex classes; cache
  // their keys on that signature.
  std::map<std::vector<std::size_t>, KeyId> key_cache;
  RelPolynomial out;
  enumerate_contracting_sets(g, lab, [&](const ContractingSet& cs) {
    const auto in_c = membership(cg, cs);
    const auto acts = compact_activities(cg, in_c);
    std::map<VarCode, std::uint32_t> powers;
    for (std::size_t i = 0; i < acts.size(); ++i) {
      ++powers[cg.color_base[i] + static_cast<VarCode>(activity_kind(acts[i]))];
    }
    const auto signature = contracted_classes(cg, in_c).raw();
    auto it = key_cache.find(signature);
    if (it == key_cache.end()) {
      it = key_cache.emplace(signature, intern_key(pivot_class_key(compact_terminal(cg, in_c)))).first;
    }
    Monomial m;
    m.powers.assign(powers.begin(), powers.end());
    m.zs.push_back(it->second);
    out.add_term(m, 1);
  });
  return out;
}

RelPolynomial universal_tutte_statesum(const ColoredMultigraph& g) {
  return universal_tutte_statesum(g, canonical_labeling(g));
}

namespace {

RelPolynomial recurse(const ColoredMultigraph& g, const std::vector<std::string>& order, std::size_t i) {
  if (i == order.size()) return RelPolynomial::z(pivot_class_key(g));
  const std::string& id = order[i];
  const std::string& color = g.edge(id).color;
  if (is_loop(g, id)) return RelPolynomial::var(VarKind::Y, color) * recurse(delete_edge(g, id), order, i + 1);
  if (is_bridge(g, id)) return RelPolynomial::var(VarKind::X, color) * recurse(contract(g, id), order, i + 1);
  return RelPolynomial::var(VarKind::y, color) * recurse(delete_edge(g, id), order, i + 1) +
         RelPolynomial::var(VarKind::x, color) * recurse(contract(g, id), order, i + 1);
}

}  // namespace

RelPolynomial tutte_recursive(const ColoredMultigraph& g, const ProperLabeling& lab) {
  validate_labeling(g, lab);
  return recurse(g, regular_edges_by_label_desc(g, lab), 0);
}

RelPolynomial tutte_recursive(const ColoredMultigraph& g) { return tutte_recursive(g, canonical_labeling(g)); }

}  // namespace reltutte
