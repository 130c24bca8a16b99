#include "reltutte/tensor.hpp"

#include <algorithm>
#include <chrono>

#include "reltutte/error.hpp"
#include "reltutte/pivot_key.hpp"

namespace reltutte {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::InstanceInvalid, what); }

}  // namespace

// ---------------------------------------------------------------------------
// Instances

TensorInstance TensorInstance::make(ColoredMultigraph g1, ColoredMultigraph g2, std::string lambda) {
  PointedGraph pg;
  try {
    pg = PointedGraph::from(std::move(g2));
  } catch (const Error& e) {
    invalid(std::string("g2: ") + e.what());
  }
  TensorInstance ti{std::move(g1), std::move(pg), std::move(lambda)};
  validate_instance(ti);
  return ti;
}

std::vector<std::string> TensorInstance::lambda_edges() const {
  std::vector<std::string> out;
  for (const auto& e : g1.edges()) {
    if (is_regular(e) && e.color == lambda) out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate_instance(const TensorInstance& ti) {
  if (ti.lambda.empty() || ti.lambda == kPointedColor || ti.lambda == kRecolorZero)
    invalid("lambda must be an ordinary color");
  try {
    validate_colors(ti.g1);
    validate_colors(ti.g2.graph);
  } catch (const Error& e) {
    invalid(e.what());
  }
  if (!ti.g1.is_connected()) invalid("g1 must be connected");
  if (!ti.g2.graph.is_connected()) invalid("g2 must be connected");
  std::set<std::string> regular, zero;
  for (const auto& e : ti.g1.edges()) {
    if (e.pointed || e.color == kPointedColor) invalid("g1 must not use the pointed color");
    if (e.color == kRecolorZero) invalid("g1 must not use the reserved zero color");
    if (e.zero && e.color == ti.lambda) invalid("lambda appears on a zero edge of g1");
    (e.zero ? zero : regular).insert(e.color);
  }
  for (const auto& e : ti.g2.graph.edges()) {
    if (e.pointed) continue;
    if (e.color == kPointedColor) invalid("nu must appear only on the pointed edge of g2");
    if (e.color == kRecolorZero) invalid("g2 must not use the reserved zero color");
    if (e.color == ti.lambda) invalid("g2 must not contain lambda-colored edges");
    (e.zero ? zero : regular).insert(e.color);
  }
  for (const auto& c : regular) {
    if (zero.count(c)) invalid("color '" + c + "' is regular in one graph and zero in the other");
  }
  const auto& e = ti.g2.graph.edge(ti.g2.pointed);
  if (is_loop(ti.g2.graph, e.id) || is_bridge(ti.g2.graph, e.id)) invalid("pointed edge is a loop or a bridge");
}

std::string copy_edge_id(const std::string& f, const std::string& edge) { return f + "/" + edge; }

ColoredMultigraph tensor_product(const TensorInstance& ti, bool flip) {
  ColoredMultigraph out = ti.g1;
  const std::string& e = ti.g2.pointed;
  for (const auto& f : ti.lambda_edges()) {
    const ColoredMultigraph patch = relabeled(ti.g2.graph, 0, f + "/");
    const std::string pe = copy_edge_id(f, e);
    if (!out.edge(f).is_loop()) {
      out = two_sum(out, f, patch, pe, flip);
      continue;
    }
    // Loop: both endpoints of e collapse onto the loop vertex.
    const int at = out.edge(f).u;
    const auto [p, q] = patch.edge(pe).ordered();
    std::map<int, int> vmap{{p, at}, {q, at}};
    int next = out.max_vertex() + 1;
    for (int v : patch.vertices()) {
      if (!vmap.count(v)) vmap[v] = next++;
    }
    ColoredMultigraph glued;
    for (int v : out.vertices()) glued.add_vertex(v);
    for (const auto& g : out.edges()) {
      if (g.id != f) glued.add_edge(g);
    }
    for (const auto& [from, to] : vmap) glued.add_vertex(to);
    for (auto g : patch.edges()) {
      if (g.id == pe) continue;
      g.u = vmap.at(g.u);
      g.v = vmap.at(g.v);
      glued.add_edge(std::move(g));
    }
    out = std::move(glued);
  }
  return out;
}

ProperLabeling product_labeling(const TensorInstance& ti, const ColoredMultigraph& product) {
  const unsigned m = static_cast<unsigned>(ti.g2.graph.edge_count());
  const ProperLabeling lab1 = canonical_labeling(ti.g1);
  const ProperLabeling lab2 = canonical_labeling(ti.g2.graph);
  const auto lambdas = ti.lambda_edges();
  ProperLabeling out;
  for (const auto& e : product.edges()) {
    if (!is_regular(e)) {
      out.labels[e.id] = 0;
      continue;
    }
    if (ti.g1.find_edge(e.id)) {
      out.labels[e.id] = lab1(e.id) * m;
      continue;
    }
    for (const auto& f : lambdas) {
      if (e.id.size() > f.size() && e.id.compare(0, f.size() + 1, f + "/") == 0) {
        out.labels[e.id] = (lab1(f) - 1) * m + lab2(e.id.substr(f.size() + 1));
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Induced partitions

InducedPartition induced_partition(const TensorInstance& ti, const ContractingSet& cs) {
  const ColoredMultigraph product = tensor_product(ti);
  if (!is_contracting_set(product, cs)) throw Error(Errc::InvalidContractingSet, "not a contracting set of the product");
  InducedPartition out;
  const auto lambdas = ti.lambda_edges();
  const std::set<std::string> lambda_set(lambdas.begin(), lambdas.end());
  for (const auto& e : ti.g1.edges()) {
    if (!is_regular(e) || lambda_set.count(e.id)) continue;
    (cs.C.count(e.id) ? out.cs1.C : out.cs1.D).insert(e.id);
  }
  for (const auto& f : lambdas) {
    ContractingSet local;
    for (const auto& g : ti.g2.graph.edges()) {
      if (!is_regular(g)) continue;
      const std::string id = copy_edge_id(f, g.id);
      if (cs.C.count(id)) local.C.insert(g.id);
      if (cs.D.count(id)) local.D.insert(g.id);
    }
    if (!is_contracting_set(ti.g2.graph, local))
      throw Error(Errc::InternalInvariant, "restriction to the copy of " + f + " is not a contracting set");
    const PairType t = classify_pair(ti.g2, local);
    out.types[f] = t;
    out.per_copy[f] = std::move(local);
    switch (t) {
      case PairType::TypeC: out.cs1.C.insert(f); break;
      case PairType::TypeD: out.cs1.D.insert(f); break;
      case PairType::TypeZero: out.S.insert(f); break;
    }
  }
  const ColoredMultigraph g1s = out.S.empty() ? ti.g1 : recolor_subset(ti.g1, out.S);
  if (!is_contracting_set(g1s, out.cs1))
    throw Error(Errc::InternalInvariant, "induced set is not a contracting set of g1");
  return out;
}

ContractingSet compose_contracting_set(const TensorInstance& ti, const ContractingSet& cs1,
                                       const std::set<std::string>& S,
                                       const std::map<std::string, ContractingSet>& per_copy) {
  const auto lambdas = ti.lambda_edges();
  const std::set<std::string> lambda_set(lambdas.begin(), lambdas.end());
  for (const auto& f : S) {
    if (!lambda_set.count(f)) throw Error(Errc::InvalidPartition, "S contains non-lambda edge " + f);
  }
  const ColoredMultigraph g1s = S.empty() ? ti.g1 : recolor_subset(ti.g1, S);
  if (!is_contracting_set(g1s, cs1)) throw Error(Errc::InvalidPartition, "(C1, D1) is not a contracting set of g1");

  ContractingSet out;
  for (const auto& e : ti.g1.edges()) {
    if (!is_regular(e) || lambda_set.count(e.id)) continue;
    (cs1.C.count(e.id) ? out.C : out.D).insert(e.id);
  }
  for (const auto& f : lambdas) {
    auto it = per_copy.find(f);
    if (it == per_copy.end()) throw Error(Errc::InvalidPartition, "no choice for the copy of " + f);
    if (!is_contracting_set(ti.g2.graph, it->second))
      throw Error(Errc::InvalidPartition, "choice for " + f + " is not a contracting set of g2");
    const PairType want = cs1.C.count(f) ? PairType::TypeC : cs1.D.count(f) ? PairType::TypeD : PairType::TypeZero;
    if (classify_pair(ti.g2, it->second) != want) throw Error(Errc::TypeMismatch, "choice for " + f + " has the wrong type");
    for (const auto& g : it->second.C) out.C.insert(copy_edge_id(f, g));
    for (const auto& g : it->second.D) out.D.insert(copy_edge_id(f, g));
  }
  if (!is_contracting_set(tensor_product(ti), out))
    throw Error(Errc::InternalInvariant, "composed set is not a contracting set of the product");
  return out;
}

std::map<PairType, std::vector<ContractingSet>> pointed_sets_by_type(const PointedGraph& pg) {
  std::map<PairType, std::vector<ContractingSet>> out;
  out[PairType::TypeC];
  out[PairType::TypeD];
  out[PairType::TypeZero];
  enumerate_contracting_sets(pg.graph, canonical_labeling(pg.graph),
                             [&](const ContractingSet& cs) { out[classify_pair(pg, cs)].push_back(cs); });
  return out;
}

// ---------------------------------------------------------------------------
// Brylawski-style maps

RelPolynomial beta_lambda(const RelPolynomial& p, const PointedPolys& pp, std::string_view lambda) {
  const ColorId c = intern_color(lambda);
  return substitute(p, [&](VarCode v) -> const RelPolynomial* {
    if (var_color(v) != c) return nullptr;
    switch (var_kind(v)) {
      case VarKind::X: return &pp.T_minus;
      case VarKind::x: return &pp.T_L;
      case VarKind::Y: return &pp.T_slash;
      case VarKind::y: return &pp.T_C;
    }
    return nullptr;
  });
}

RelPolynomial sigma(const RelPolynomial& p) {
  RelPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    PivotClassKey merged;
    for (KeyId k : m.zs) merged = merged.merged(key_of(k));
    Monomial n;
    n.powers = m.powers;
    n.zs.push_back(intern_key(merged));
    out.add_term(n, c);
  }
  return out;
}

namespace {

struct T0Term {
  RelPolynomial coeff;
  ColoredMultigraph graph;  // representative of the key
  std::string nu;           // its nu-edge
};

std::vector<T0Term> t0_terms(const RelPolynomial& t0) {
  if (!t0.is_z_linear()) throw Error(Errc::NotLinearInZ, "T_0 is not linear in z-symbols");
  std::map<KeyId, RelPolynomial> grouped;
  for (const auto& [m, c] : t0.terms()) {
    Monomial vars;
    vars.powers = m.powers;
    grouped[m.zs.front()].add_term(vars, c);
  }
  std::vector<T0Term> out;
  for (auto& [k, coeff] : grouped) {
    const auto& key = key_of(k);
    if (key.nu_edge_count() != 1) throw Error(Errc::InternalInvariant, "T_0 key without a single nu-edge");
    T0Term t{std::move(coeff), key.representative(), {}};
    for (const auto& e : t.graph.edges()) {
      if (e.color == kPointedColor) t.nu = e.id;
    }
    out.push_back(std::move(t));
  }
  return out;
}

RelPolynomial beta_zero_key(KeyId k, const std::vector<T0Term>& terms, bool reverse_order) {
  const auto& key = key_of(k);
  const std::size_t n_l0 = key.lambda0_edge_count();
  if (n_l0 == 0) return RelPolynomial::z(k);
  if (terms.empty()) return {};
  const ColoredMultigraph rep = key.representative();
  std::vector<std::string> l0;
  for (const auto& e : rep.edges()) {
    if (e.color == kRecolorZero) l0.push_back(e.id);
  }
  std::sort(l0.begin(), l0.end());
  if (reverse_order) std::reverse(l0.begin(), l0.end());

  RelPolynomial out;
  std::vector<std::size_t> pick(l0.size(), 0);
  while (true) {
    ColoredMultigraph g = rep;
    std::vector<std::string> extra_blocks;
    RelPolynomial coeff = RelPolynomial::constant(1);
    for (std::size_t i = 0; i < l0.size(); ++i) {
      const T0Term& t = terms[pick[i]];
      coeff = coeff * t.coeff;
      const std::string prefix = "q" + std::to_string(i) + ".";
      const ColoredMultigraph patch = relabeled(t.graph, 0, prefix);
      if (g.edge(l0[i]).is_loop()) {
        // Splicing the loop vertex with the contracted patch: only the block
        // multiset matters, so the patch blocks are added separately.
        g = delete_edge(g, l0[i]);
        const PivotClassKey contracted = pivot_class_key(contract(patch, prefix + t.nu));
        for (const auto& b : contracted.block_codes()) extra_blocks.push_back(b);
      } else {
        g = two_sum(g, l0[i], patch, prefix + t.nu);
      }
    }
    const PivotClassKey result = pivot_class_key(g).merged(PivotClassKey(std::move(extra_blocks)));
    out += coeff * RelPolynomial::z(result);

    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == terms.size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
  return out;
}

}  // namespace

RelPolynomial beta_zero(const RelPolynomial& p, const RelPolynomial& t0, bool reverse_order) {
  const auto terms = t0_terms(t0);
  return map_z_linear(p, [&](KeyId k) { return beta_zero_key(k, terms, reverse_order); });
}

RelPolynomial theorem_6_5_rhs(const TensorInstance& ti, const PointedPolys& pp) {
  const auto lambdas = ti.lambda_edges();
  const auto terms = t0_terms(pp.T_0);
  std::map<KeyId, RelPolynomial> cache;
  RelPolynomial out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lambdas.size()); ++mask) {
    std::set<std::string> S;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (mask >> i & 1U) S.insert(lambdas[i]);
    }
    const ColoredMultigraph g1s = S.empty() ? ti.g1 : recolor_subset(ti.g1, S);
    const RelPolynomial t = universal_tutte_statesum(g1s);
    const RelPolynomial spliced = sigma(beta_lambda(t, pp, ti.lambda));
    out += map_z_linear(spliced, [&](KeyId k) {
      auto it = cache.find(k);
      if (it == cache.end()) it = cache.emplace(k, beta_zero_key(k, terms, false)).first;
      return it->second;
    });
  }
  return out;
}

RelPolynomial theorem_6_5_rhs(const TensorInstance& ti) { return theorem_6_5_rhs(ti, pointed_polys(ti.g2)); }

TensorReport verify_tensor_formula(const TensorInstance& ti, unsigned trials, std::uint64_t seed, bool flip) {
  using Clock = std::chrono::steady_clock;
  TensorReport r;
  auto t0 = Clock::now();
  const ColoredMultigraph product = tensor_product(ti, flip);
  const RelPolynomial lhs = universal_tutte_statesum(product, product_labeling(ti, product));
  auto t1 = Clock::now();
  const RelPolynomial rhs = theorem_6_5_rhs(ti);
  auto t2 = Clock::now();
  r.equal_mod_ideal = equal_mod_ideal(lhs, rhs, trials, seed);
  r.structurally_equal = lhs == rhs;
  r.lhs = lhs.str();
  r.rhs = rhs.str();
  r.lhs_terms = lhs.size();
  r.rhs_terms = rhs.size();
  r.lhs_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  r.rhs_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  return r;
}

}  // namespace reltutte
