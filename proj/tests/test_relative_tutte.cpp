#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "reltutte/error.hpp"
#include "reltutte/random_instances.hpp"
#include "reltutte/relative_tutte.hpp"

using namespace reltutte;
using namespace testing_helpers;

namespace {

const char* kTriangle = "edge 1 0 1 color=lam\nedge 2 1 2 color=lam\nedge 3 2 0 color=lam\n";
const char* kParallel = "edge a 0 1 color=mu\nedge h 0 1 color=z0 zero\n";

ContractingSet cs(std::set<std::string> c, std::set<std::string> d) { return {std::move(c), std::move(d)}; }

/// Def 2.1 by brute force over all subsets of regular edges.
std::set<std::set<std::string>> brute_contracting_sets(const ColoredMultigraph& g) {
  std::vector<std::string> reg;
  for (const auto& e : g.edges())
    if (is_regular(e)) reg.push_back(e.id);
  std::set<std::set<std::string>> out;
  const std::size_t base = g.component_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << reg.size()); ++mask) {
    ColoredMultigraph c_only, rest;
    for (int v : g.vertices()) {
      c_only.add_vertex(v);
      rest.add_vertex(v);
    }
    std::set<std::string> C;
    for (std::size_t i = 0; i < reg.size(); ++i)
      if (mask >> i & 1U) C.insert(reg[i]);
    int c_edges = 0;
    for (const auto& e : g.edges()) {
      const bool is_c = C.count(e.id) > 0;
      const bool is_d = is_regular(e) && !is_c;
      if (is_c) {
        c_only.add_edge(e);
        ++c_edges;
      }
      if (!is_d) rest.add_edge(e);
    }
    const bool acyclic = c_only.vertex_count() - c_only.component_count() == static_cast<std::size_t>(c_edges);
    const bool no_cocycle = rest.component_count() == base;
    if (acyclic && no_cocycle) out.insert(C);
  }
  return out;
}

}  // namespace

TEST_CASE("canonical labeling and validation") {
  auto g = G("edge b 0 1 color=mu\nedge a 1 2 color=mu\nedge h 0 2 color=z0 zero\n");
  auto lab = canonical_labeling(g);
  CHECK(lab("a") == 1);
  CHECK(lab("b") == 2);
  CHECK(lab("h") == 0);
  validate_labeling(g, lab);
  auto bad = lab;
  bad.labels["h"] = 3;
  CHECK_THROWS_AS(validate_labeling(g, bad), Error);
  auto dup = lab;
  dup.labels["a"] = 2;
  try {
    validate_labeling(g, dup);
    FAIL("expected ImproperLabeling");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ImproperLabeling);
  }
  try {
    universal_tutte_statesum(G("edge a 0 1 color=c\nedge b 0 1 color=c zero\n"));
    FAIL("expected ColorClash");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ColorClash);
  }
}

TEST_CASE("contracting set enumeration examples") {
  CHECK(contracting_sets(G(kTriangle), canonical_labeling(G(kTriangle))).size() == 3);
  auto par = G(kParallel);
  auto sets = contracting_sets(par, canonical_labeling(par));
  REQUIRE(sets.size() == 2);
  CHECK(sets[0] == cs({"a"}, {}));
  CHECK(sets[1] == cs({}, {"a"}));
  auto bridge = G("edge b 0 1 color=lam\n");
  auto bs = contracting_sets(bridge, canonical_labeling(bridge));
  REQUIRE(bs.size() == 1);
  CHECK(bs[0] == cs({"b"}, {}));
}

TEST_CASE("enumeration matches the subset oracle") {
  Rng rng(31);
  RandomGraphSpec spec{1, 5, 0, 6, 0, 3, {"a", "b"}, {"z0"}, false, true};
  for (int i = 0; i < 150; ++i) {
    auto g = random_graph(rng, spec);
    auto lab = random_labeling(g, rng);
    std::set<std::set<std::string>> ours;
    enumerate_contracting_sets(g, lab, [&](const ContractingSet& c) {
      CHECK(is_contracting_set(g, c));
      CHECK(ours.insert(c.C).second);
    });
    CHECK(ours == brute_contracting_sets(g));
  }
}

TEST_CASE("activities on the triangle") {
  auto g = G(kTriangle);
  auto lab = canonical_labeling(g);
  auto a = activities(g, lab, cs({"2", "3"}, {"1"}));
  CHECK(a.at("1") == Activity::EA);
  CHECK(a.at("2") == Activity::II);
  CHECK(a.at("3") == Activity::II);
  CHECK(activities_via_cycles(g, lab, cs({"2", "3"}, {"1"})) == a);
  auto b = activities(g, lab, cs({"1", "2"}, {"3"}));
  CHECK(b.at("3") == Activity::EI);
  CHECK(b.at("1") == Activity::IA);
  CHECK(b.at("2") == Activity::IA);

  auto single = G("edge b 0 1 color=lam\n");
  CHECK(activities(single, canonical_labeling(single), cs({"b"}, {})).at("b") == Activity::IA);

  auto par = G(kParallel);
  CHECK(activities_via_cycles(par, canonical_labeling(par), cs({"a"}, {})).at("a") == Activity::II);
  CHECK(activities(par, canonical_labeling(par), cs({"a"}, {})).at("a") == Activity::II);

  try {
    activities(g, lab, cs({"1", "2", "3"}, {}));
    FAIL("expected InvalidContractingSet");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidContractingSet);
  }
}

TEST_CASE("activity formulations agree") {
  Rng rng(41);
  RandomGraphSpec spec{1, 5, 0, 6, 0, 3, {"a", "b"}, {"z0"}, false, true};
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, spec);
    auto lab = random_labeling(g, rng);
    enumerate_contracting_sets(g, lab, [&](const ContractingSet& c) {
      CHECK(activities(g, lab, c) == activities_via_cycles(g, lab, c));
    });
  }
}

TEST_CASE("terminal graphs") {
  auto tri = G(kTriangle);
  for (const auto& c : contracting_sets(tri, canonical_labeling(tri))) {
    auto h = terminal_graph(tri, canonical_labeling(tri), c);
    CHECK(h.vertex_count() == 1);
    CHECK(h.edge_count() == 0);
  }
  auto par = G(kParallel);
  auto lab = canonical_labeling(par);
  CHECK(pivot_class_key(terminal_graph(par, lab, cs({"a"}, {}))).str() == "z{loop(z0)}");
  CHECK(pivot_class_key(terminal_graph(par, lab, cs({}, {"a"}))).str() == "z{bridge(z0)}");
}

TEST_CASE("state sum examples") {
  CHECK(universal_tutte_statesum(G("edge b 0 1 color=lam\n")) == X("lam") * Z({}));
  CHECK(universal_tutte_statesum(G("edge b 0 1 color=lam\n")).str() == "X[lam]\xC2\xB7z{}");
  CHECK(universal_tutte_statesum(G("edge l 0 0 color=lam\n")) == Y("lam") * Z({}));
  auto par = universal_tutte_statesum(G(kParallel));
  CHECK(par == x("mu") * Z({"loop(z0)"}) + y("mu") * Z({"bridge(z0)"}));
  auto tri = universal_tutte_statesum(G(kTriangle));
  CHECK(tri == (X("lam").pow(2) * y("lam") + X("lam") * x("lam") * y("lam") + x("lam").pow(2) * Y("lam")) * Z({}));
  CHECK(tri.is_z_linear());
}

TEST_CASE("recursion examples") {
  CHECK(tutte_recursive(G("edge h 0 1 color=z0 zero\n")) == Z({"bridge(z0)"}));
  CHECK(tutte_recursive(G(kTriangle)) == universal_tutte_statesum(G(kTriangle)));
  CHECK(tutte_recursive(G(kParallel)) == x("mu") * Z({"loop(z0)"}) + y("mu") * Z({"bridge(z0)"}));
}

TEST_CASE("state sum equals recursion exactly") {
  Rng rng(51);
  RandomGraphSpec spec{1, 5, 0, 6, 0, 2, {"a", "b"}, {"z0", "z1"}, false, true};
  for (int i = 0; i < 150; ++i) {
    auto g = random_graph(rng, spec);
    auto lab = random_labeling(g, rng);
    auto s = universal_tutte_statesum(g, lab);
    CHECK(s == tutte_recursive(g, lab));
    CHECK(s.is_z_linear());
  }
}

TEST_CASE("contracting-set count equals spanning-tree count without zero edges") {
  Rng rng(61);
  RandomGraphSpec spec{1, 5, 1, 7, 0, 0, {"a"}, {"z0"}, true, true};
  for (int i = 0; i < 150; ++i) {
    auto g = random_graph(rng, spec);
    CHECK(mpz_class(contracting_sets(g, canonical_labeling(g)).size()) == oracle::spanning_tree_count(g));
  }
}

TEST_CASE("one color without zero edges reduces to the classical Tutte polynomial") {
  Rng rng(71);
  RandomGraphSpec spec{1, 5, 1, 7, 0, 0, {"a"}, {"z0"}, true, true};
  const RelPolynomial one = C(1);
  const VarCode cx = var_code(intern_color("a"), VarKind::x);
  const VarCode cy = var_code(intern_color("a"), VarKind::y);
  const VarCode cX = var_code(intern_color("a"), VarKind::X);
  const VarCode cY = var_code(intern_color("a"), VarKind::Y);
  for (int i = 0; i < 120; ++i) {
    auto g = random_graph(rng, spec);
    auto t = universal_tutte_statesum(g, random_labeling(g, rng));
    auto s = substitute(t, [&](VarCode v) -> const RelPolynomial* { return v == cx || v == cy ? &one : nullptr; });
    std::map<std::pair<int, int>, mpz_class> got;
    for (const auto& [m, c] : s.terms()) {
      REQUIRE(m.zs.size() == 1);
      CHECK(key_of(m.zs[0]).is_point());
      int a = 0, b = 0;
      for (const auto& [v, e] : m.powers) {
        if (v == cX) a = static_cast<int>(e);
        if (v == cY) b = static_cast<int>(e);
      }
      got[{a, b}] += c;
    }
    CHECK(got == oracle::classical_tutte(g));
  }
}

TEST_CASE("psi specialization of the parallel pair") {
  auto t = universal_tutte_statesum(G(kParallel));
  auto v = specialize_psi(t, [](const PivotClassKey& k) {
    return std::optional<RelPolynomial>(k.str() == "z{loop(z0)}" ? C(3) : C(5));
  });
  CHECK(v == x("mu").scaled(3) + y("mu").scaled(5));
}
