#include "suite.hpp"

#include <atomic>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "reltutte/error.hpp"
#include "reltutte/graph_io.hpp"
#include "reltutte/pointed.hpp"
#include "reltutte/random_instances.hpp"
#include "reltutte/relative_tutte.hpp"
#include "reltutte/rng.hpp"
#include "reltutte/tensor.hpp"

namespace reltutte::cli {

namespace {

struct InstanceResult {
  bool ok = true;
  std::string report;
};

using InstanceFn = std::function<InstanceResult(Rng&, std::uint64_t)>;

std::string graph_block(const std::string& title, const ColoredMultigraph& g) {
  return "# " + title + "\n" + format_graph(g);
}

RelPolynomial var(VarKind k, const std::string& c) { return RelPolynomial::var(k, c); }

InstanceResult labeling_independence(Rng& rng, std::uint64_t seed, unsigned trials) {
  const RandomGraphSpec spec{1, 5, 1, 6, 1, 3, {"mu", "rho"}, {"z0", "z1"}, true, true};
  const auto g = random_graph(rng, spec);
  const auto a = universal_tutte_statesum(g, random_labeling(g, rng));
  const auto b = universal_tutte_statesum(g, random_labeling(g, rng));
  if (equal_mod_ideal(a, b, trials, seed)) return {};
  return {false, graph_block("graph", g) + "# first labeling: " + a.str() + "\n# second labeling: " + b.str() + "\n"};
}

InstanceResult corrected_identities(Rng& rng, std::uint64_t seed, unsigned trials) {
  const RandomGraphSpec spec{2, 4, 1, 5, 0, 2, {"mu", "rho"}, {"z0"}, true, true};
  const auto pg = random_pointed_graph(rng, spec);
  const auto pp = pointed_polys(pg);
  std::set<std::string> colors{"lam"};
  for (const auto& e : pg.graph.edges())
    if (is_regular(e)) colors.insert(e.color);
  for (const auto& mu : colors) {
    using enum VarKind;
    const bool first = equal_mod_ideal(var(x, mu) * (pp.T_slash - pp.T_C), (var(Y, mu) - var(y, mu)) * pp.T_L, trials, seed);
    const bool second = equal_mod_ideal(var(y, mu) * (pp.T_minus - pp.T_L), (var(X, mu) - var(x, mu)) * pp.T_C, trials, seed);
    if (!first || !second)
      return {false, graph_block("pointed graph", pg.graph) + "# color " + mu + (first ? "" : ": contraction identity fails") +
                         (second ? "" : ": deletion identity fails") + "\n"};
  }
  return {};
}

InstanceResult projection_partition(Rng& rng, std::uint64_t, unsigned) {
  const RandomGraphSpec spec{2, 4, 1, 5, 0, 3, {"mu"}, {"z0", "z1"}, true, true};
  const auto pg = random_pointed_graph(rng, spec);
  const auto pp = pointed_polys(pg);
  if (pi_C(pp.U) + pi_L(pp.U) + pi_0(pp.U) == pp.U) return {};
  return {false, graph_block("pointed graph", pg.graph)};
}

RandomInstanceSpec small_instances() {
  RandomInstanceSpec s;
  s.g1 = RandomGraphSpec{1, 3, 1, 4, 0, 1, {"mu"}, {"z1"}, true, true};
  s.g2 = RandomGraphSpec{2, 3, 1, 3, 0, 2, {"rho"}, {"z0"}, true, true};
  s.min_lambda = 1;
  s.max_lambda = 2;
  return s;
}

InstanceResult partition_bijection(Rng& rng, std::uint64_t, unsigned) {
  const auto ti = random_tensor_instance(rng, small_instances());
  const auto product = tensor_product(ti);
  std::size_t product_sets = 0;
  bool round_trip = true;
  enumerate_contracting_sets(product, product_labeling(ti, product), [&](const ContractingSet& cs) {
    ++product_sets;
    const auto ip = induced_partition(ti, cs);
    if (!(compose_contracting_set(ti, ip.cs1, ip.S, ip.per_copy) == cs)) round_trip = false;
  });
  auto by_type = pointed_sets_by_type(ti.g2);
  const auto lambdas = ti.lambda_edges();
  std::size_t counted = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lambdas.size()); ++mask) {
    std::set<std::string> S;
    for (std::size_t j = 0; j < lambdas.size(); ++j)
      if (mask >> j & 1U) S.insert(lambdas[j]);
    const auto g1s = S.empty() ? ti.g1 : recolor_subset(ti.g1, S);
    enumerate_contracting_sets(g1s, canonical_labeling(g1s), [&](const ContractingSet& cs1) {
      std::size_t ways = 1;
      for (const auto& f : lambdas) {
        const PairType t = S.count(f) ? PairType::TypeZero : cs1.C.count(f) ? PairType::TypeC : PairType::TypeD;
        ways *= by_type[t].size();
      }
      counted += ways;
    });
  }
  if (round_trip && counted == product_sets) return {};
  std::ostringstream msg;
  msg << graph_block("g1", ti.g1) << graph_block("g2", ti.g2.graph) << "# product sets " << product_sets << ", counted "
      << counted << (round_trip ? "" : ", round trip fails") << "\n";
  return {false, msg.str()};
}

InstanceResult tensor_formula(Rng& rng, std::uint64_t seed, unsigned trials, bool inject_fault) {
  RandomInstanceSpec spec;
  spec.g1 = RandomGraphSpec{1, 4, 1, 4, 1, 2, {"mu"}, {"z1"}, true, true};
  spec.g2 = RandomGraphSpec{2, 3, 1, 3, 1, 2, {"rho"}, {"z0"}, true, true};
  spec.min_lambda = 1;
  spec.max_lambda = 2;
  const auto ti = random_tensor_instance(rng, spec);
  const auto product = tensor_product(ti);
  const auto lhs = universal_tutte_statesum(product, product_labeling(ti, product));
  auto pp = pointed_polys(ti.g2);
  if (inject_fault) std::swap(pp.T_slash, pp.T_minus);
  const auto rhs = theorem_6_5_rhs(ti, pp);
  if (equal_mod_ideal(lhs, rhs, trials, seed)) return {};
  return {false, graph_block("g1 (lambda = " + ti.lambda + ")", ti.g1) + graph_block("g2", ti.g2.graph) + "# lhs: " +
                     lhs.str() + "\n# rhs: " + rhs.str() + "\n"};
}

SuiteOutcome run_one(const std::string& name, std::uint64_t salt, const SuiteConfig& cfg, const InstanceFn& fn) {
  const int n = std::max(cfg.instances, 0);
  std::vector<InstanceResult> results(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      const std::uint64_t s = splitmix64(cfg.seed ^ splitmix64(salt + static_cast<std::uint64_t>(i)));
      Rng rng(s);
      try {
        results[static_cast<std::size_t>(i)] = fn(rng, s);
      } catch (const Error& e) {
        results[static_cast<std::size_t>(i)] = {false, std::string("# error: ") + e.what() + "\n"};
      } catch (const std::exception& e) {
        results[static_cast<std::size_t>(i)] = {false, std::string("# internal error: ") + e.what() + "\n"};
      }
    }
  };
  const unsigned jobs = std::max(1U, std::min(cfg.jobs, static_cast<unsigned>(std::max(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteOutcome out{name, 0, 0, {}};
  for (int i = 0; i < n; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    if (r.ok) {
      ++out.passed;
      continue;
    }
    if (out.failed++ == 0) out.first_counterexample = "# instance " + std::to_string(i) + "\n" + r.report;
  }
  return out;
}

}  // namespace

std::vector<SuiteOutcome> run_suites(const SuiteConfig& cfg) {
  const unsigned t = cfg.trials;
  return {
      run_one("labeling-independence", 1, cfg, [t](Rng& r, std::uint64_t s) { return labeling_independence(r, s, t); }),
      run_one("corrected-identities", 2, cfg, [t](Rng& r, std::uint64_t s) { return corrected_identities(r, s, t); }),
      run_one("projection-partition", 3, cfg, [t](Rng& r, std::uint64_t s) { return projection_partition(r, s, t); }),
      run_one("partition-bijection", 4, cfg, [t](Rng& r, std::uint64_t s) { return partition_bijection(r, s, t); }),
      run_one("tensor-formula", 5, cfg,
              [t, f = cfg.inject_fault](Rng& r, std::uint64_t s) { return tensor_formula(r, s, t, f); }),
  };
}

void print_text(std::ostream& out, const SuiteConfig& cfg, const std::vector<SuiteOutcome>& outcomes) {
  out << "# suite seed=" << cfg.seed << " trials=" << cfg.trials << " instances=" << cfg.instances << "\n";
  if (cfg.instances <= 0) out << "warning: 0 instances, every suite passes vacuously\n";
  for (const auto& o : outcomes) {
    out << (o.failed ? "FAIL " : "PASS ") << o.name << ": " << o.passed << " passed, " << o.failed << " failed\n";
  }
  for (const auto& o : outcomes) {
    if (o.failed) out << "counterexample for " << o.name << ":\n" << o.first_counterexample;
  }
}

void print_jsonl(std::ostream& out, const SuiteConfig& cfg, const std::vector<SuiteOutcome>& outcomes) {
  using nlohmann::ordered_json;
  ordered_json head;
  head["name"] = "run";
  head["command"] = "suite";
  head["seed"] = cfg.seed;
  head["trials"] = cfg.trials;
  head["instances"] = cfg.instances;
  out << head.dump() << "\n";
  for (const auto& o : outcomes) {
    ordered_json j;
    j["name"] = o.name;
    j["passed"] = o.passed;
    j["failed"] = o.failed;
    if (o.failed) j["counterexample"] = o.first_counterexample;
    out << j.dump() << "\n";
  }
}

}  // namespace reltutte::cli
