#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "reltutte/graph.hpp"
#include "reltutte/polynomial.hpp"

namespace reltutte {

/// Regular edges take part in deletion-contraction. Zero edges and the
/// pointed edge do not.
inline bool is_regular(const EdgeRecord& e) noexcept { return !e.zero && !e.pointed; }

/// Edge labels: 0 exactly on non-regular edges, distinct positive values on
/// regular edges.
struct ProperLabeling {
  std::map<std::string, unsigned> labels;

  unsigned operator()(std::string_view edge_id) const;
  bool operator==(const ProperLabeling&) const = default;
};

/// Regular edges sorted by id receive 1..k.
ProperLabeling canonical_labeling(const ColoredMultigraph& g);
/// Throws ImproperLabeling, ColorClash.
void validate_labeling(const ColoredMultigraph& g, const ProperLabeling& lab);

/// Regular edge ids in decreasing label order.
std::vector<std::string> regular_edges_by_label_desc(const ColoredMultigraph& g, const ProperLabeling& lab);

struct ContractingSet {
  std::set<std::string> C;
  std::set<std::string> D;
  bool operator==(const ContractingSet&) const = default;
  auto operator<=>(const ContractingSet&) const = default;
};

/// C acyclic and D free of cocycles, with C and D partitioning the regular edges.
bool is_contracting_set(const ColoredMultigraph& g, const ContractingSet& cs);

/// Streams every contracting set once (decreasing-label branching).
/// Throws ImproperLabeling.
void enumerate_contracting_sets(const ColoredMultigraph& g, const ProperLabeling& lab,
                                const std::function<void(const ContractingSet&)>& sink);
std::vector<ContractingSet> contracting_sets(const ColoredMultigraph& g, const ProperLabeling& lab);

enum class Activity { IA, II, EA, EI };
std::string_view activity_name(Activity a) noexcept;

/// Activities from bridge/loop status after processing all larger edges.
/// Throws InvalidContractingSet.
std::map<std::string, Activity> activities(const ColoredMultigraph& g, const ProperLabeling& lab,
                                           const ContractingSet& cs);
/// Activities from an explicit search for cycles in C + f and cocycles in D + e.
std::map<std::string, Activity> activities_via_cycles(const ColoredMultigraph& g, const ProperLabeling& lab,
                                                      const ContractingSet& cs);

/// Contract C and delete D in decreasing label order. Throws InvalidContractingSet.
ColoredMultigraph terminal_graph(const ColoredMultigraph& g, const ProperLabeling& lab, const ContractingSet& cs);

/// Weight variable for an edge of color `color` with activity `a`.
RelPolynomial activity_weight(Activity a, std::string_view color);

/// Sum over contracting sets of edge weights times z of the terminal graph.
/// Throws ImproperLabeling, ColorClash.
RelPolynomial universal_tutte_statesum(const ColoredMultigraph& g, const ProperLabeling& lab);
RelPolynomial universal_tutte_statesum(const ColoredMultigraph& g);

/// Deletion-contraction on the regular edge of largest label. Throws ColorClash.
RelPolynomial tutte_recursive(const ColoredMultigraph& g);
RelPolynomial tutte_recursive(const ColoredMultigraph& g, const ProperLabeling& lab);

}  // namespace reltutte
