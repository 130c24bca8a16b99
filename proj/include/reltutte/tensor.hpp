#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "reltutte/graph.hpp"
#include "reltutte/pointed.hpp"
#include "reltutte/polynomial.hpp"
#include "reltutte/relative_tutte.hpp"

namespace reltutte {

/// g1 with lambda-colored regular edges and a pointed graph g2 that replaces
/// each of them.
struct TensorInstance {
  ColoredMultigraph g1;
  PointedGraph g2;
  std::string lambda;

  /// Throws InstanceInvalid.
  static TensorInstance make(ColoredMultigraph g1, ColoredMultigraph g2, std::string lambda);
  /// Sorted ids of the lambda-edges of g1.
  std::vector<std::string> lambda_edges() const;
};

/// Throws InstanceInvalid.
void validate_instance(const TensorInstance& ti);

/// Id of the copy of g2-edge `edge` that replaces lambda-edge f.
std::string copy_edge_id(const std::string& f, const std::string& edge);

/// Every lambda-edge f replaced by a copy of g2 - e, glued at e's endpoints.
/// A lambda-loop identifies e's endpoints. `flip` reverses the gluing.
ColoredMultigraph tensor_product(const TensorInstance& ti, bool flip = false);

/// Labels with regular g1 edges at multiples of |E(g2)| and each copy filling
/// the block of labels just below its edge.
ProperLabeling product_labeling(const TensorInstance& ti, const ColoredMultigraph& product);

struct InducedPartition {
  ContractingSet cs1;              // (C1, D1) on the regular edges of g1 outside S
  std::set<std::string> S;         // lambda-edges whose copy has type zero
  std::map<std::string, ContractingSet> per_copy;  // in g2 edge ids
  std::map<std::string, PairType> types;

  bool operator==(const InducedPartition&) const = default;
};

/// Throws InvalidContractingSet; InternalInvariant if a restriction or the
/// induced set fails to be a contracting set.
InducedPartition induced_partition(const TensorInstance& ti, const ContractingSet& cs);

/// Inverse of induced_partition. Throws InvalidPartition, TypeMismatch.
ContractingSet compose_contracting_set(const TensorInstance& ti, const ContractingSet& cs1,
                                       const std::set<std::string>& S,
                                       const std::map<std::string, ContractingSet>& per_copy);

/// Contracting sets of g2 (e as a zero edge) grouped by type.
std::map<PairType, std::vector<ContractingSet>> pointed_sets_by_type(const PointedGraph& pg);

/// X -> T_minus, x -> T_L, Y -> T_slash, y -> T_C on color lambda.
RelPolynomial beta_lambda(const RelPolynomial& p, const PointedPolys& pp, std::string_view lambda);

/// Collapses each z-multiset to the key of the spliced graph.
RelPolynomial sigma(const RelPolynomial& p);

/// Replaces each key with k lambda0-edges by the symmetric sum over all ways
/// of 2-summing a T_0 term onto every lambda0-edge. Edges are visited in
/// ascending id order, or descending when `reverse_order`. Throws NotLinearInZ.
RelPolynomial beta_zero(const RelPolynomial& p, const RelPolynomial& t0, bool reverse_order = false);

/// Sum over lambda-edge subsets S of beta_zero(sigma(beta_lambda(T(G1S)))).
RelPolynomial theorem_6_5_rhs(const TensorInstance& ti);
RelPolynomial theorem_6_5_rhs(const TensorInstance& ti, const PointedPolys& pp);

struct TensorReport {
  bool equal_mod_ideal = false;
  bool structurally_equal = false;
  std::string lhs;
  std::string rhs;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  double lhs_ms = 0;
  double rhs_ms = 0;
};

TensorReport verify_tensor_formula(const TensorInstance& ti, unsigned trials = 32, std::uint64_t seed = 0,
                                   bool flip = false);

}  // namespace reltutte
