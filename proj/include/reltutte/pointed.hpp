#pragma once

#include <string>
#include <string_view>

#include "reltutte/graph.hpp"
#include "reltutte/polynomial.hpp"
#include "reltutte/relative_tutte.hpp"

namespace reltutte {

/// Connected graph with one pointed edge e (color nu) that is neither a loop
/// nor a bridge. In the universal polynomial e behaves as a zero edge.
struct PointedGraph {
  ColoredMultigraph graph;
  std::string pointed;

  /// Validates and locates the pointed edge. Throws NoPointedEdge,
  /// TwoPointedEdges, PointedIsLoopOrBridge, InvalidPointedGraph, ColorClash.
  static PointedGraph from(ColoredMultigraph g);
};

/// How e ends up after contracting C and deleting D: a loop (type C),
/// a bridge (type D) or neither (type zero).
enum class PairType { TypeC, TypeD, TypeZero };
std::string_view pair_type_name(PairType t) noexcept;

/// Classification from the cycle/cocycle definition, checked against the
/// terminal status of e. Throws InvalidContractingSet, and InternalInvariant
/// if the two characterizations disagree.
PairType classify_pair(const PointedGraph& pg, const ContractingSet& cs);

/// Projections keeping the z-symbols whose key has exactly one nu-edge that
/// is a bridge / a loop / neither. Throw NotLinearInZ.
RelPolynomial pi_C(const RelPolynomial& p);
RelPolynomial pi_L(const RelPolynomial& p);
RelPolynomial pi_0(const RelPolynomial& p);
/// Contract (resp. delete) the single nu-edge of each key; keys with a nu-loop
/// (resp. nu-bridge) or without exactly one nu-edge map to 0. Throw NotLinearInZ.
RelPolynomial pi_contract(const RelPolynomial& p);
RelPolynomial pi_delete(const RelPolynomial& p);

struct PointedPolys {
  RelPolynomial T_C;
  RelPolynomial T_L;
  RelPolynomial T_0;
  RelPolynomial T_slash;
  RelPolynomial T_minus;
  /// Universal polynomial with e as a zero edge, and those of G/e and G-e.
  RelPolynomial U;
  RelPolynomial T_contracted;
  RelPolynomial T_deleted;
};

PointedPolys pointed_polys(const PointedGraph& pg);

}  // namespace reltutte
