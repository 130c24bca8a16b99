#pragma once

#include <string>
#include <vector>

#include "reltutte/graph.hpp"
#include "reltutte/pointed.hpp"
#include "reltutte/relative_tutte.hpp"
#include "reltutte/rng.hpp"
#include "reltutte/tensor.hpp"

namespace reltutte {

/// Ranges are inclusive. Endpoints are drawn uniformly from the vertex set;
/// the whole graph is redrawn until it meets the connectivity requirement.
struct RandomGraphSpec {
  int min_vertices = 1;
  int max_vertices = 4;
  int min_regular = 1;
  int max_regular = 5;
  int min_zero = 0;
  int max_zero = 2;
  std::vector<std::string> colors{"mu"};
  std::vector<std::string> zero_colors{"z0"};
  bool connected = true;
  bool allow_loops = true;
};

/// Regular edges are named r0, r1, ...; zero edges h0, h1, ...
ColoredMultigraph random_graph(Rng& rng, const RandomGraphSpec& spec);

/// Random injective positive labels on regular edges (a shuffled 1..k).
ProperLabeling random_labeling(const ColoredMultigraph& g, Rng& rng);

/// Random graph plus a pointed edge "e" that is neither a loop nor a bridge.
PointedGraph random_pointed_graph(Rng& rng, const RandomGraphSpec& spec);

struct RandomInstanceSpec {
  RandomGraphSpec g1{1, 4, 1, 5, 0, 2, {"mu"}, {"z0"}, true, true};
  RandomGraphSpec g2{2, 3, 1, 4, 0, 2, {"mu"}, {"z0"}, true, true};
  int min_lambda = 1;
  int max_lambda = 3;
  std::string lambda = "lam";
  /// Number of instances a suite draws.
  int instances = 20;
};

/// Lambda-edges are named f0, f1, ... and are counted within the regular
/// edge budget of g1.
TensorInstance random_tensor_instance(Rng& rng, const RandomInstanceSpec& spec);

}  // namespace reltutte
