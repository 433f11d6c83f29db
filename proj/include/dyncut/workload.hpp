#pragma once

#include <cstdint>

#include "dyncut/dynamic.hpp"
#include "dyncut/graph.hpp"
#include "dyncut/io.hpp"

namespace dyncut {

/// Uniform G(n, m) with unit weights, then topped up with random edges until
/// every vertex has at least `min_degree` neighbors.
DynGraph random_graph_min_degree(std::size_t n, std::size_t m, std::size_t min_degree, std::uint64_t seed);

struct Workload {
  DynGraph initial;
  UpdateStream stream;
};

/**
   Picks disjoint edge sets E_ins (floor(alpha_ins m) edges) and E_del
   (floor(alpha_del m) edges) such that every non-isolated vertex keeps an
   untouched edge. The initial graph is g without E_ins; the stream inserts
   E_ins and deletes E_del in random order, one update per batch.
 */
Workload gen_random_workload(const DynGraph& g, double alpha_ins, double alpha_del, std::uint64_t seed);

/**
   Adversarial stream built online against `dyn`, which must start on the
   initial graph and is advanced by every generated update. Each insertion
   joins two vertices in different cactus nodes that are not yet adjacent.
   n_del of the inserted edges are deleted again, each at a random later
   point. Throws GraphError when no valid pair can be found.
 */
UpdateStream gen_worstcase_workload(DynamicMinCut& dyn, std::size_t n_ins, std::size_t n_del, std::uint64_t seed);

}  // namespace dyncut
