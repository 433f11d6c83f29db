#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dyncut/cactus.hpp"
#include "dyncut/graph.hpp"

namespace dyncut {

/// lambda(G) by contraction: Padberg-Rinaldi tests plus maximum-adjacency
/// ordering passes. Returns 0 for disconnected graphs and for n <= 1.
Weight static_min_cut(const DynGraph& g);

/**
   Cactus of all minimum cuts of g.

   Edges that no minimum cut can cross are contracted first. Then a random
   edge (u,v) is tested with one maximum flow: if lambda(u,v) > lambda the
   edge is contracted, otherwise the nested chain of minimum u-v cuts is read
   off the residual graph, laid out as tree edges and cycles, and each block
   of the chain is solved on its own with the rest of the graph shrunk to a
   single vertex.

   Pass `lambda` when it is already known.
 */
Cactus build_cactus(const DynGraph& g, std::uint64_t seed = 1, std::optional<Weight> lambda = std::nullopt);

/// Cactus of the nested minimum u-v cuts visible in one maximum flow. Every
/// represented cut has weight `lambda`; cuts hidden by crossing cuts may be
/// missing. Throws GraphError when lambda(g,u,v) != lambda.
Cactus build_uv_cactus(const DynGraph& g, VertexId u, VertexId v, Weight lambda);

struct CutOracleResult {
  Weight lambda = 0;
  /// Sorted sides containing vertex 0, in lexicographic order.
  std::vector<std::vector<VertexId>> cuts;
};

/// Exhaustive enumeration over all bipartitions; n <= 20.
CutOracleResult oracle_all_min_cuts(const DynGraph& g);

}  // namespace dyncut
