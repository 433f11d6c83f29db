#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyncut/types.hpp"

namespace dyncut {

/**
   Mutable weighted undirected simple graph on a fixed vertex set.

   Every undirected edge {u,v} is stored as two arcs, one in each endpoint's
   adjacency, which point at each other through `twin`. Deletion is a
   swap-remove, so arc positions are only stable between mutations.
 */
class DynGraph {
 public:
  struct Arc {
    VertexId head;
    Weight weight;
    std::uint32_t twin;  // position of the reverse arc in adj[head]
  };

  explicit DynGraph(std::size_t n = 0);

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  Weight total_weight() const { return total_weight_; }

  /// Weighted degree c(v).
  Weight degree(VertexId v) const { return degree_[v]; }
  std::size_t arity(VertexId v) const { return adj_[v].size(); }
  std::span<const Arc> arcs(VertexId v) const { return adj_[v]; }

  bool has_edge(VertexId u, VertexId v) const;
  std::optional<Weight> edge_weight(VertexId u, VertexId v) const;

  /// Adds w to the weight of {u,v}, creating the edge if absent.
  void insert_edge(VertexId u, VertexId v, Weight w);

  /// Removes {u,v} completely and returns its former weight.
  Weight delete_edge(VertexId u, VertexId v);

  /// Calls fn(u, v, w) once per undirected edge, with u < v.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (VertexId u = 0; u < adj_.size(); ++u)
      for (const Arc& a : adj_[u])
        if (u < a.head) fn(u, a.head, a.weight);
  }

  /// Sum of c(u,v) over edges with exactly one endpoint flagged in `side`.
  Weight cut_weight(const std::vector<bool>& side) const;
  Weight cut_weight(std::span<const VertexId> side) const;

 private:
  static std::uint64_t key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t{u} << 32) | v;
  }
  void check_vertex(VertexId v) const;

  std::vector<std::vector<Arc>> adj_;
  std::vector<Weight> degree_;
  // {min,max} -> position of the arc inside adj_[min]
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::size_t num_edges_ = 0;
  Weight total_weight_ = 0;
};

/// Result of merging vertices: the quotient graph and old -> new vertex map.
struct Contraction {
  DynGraph graph;
  std::vector<VertexId> old_to_new;
};

/// G/(u,v): v is merged into u, parallel edges summed, loops dropped.
Contraction contract(const DynGraph& g, VertexId u, VertexId v);

/// Quotient by a labelling of vertices into `num_labels` classes.
DynGraph quotient(const DynGraph& g, std::span<const VertexId> label, std::size_t num_labels);

/// Connected component id per vertex; returns the number of components.
std::size_t connected_components(const DynGraph& g, std::vector<VertexId>& component);

}  // namespace dyncut
