#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "dyncut/graph.hpp"

namespace dyncut {

using NodeId = std::uint32_t;
using CycleId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/**
   Path between two cactus nodes through the tree of cycles. A tree step
   crosses one tree edge; a cycle step enters a cycle at `from` and leaves it
   at `to`.
 */
struct CactusPath {
  struct Step {
    bool is_cycle;
    NodeId from;
    NodeId to;
    std::uint32_t id;  // tree edge id or cycle id
  };
  NodeId start = kNoNode;
  std::vector<Step> steps;

  std::vector<NodeId> nodes() const;
};

/// Plain description of a cactus used to construct one.
struct CactusParts {
  Weight lambda = 0;
  std::size_t num_graph_vertices = 0;
  std::vector<std::vector<VertexId>> members;  // per node
  std::vector<std::pair<NodeId, NodeId>> tree_edges;
  std::vector<std::vector<NodeId>> cycles;  // each a ring of >= 3 nodes
};

/**
   Cactus of minimum cuts with the vertex mapping Pi.

   Nodes hold (possibly empty) sets of graph vertices. Edges are either tree
   edges (weight lambda) or members of exactly one cycle (weight lambda/2).
   Nodes and cycles are never renumbered; contraction marks them dead.
 */
class Cactus {
 public:
  Cactus() = default;
  explicit Cactus(CactusParts parts);

  /// lambda = 0 representation: one node per connected component.
  static Cactus components(const DynGraph& g);

  Weight lambda() const { return lambda_; }
  void set_lambda(Weight lambda) { lambda_ = lambda; }
  std::size_t num_graph_vertices() const { return pi_.size(); }

  NodeId locate(VertexId v) const { return pi_[v]; }
  const std::vector<VertexId>& members(NodeId x) const { return nodes_[x].members; }
  bool alive(NodeId x) const { return nodes_[x].alive; }
  std::size_t node_capacity() const { return nodes_.size(); }

  std::size_t num_nodes() const { return num_alive_nodes_; }
  std::size_t num_nonempty_nodes() const { return num_nonempty_; }
  std::size_t num_edges() const;
  std::size_t num_tree_edges() const;
  std::size_t num_cycles() const;

  /// Alive nodes, tree edges and cycle rings, in id order.
  std::vector<NodeId> node_ids() const;
  std::vector<std::pair<NodeId, NodeId>> tree_edges() const;
  std::vector<std::vector<NodeId>> cycles() const;

  /// Unique path in the tree of cycles, found by alternating BFS from both ends.
  CactusPath find_path(NodeId a, NodeId b) const;

  /// Merges every node of the path into the one with most members, squeezing
  /// each traversed cycle at its entry and exit.
  void contract_path(const CactusPath& path);

  /// lambda = 0 only: merge two component nodes.
  void merge_components(NodeId a, NodeId b);

  /// lambda = 0 only: moves `moved` out of its node into a fresh node.
  NodeId split_component(const std::vector<VertexId>& moved);

  /// One side per represented cut, duplicates removed. Each side is sorted and
  /// is the side containing vertex 0.
  std::vector<std::vector<VertexId>> enumerate_cuts() const;

  /// Represented cut maximising the smaller side, in time linear in the cactus.
  std::vector<VertexId> most_balanced_cut() const;

  /// Some represented cut (lambda > 0), or one component (lambda = 0).
  std::vector<VertexId> any_cut() const;

  /// Empty string when the structural invariants hold, else a description.
  std::string validate() const;

  void write_text(std::ostream& out) const;
  std::string to_text() const;

 private:
  struct Node {
    std::vector<VertexId> members;
    std::vector<std::uint32_t> tree;  // incident tree edge ids (may include dead)
    std::vector<CycleId> cycles;      // incident cycle ids (may include dead)
    bool alive = true;
  };
  struct TreeEdge {
    NodeId a, b;
    bool alive = true;
  };
  struct Cycle {
    std::vector<NodeId> ring;
    bool alive = true;
  };

  void add_tree_edge(NodeId a, NodeId b);
  void add_cycle(std::vector<NodeId> ring);
  void compact_lists(NodeId x);
  // Vertices reachable from `start` without crossing tree edge `skip_tree` or cycle `skip_cycle`.
  void collect_side(NodeId start, std::uint32_t skip_tree, CycleId skip_cycle, std::vector<VertexId>& out) const;

  Weight lambda_ = 0;
  std::vector<Node> nodes_;
  std::vector<TreeEdge> tree_;
  std::vector<Cycle> cycles_;
  std::vector<NodeId> pi_;
  std::vector<std::uint32_t> slot_;  // position of each vertex in its node's member list
  std::size_t num_alive_nodes_ = 0;
  std::size_t num_nonempty_ = 0;
};

}  // namespace dyncut
