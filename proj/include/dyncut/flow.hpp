#pragma once

#include <cstdint>
#include <vector>

#include "dyncut/graph.hpp"

namespace dyncut {

struct FlowResult {
  enum class Kind { ReachedBound, Exact };
  Kind kind = Kind::Exact;
  /// The bound for ReachedBound, the maximum flow value for Exact.
  Weight value = 0;
  /// Exact only: a minimum s-t cut side containing s.
  std::vector<VertexId> source_side;

  bool reached_bound() const { return kind == Kind::ReachedBound; }
};

/**
   Push-relabel engine for the edge-deletion connectivity check.

   Works directly on the arcs of a DynGraph: every undirected edge is a pair
   of antisymmetric directed arcs with capacity equal to the edge weight.
   Arc flows carry the ID of the problem that last touched them and are
   zeroed lazily on first access within a new problem, so starting a
   problem costs O(n) regardless of m.

   The graph may be mutated between solves, never during one.
 */
class FlowNetwork {
 public:
  enum class ResetPolicy { Implicit, Explicit };

  explicit FlowNetwork(const DynGraph& graph, ResetPolicy policy = ResetPolicy::Implicit);

  const DynGraph& graph() const { return *graph_; }

  /// Starts a new problem: bumps the problem ID and clears per-vertex state.
  void reset_implicit();
  /// Starts a new problem and zeroes every arc flow, O(n + m).
  void reset_explicit();

  /// d(t)=0, d(s)=n, BFS distance for vertices within `gamma` of t, gamma+1 elsewhere.
  void local_relabel(VertexId s, VertexId t, std::uint32_t gamma);

  /// New problem + local relabeling + source saturation. The network is left
  /// holding the initial preflow, which is what max_flow_bounded starts from.
  void initialize(VertexId s, VertexId t, std::uint32_t gamma);

  /// Lowest-label push-relabel from s to t. Returns ReachedBound(bound) as soon
  /// as the sink has collected `bound` units; otherwise runs to a maximum flow.
  FlowResult max_flow_bounded(VertexId s, VertexId t, Weight bound, std::uint32_t gamma = 1);

  // Inspection, valid for the current problem.
  std::uint32_t label(VertexId v) const { return label_[v]; }
  Weight excess(VertexId v) const { return excess_[v]; }
  /// Flow on the i-th arc out of v.
  Weight flow(VertexId v, std::size_t i) const;
  Weight residual(VertexId v, std::size_t i) const { return graph_->arcs(v)[i].weight - flow(v, i); }
  std::uint64_t problem_id() const { return problem_; }

  /// Number of residual arcs (u,v) with d(u) > d(v) + 1.
  std::size_t labeling_violations() const;

  /// Operation counters for the last solve.
  struct Counters {
    std::uint64_t pushes = 0;
    std::uint64_t relabels = 0;
  };
  const Counters& counters() const { return counters_; }

 private:
  struct ArcState {
    Weight flow = 0;
    std::uint64_t stamp = 0;
  };

  void begin_problem(bool zero_flows);
  Weight& touch(VertexId v, std::size_t i);
  void activate(VertexId v);
  VertexId pop_lowest();
  std::vector<VertexId> sink_unreachable_side(VertexId t) const;

  const DynGraph* graph_;
  ResetPolicy policy_;
  std::uint64_t problem_ = 0;
  std::vector<std::vector<ArcState>> arcs_;

  std::vector<std::uint32_t> label_;
  std::vector<Weight> excess_;
  std::vector<std::uint32_t> current_arc_;

  // lowest-label selection: FIFO list per level, threaded through next_
  std::vector<VertexId> head_, tail_, next_;
  std::vector<bool> queued_;
  std::uint32_t cursor_ = 0;
  std::size_t num_active_ = 0;

  VertexId source_ = kNoVertex, sink_ = kNoVertex;
  Counters counters_;
};

}  // namespace dyncut
