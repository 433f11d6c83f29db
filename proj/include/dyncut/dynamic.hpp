#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dyncut/cactus.hpp"
#include "dyncut/flow.hpp"
#include "dyncut/graph.hpp"

namespace dyncut {

struct DynamicOptions {
  std::uint32_t gamma = 1;  // local relabeling depth of the deletion check
  double delta = 2.0;       // cache restore threshold: pending insertions per cached node
  std::uint64_t seed = 1;
};

struct DynamicStats {
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t flow_calls = 0;
  std::uint64_t early_terminations = 0;
  std::uint64_t exact_results = 0;
  std::uint64_t full_recomputes = 0;  // build_cactus runs, the initial one included
  std::uint64_t uv_rebuilds = 0;
  std::uint64_t cache_restores = 0;
  std::uint64_t cache_declines = 0;
  std::uint64_t replayed_insertions = 0;
  // branch taken by each insertion (replays excluded)
  std::uint64_t insert_same_node = 0;
  std::uint64_t insert_separated = 0;
  std::uint64_t insert_component_merge = 0;
};

/**
   Exact global minimum cut under edge insertions and deletions.

   Insertions contract the cactus path between the endpoints; deletions run a
   push-relabel check bounded by the current lambda and rebuild a (u,v)-cactus
   only when the cut value drops. The cactus from before a drop is cached and
   restored if lambda climbs back before too many insertions pile up.

   Holds a FlowNetwork that points into its own graph, so instances are
   neither copyable nor movable.
 */
class DynamicMinCut {
 public:
  explicit DynamicMinCut(DynGraph graph, DynamicOptions options = {});
  DynamicMinCut(const DynamicMinCut&) = delete;
  DynamicMinCut& operator=(const DynamicMinCut&) = delete;

  void insert(VertexId u, VertexId v, Weight w);
  void erase(VertexId u, VertexId v);

  /// Restores the cached cactus if lambda(G) equals the cached value and
  /// few enough insertions are pending; otherwise drops the cache. Returns
  /// whether a restore happened. Called by the controller at every
  /// recompute point, exposed for tests.
  bool try_restore_from_cache();

  Weight current_lambda() const { return cactus_.lambda(); }
  /// A represented minimum cut side, or one component when lambda = 0.
  std::vector<VertexId> current_cut() const { return cactus_.any_cut(); }
  std::vector<VertexId> current_most_balanced() const { return cactus_.most_balanced_cut(); }

  const DynGraph& graph() const { return graph_; }
  const Cactus& cactus() const { return cactus_; }
  const DynamicStats& stats() const { return stats_; }
  const DynamicOptions& options() const { return options_; }
  bool cache_live() const { return cache_.has_value(); }
  std::size_t cache_pending() const { return cache_ ? cache_->pending.size() : 0; }

 private:
  struct PendingInsertion {
    VertexId u, v;
    Weight w;
  };
  struct Cache {
    Cactus cactus;
    Weight lambda1;
    std::size_t nodes;  // n* of the cached cactus
    std::vector<PendingInsertion> pending;
  };

  enum class Branch { SameNode, Separated, ComponentMerge };

  // Cactus surgery for an insertion already applied to the graph.
  Branch apply_insertion(VertexId u, VertexId v);
  // The cactus lost its last cut: recompute lambda and rebuild or restore.
  void recompute();
  bool restore_if_allowed(Weight lambda_now);
  void rebuild(Weight lambda_now);
  // lambda = 0: whether u and v still share a component; if not, `smaller`
  // receives the whole component of the endpoint whose search ran dry first.
  bool still_connected(VertexId u, VertexId v, std::vector<VertexId>& smaller);

  DynGraph graph_;
  DynamicOptions options_;
  Cactus cactus_;
  FlowNetwork flow_;
  std::optional<Cache> cache_;
  DynamicStats stats_;
  bool replaying_ = false;
  bool recomputed_during_replay_ = false;
  std::vector<std::uint64_t> mark_;
  std::uint64_t epoch_ = 0;
};

}  // namespace dyncut
