#include "dyncut/dynamic.hpp"

#include "dyncut/static_cactus.hpp"

namespace dyncut {

DynamicMinCut::DynamicMinCut(DynGraph graph, DynamicOptions options)
    : graph_(std::move(graph)), options_(options), flow_(graph_) {
  cactus_ = build_cactus(graph_, options_.seed);
  ++stats_.full_recomputes;
}

void DynamicMinCut::insert(VertexId u, VertexId v, Weight w) {
  graph_.insert_edge(u, v, w);
  ++stats_.insertions;
  if (cache_) {
    cache_->pending.push_back({u, v, w});
    // a restore could no longer be accepted
    if (static_cast<double>(cache_->pending.size()) >= options_.delta * static_cast<double>(cache_->nodes)) {
      cache_.reset();
      ++stats_.cache_declines;
    }
  }
  switch (apply_insertion(u, v)) {
    case Branch::SameNode: ++stats_.insert_same_node; break;
    case Branch::Separated: ++stats_.insert_separated; break;
    case Branch::ComponentMerge: ++stats_.insert_component_merge; break;
  }
}

DynamicMinCut::Branch DynamicMinCut::apply_insertion(VertexId u, VertexId v) {
  const NodeId a = cactus_.locate(u), b = cactus_.locate(v);
  if (a == b) return Branch::SameNode;
  if (cactus_.lambda() == 0) {
    cactus_.merge_components(a, b);
    if (cactus_.num_nodes() == 1) recompute();
    return Branch::ComponentMerge;
  }
  cactus_.contract_path(cactus_.find_path(a, b));
  if (cactus_.num_nonempty_nodes() <= 1) recompute();
  return Branch::Separated;
}

void DynamicMinCut::erase(VertexId u, VertexId v) {
  graph_.delete_edge(u, v);
  ++stats_.deletions;
  const Weight lambda = cactus_.lambda();

  if (lambda == 0) {
    std::vector<VertexId> side;
    if (!still_connected(u, v, side)) cactus_.split_component(side);
    return;
  }

  // the endpoint of smaller degree is the source: less excess to route back
  const VertexId s = graph_.degree(u) <= graph_.degree(v) ? u : v;
  const VertexId t = s == u ? v : u;
  ++stats_.flow_calls;
  const FlowResult result = flow_.max_flow_bounded(s, t, lambda, options_.gamma);
  if (result.reached_bound()) {
    ++stats_.early_terminations;
    return;
  }
  ++stats_.exact_results;
  if (result.value >= lambda) return;

  cache_ = Cache{std::move(cactus_), lambda, 0, {}};
  cache_->nodes = cache_->cactus.num_nodes();
  cactus_ = result.value == 0 ? Cactus::components(graph_) : build_uv_cactus(graph_, s, t, result.value);
  ++stats_.uv_rebuilds;
}

bool DynamicMinCut::try_restore_from_cache() {
  if (!cache_) return false;
  return restore_if_allowed(static_min_cut(graph_));
}

void DynamicMinCut::recompute() {
  if (replaying_) recomputed_during_replay_ = true;
  const Weight lambda_now = static_min_cut(graph_);
  if (restore_if_allowed(lambda_now)) return;
  rebuild(lambda_now);
}

bool DynamicMinCut::restore_if_allowed(Weight lambda_now) {
  if (!cache_) return false;
  if (lambda_now < cache_->lambda1) return false;  // keep waiting
  const bool allowed = lambda_now == cache_->lambda1 &&
                       static_cast<double>(cache_->pending.size()) <
                           options_.delta * static_cast<double>(cache_->nodes);
  if (!allowed) {
    cache_.reset();
    ++stats_.cache_declines;
    return false;
  }
  Cache cache = std::move(*cache_);
  cache_.reset();
  cactus_ = std::move(cache.cactus);
  ++stats_.cache_restores;

  // Replaying an insertion can empty the cactus and force a fresh build of the
  // whole current graph, which already contains every pending edge.
  replaying_ = true;
  recomputed_during_replay_ = false;
  for (const auto& p : cache.pending) {
    apply_insertion(p.u, p.v);
    ++stats_.replayed_insertions;
    if (recomputed_during_replay_) break;
  }
  replaying_ = false;
  return true;
}

void DynamicMinCut::rebuild(Weight lambda_now) {
  cactus_ = build_cactus(graph_, options_.seed + stats_.full_recomputes, lambda_now);
  ++stats_.full_recomputes;
}

bool DynamicMinCut::still_connected(VertexId u, VertexId v, std::vector<VertexId>& smaller) {
  if (mark_.size() < graph_.num_vertices()) mark_.assign(graph_.num_vertices(), 0);
  epoch_ += 2;
  const std::uint64_t tag[2] = {epoch_, epoch_ + 1};
  std::vector<VertexId> seen[2] = {{u}, {v}};
  std::size_t head[2] = {0, 0};
  mark_[u] = tag[0];
  mark_[v] = tag[1];
  for (int side = 0;; side ^= 1) {
    if (head[side] == seen[side].size()) {
      smaller = std::move(seen[side]);
      return false;
    }
    const VertexId x = seen[side][head[side]++];
    for (const auto& a : graph_.arcs(x)) {
      if (mark_[a.head] == tag[1 - side]) return true;
      if (mark_[a.head] == tag[side]) continue;
      mark_[a.head] = tag[side];
      seen[side].push_back(a.head);
    }
  }
}

}  // namespace dyncut
