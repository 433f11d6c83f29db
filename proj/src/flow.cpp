#include "dyncut/flow.hpp"

#include <algorithm>
#include <limits>

namespace dyncut {

FlowNetwork::FlowNetwork(const DynGraph& graph, ResetPolicy policy) : graph_(&graph), policy_(policy) {}

void FlowNetwork::begin_problem(bool zero_flows) {
  ++problem_;
  const std::size_t n = graph_->num_vertices();
  if (arcs_.size() < n) arcs_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    auto& states = arcs_[v];
    if (states.size() < graph_->arity(v)) states.resize(graph_->arity(v));
    if (zero_flows)
      for (auto& st : states) st = {0, problem_};
  }
  label_.assign(n, 0);
  excess_.assign(n, 0);
  current_arc_.assign(n, 0);
  head_.assign(2 * n + 1, kNoVertex);
  tail_.assign(2 * n + 1, kNoVertex);
  next_.assign(n, kNoVertex);
  queued_.assign(n, false);
  cursor_ = 0;
  num_active_ = 0;
  counters_ = {};
}

void FlowNetwork::reset_implicit() { begin_problem(false); }

void FlowNetwork::reset_explicit() { begin_problem(true); }

Weight& FlowNetwork::touch(VertexId v, std::size_t i) {
  ArcState& st = arcs_[v][i];
  if (st.stamp != problem_) {
    st.flow = 0;
    st.stamp = problem_;
  }
  return st.flow;
}

Weight FlowNetwork::flow(VertexId v, std::size_t i) const {
  if (v >= arcs_.size() || i >= arcs_[v].size()) return 0;
  const ArcState& st = arcs_[v][i];
  return st.stamp == problem_ ? st.flow : 0;
}

void FlowNetwork::local_relabel(VertexId s, VertexId t, std::uint32_t gamma) {
  const auto n = static_cast<std::uint32_t>(graph_->num_vertices());
  std::fill(label_.begin(), label_.end(), gamma + 1);
  label_[t] = 0;
  label_[s] = n;
  // Backward BFS from the sink; only vertices closer than gamma are expanded.
  std::vector<bool> seen(n, false);
  std::vector<VertexId> queue{t};
  seen[t] = seen[s] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId x = queue[qi];
    if (label_[x] >= gamma) continue;
    for (const auto& a : graph_->arcs(x)) {
      if (seen[a.head]) continue;
      seen[a.head] = true;
      label_[a.head] = label_[x] + 1;
      queue.push_back(a.head);
    }
  }
}

void FlowNetwork::activate(VertexId v) {
  const std::uint32_t level = label_[v];
  queued_[v] = true;
  next_[v] = kNoVertex;
  if (head_[level] == kNoVertex)
    head_[level] = v;
  else
    next_[tail_[level]] = v;
  tail_[level] = v;
  cursor_ = std::min(cursor_, level);
  ++num_active_;
}

VertexId FlowNetwork::pop_lowest() {
  if (num_active_ == 0) return kNoVertex;
  while (head_[cursor_] == kNoVertex) ++cursor_;
  const VertexId v = head_[cursor_];
  head_[cursor_] = next_[v];
  if (head_[cursor_] == kNoVertex) tail_[cursor_] = kNoVertex;
  queued_[v] = false;
  --num_active_;
  return v;
}

void FlowNetwork::initialize(VertexId s, VertexId t, std::uint32_t gamma) {
  if (policy_ == ResetPolicy::Explicit)
    reset_explicit();
  else
    reset_implicit();
  source_ = s;
  sink_ = t;
  local_relabel(s, t, gamma);
  const auto arcs = graph_->arcs(s);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    touch(s, i) += a.weight;
    touch(a.head, a.twin) -= a.weight;
    excess_[s] -= a.weight;
    excess_[a.head] += a.weight;
    if (a.head != t && !queued_[a.head]) activate(a.head);
  }
}

std::vector<VertexId> FlowNetwork::sink_unreachable_side(VertexId t) const {
  const std::size_t n = graph_->num_vertices();
  std::vector<bool> reaches(n, false);
  std::vector<VertexId> queue{t};
  reaches[t] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId y = queue[qi];
    const auto arcs = graph_->arcs(y);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const VertexId x = arcs[i].head;
      // residual of x->y is c + f(y->x)
      if (!reaches[x] && arcs[i].weight + flow(y, i) > 0) {
        reaches[x] = true;
        queue.push_back(x);
      }
    }
  }
  std::vector<VertexId> side;
  for (VertexId v = 0; v < n; ++v)
    if (!reaches[v]) side.push_back(v);
  return side;
}

FlowResult FlowNetwork::max_flow_bounded(VertexId s, VertexId t, Weight bound, std::uint32_t gamma) {
  const std::size_t n = graph_->num_vertices();
  if (s >= n || t >= n) throw GraphError("max_flow_bounded: vertex out of range");
  if (s == t) throw GraphError("max_flow_bounded: source equals sink");
  if (bound <= 0) return {FlowResult::Kind::ReachedBound, 0, {}};
  if (n > 1) gamma = std::min<std::uint32_t>(gamma, static_cast<std::uint32_t>(n - 1));

  initialize(s, t, gamma);
  if (excess_[t] >= bound) return {FlowResult::Kind::ReachedBound, bound, {}};

  const std::uint32_t max_label = static_cast<std::uint32_t>(2 * n);
  for (VertexId v = pop_lowest(); v != kNoVertex; v = pop_lowest()) {
    const auto arcs = graph_->arcs(v);
    bool requeue_front = false;
    while (excess_[v] > 0) {
      std::uint32_t& i = current_arc_[v];
      if (i == arcs.size()) {
        // relabel
        std::uint32_t lowest = std::numeric_limits<std::uint32_t>::max();
        for (std::size_t j = 0; j < arcs.size(); ++j)
          if (arcs[j].weight - flow(v, j) > 0) lowest = std::min(lowest, label_[arcs[j].head]);
        label_[v] = lowest == std::numeric_limits<std::uint32_t>::max()
                        ? max_label
                        : std::min(lowest + 1, max_label);
        i = 0;
        ++counters_.relabels;
        break;
      }
      const auto& a = arcs[i];
      Weight& f = touch(v, i);
      const Weight residual = a.weight - f;
      if (residual <= 0 || label_[v] != label_[a.head] + 1) {
        ++i;
        continue;
      }
      const Weight delta = std::min(excess_[v], residual);
      f += delta;
      touch(a.head, a.twin) -= delta;
      excess_[v] -= delta;
      excess_[a.head] += delta;
      ++counters_.pushes;
      if (a.head == t) {
        if (excess_[t] >= bound) return {FlowResult::Kind::ReachedBound, bound, {}};
      } else if (a.head != s && !queued_[a.head]) {
        activate(a.head);
        // a lower-labelled vertex just became active; yield to it
        if (excess_[v] > 0) requeue_front = true;
        break;
      }
    }
    if (excess_[v] > 0) {
      if (requeue_front) {
        const std::uint32_t level = label_[v];
        queued_[v] = true;
        next_[v] = head_[level];
        head_[level] = v;
        if (tail_[level] == kNoVertex) tail_[level] = v;
        cursor_ = std::min(cursor_, level);
        ++num_active_;
      } else {
        activate(v);
      }
    }
  }

  FlowResult result;
  result.kind = FlowResult::Kind::Exact;
  result.value = excess_[t];
  result.source_side = sink_unreachable_side(t);
  return result;
}

std::size_t FlowNetwork::labeling_violations() const {
  std::size_t bad = 0;
  for (VertexId v = 0; v < graph_->num_vertices(); ++v) {
    const auto arcs = graph_->arcs(v);
    for (std::size_t i = 0; i < arcs.size(); ++i)
      if (arcs[i].weight - flow(v, i) > 0 && label_[v] > label_[arcs[i].head] + 1) ++bad;
  }
  return bad;
}

}  // namespace dyncut
