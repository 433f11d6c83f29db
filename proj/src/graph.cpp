#include "dyncut/graph.hpp"

#include <string>

namespace dyncut {

DynGraph::DynGraph(std::size_t n) : adj_(n), degree_(n, 0) {}

void DynGraph::check_vertex(VertexId v) const {
  if (v >= adj_.size())
    throw GraphError("vertex " + std::to_string(v) + " out of range (n=" +
                     std::to_string(adj_.size()) + ")");
}

bool DynGraph::has_edge(VertexId u, VertexId v) const {
  if (u >= adj_.size() || v >= adj_.size() || u == v) return false;
  return index_.count(key(u, v)) != 0;
}

std::optional<Weight> DynGraph::edge_weight(VertexId u, VertexId v) const {
  if (u >= adj_.size() || v >= adj_.size() || u == v) return std::nullopt;
  auto it = index_.find(key(u, v));
  if (it == index_.end()) return std::nullopt;
  return adj_[std::min(u, v)][it->second].weight;
}

void DynGraph::insert_edge(VertexId u, VertexId v, Weight w) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw GraphError("self-loop on vertex " + std::to_string(u));
  if (w <= 0) throw GraphError("edge weight must be positive, got " + std::to_string(w));

  const VertexId lo = std::min(u, v), hi = std::max(u, v);
  auto [it, fresh] = index_.try_emplace(key(lo, hi), static_cast<std::uint32_t>(adj_[lo].size()));
  if (fresh) {
    const auto pos_lo = static_cast<std::uint32_t>(adj_[lo].size());
    const auto pos_hi = static_cast<std::uint32_t>(adj_[hi].size());
    adj_[lo].push_back({hi, w, pos_hi});
    adj_[hi].push_back({lo, w, pos_lo});
    ++num_edges_;
  } else {
    Arc& a = adj_[lo][it->second];
    a.weight += w;
    adj_[hi][a.twin].weight += w;
  }
  degree_[u] += w;
  degree_[v] += w;
  total_weight_ += w;
}

Weight DynGraph::delete_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  const VertexId lo = std::min(u, v), hi = std::max(u, v);
  auto it = index_.find(key(lo, hi));
  if (u == v || it == index_.end())
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") does not exist");

  const std::uint32_t pos_lo = it->second;
  const std::uint32_t pos_hi = adj_[lo][pos_lo].twin;
  const Weight w = adj_[lo][pos_lo].weight;
  index_.erase(it);

  // Swap-remove the arc at adj[x][pos], repairing the moved arc's twin and index slot.
  auto remove_arc = [this](VertexId x, std::uint32_t pos) {
    auto& list = adj_[x];
    const auto last = static_cast<std::uint32_t>(list.size() - 1);
    if (pos != last) {
      list[pos] = list[last];
      const Arc& moved = list[pos];
      adj_[moved.head][moved.twin].twin = pos;
      if (x < moved.head) index_[key(x, moved.head)] = pos;
    }
    list.pop_back();
  };
  remove_arc(lo, pos_lo);
  remove_arc(hi, pos_hi);

  degree_[u] -= w;
  degree_[v] -= w;
  total_weight_ -= w;
  --num_edges_;
  return w;
}

Weight DynGraph::cut_weight(const std::vector<bool>& side) const {
  Weight total = 0;
  for (VertexId u = 0; u < adj_.size(); ++u) {
    if (!side[u]) continue;
    for (const Arc& a : adj_[u])
      if (!side[a.head]) total += a.weight;
  }
  return total;
}

Weight DynGraph::cut_weight(std::span<const VertexId> side) const {
  std::vector<bool> flag(adj_.size(), false);
  for (VertexId v : side) flag[v] = true;
  return cut_weight(flag);
}

DynGraph quotient(const DynGraph& g, std::span<const VertexId> label, std::size_t num_labels) {
  const std::size_t n = g.num_vertices();
  // bucket old vertices by label
  std::vector<std::uint32_t> start(num_labels + 1, 0);
  for (VertexId v = 0; v < n; ++v) ++start[label[v] + 1];
  for (std::size_t i = 0; i < num_labels; ++i) start[i + 1] += start[i];
  std::vector<VertexId> members(n);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (VertexId v = 0; v < n; ++v) members[fill[label[v]]++] = v;
  }

  DynGraph out(num_labels);
  std::vector<Weight> acc(num_labels, 0);
  std::vector<VertexId> touched;
  for (VertexId a = 0; a < num_labels; ++a) {
    for (std::uint32_t i = start[a]; i < start[a + 1]; ++i) {
      for (const auto& arc : g.arcs(members[i])) {
        const VertexId b = label[arc.head];
        if (b <= a) continue;
        if (acc[b] == 0) touched.push_back(b);
        acc[b] += arc.weight;
      }
    }
    for (VertexId b : touched) {
      out.insert_edge(a, b, acc[b]);
      acc[b] = 0;
    }
    touched.clear();
  }
  return out;
}

Contraction contract(const DynGraph& g, VertexId u, VertexId v) {
  const std::size_t n = g.num_vertices();
  if (u >= n || v >= n) throw GraphError("contract: vertex out of range");
  if (u == v) throw GraphError("contract: cannot merge a vertex with itself");
  Contraction result;
  result.old_to_new.resize(n);
  VertexId next = 0;
  for (VertexId x = 0; x < n; ++x) {
    if (x == v) continue;
    result.old_to_new[x] = next++;
  }
  result.old_to_new[v] = result.old_to_new[u];
  result.graph = quotient(g, result.old_to_new, n - 1);
  return result;
}

std::size_t connected_components(const DynGraph& g, std::vector<VertexId>& component) {
  const std::size_t n = g.num_vertices();
  component.assign(n, kNoVertex);
  std::vector<VertexId> stack;
  VertexId count = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (component[s] != kNoVertex) continue;
    component[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (const auto& a : g.arcs(x)) {
        if (component[a.head] == kNoVertex) {
          component[a.head] = count;
          stack.push_back(a.head);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace dyncut
