#include "dyncut/workload.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dyncut {

DynGraph random_graph_min_degree(std::size_t n, std::size_t m, std::size_t min_degree, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  if (min_degree >= n) throw std::invalid_argument("min degree must be below n");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (m > max_edges) throw std::invalid_argument("too many edges for n");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  DynGraph g(n);
  while (g.num_edges() < m) {
    const VertexId u = pick(rng), v = pick(rng);
    if (u != v && !g.has_edge(u, v)) g.insert_edge(u, v, 1);
  }
  for (VertexId u = 0; u < n; ++u)
    while (g.arity(u) < min_degree) {
      const VertexId v = pick(rng);
      if (v != u && !g.has_edge(u, v)) g.insert_edge(u, v, 1);
    }
  return g;
}

Workload gen_random_workload(const DynGraph& g, double alpha_ins, double alpha_del, std::uint64_t seed) {
  if (alpha_ins < 0 || alpha_del < 0 || alpha_ins + alpha_del >= 1)
    throw std::invalid_argument("need alpha_ins, alpha_del >= 0 and alpha_ins + alpha_del < 1");
  struct Edge {
    VertexId u, v;
    Weight w;
  };
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  g.for_each_edge([&](VertexId u, VertexId v, Weight w) { edges.push_back({u, v, w}); });
  const auto n_ins = static_cast<std::size_t>(alpha_ins * static_cast<double>(edges.size()));
  const auto n_del = static_cast<std::size_t>(alpha_del * static_cast<double>(edges.size()));

  std::mt19937_64 rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<std::size_t> untouched(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) untouched[v] = g.arity(v);
  std::vector<Edge> chosen;
  for (const Edge& e : edges) {
    if (chosen.size() == n_ins + n_del) break;
    if (untouched[e.u] > 1 && untouched[e.v] > 1) {
      --untouched[e.u];
      --untouched[e.v];
      chosen.push_back(e);
    }
  }
  if (chosen.size() < n_ins + n_del)
    throw GraphError("cannot pick " + std::to_string(n_ins + n_del) +
                     " updates while keeping an untouched edge at every vertex");

  Workload out{g, {g.num_vertices(), {}}};
  std::vector<Update> updates;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const Edge& e = chosen[i];
    Update up;
    up.u = e.u;
    up.v = e.v;
    up.w = e.w;
    if (i < n_ins) {
      out.initial.delete_edge(e.u, e.v);
      up.op = Update::Op::Insert;
    } else {
      up.op = Update::Op::Delete;
    }
    updates.push_back(up);
  }
  std::shuffle(updates.begin(), updates.end(), rng);
  for (std::size_t i = 0; i < updates.size(); ++i) updates[i].time = static_cast<std::int64_t>(i + 1);
  out.stream.updates = std::move(updates);
  return out;
}

UpdateStream gen_worstcase_workload(DynamicMinCut& dyn, std::size_t n_ins, std::size_t n_del, std::uint64_t seed) {
  if (n_del > n_ins) throw std::invalid_argument("cannot delete more edges than are inserted");
  const std::size_t n = dyn.graph().num_vertices();
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  UpdateStream stream{n, {}};
  std::vector<std::pair<VertexId, VertexId>> deletable;  // inserted and marked
  std::size_t ins_left = n_ins, del_left = n_del, marks_left = n_del;
  std::int64_t time = 0;

  auto pick_pair = [&]() -> std::pair<VertexId, VertexId> {
    const Cactus& c = dyn.cactus();
    std::vector<NodeId> nonempty;
    for (NodeId x : c.node_ids())
      if (!c.members(x).empty()) nonempty.push_back(x);
    if (nonempty.size() < 2) throw GraphError("cactus has a single nonempty node; no separated pair exists");
    std::uniform_int_distribution<std::size_t> pick_node(0, nonempty.size() - 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const NodeId a = nonempty[pick_node(rng)], b = nonempty[pick_node(rng)];
      if (a == b) continue;
      const auto& ma = c.members(a);
      const auto& mb = c.members(b);
      const VertexId u = ma[std::uniform_int_distribution<std::size_t>(0, ma.size() - 1)(rng)];
      const VertexId v = mb[std::uniform_int_distribution<std::size_t>(0, mb.size() - 1)(rng)];
      if (!dyn.graph().has_edge(u, v)) return {u, v};
    }
    throw GraphError("no separated non-adjacent pair found");
  };

  while (ins_left + del_left > 0) {
    const bool do_delete =
        !deletable.empty() &&
        (ins_left == 0 || coin(rng) < static_cast<double>(del_left) / static_cast<double>(ins_left + del_left));
    Update up;
    up.time = ++time;
    if (do_delete) {
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, deletable.size() - 1)(rng);
      std::tie(up.u, up.v) = deletable[i];
      deletable[i] = deletable.back();
      deletable.pop_back();
      up.op = Update::Op::Delete;
      dyn.erase(up.u, up.v);
      --del_left;
    } else {
      std::tie(up.u, up.v) = pick_pair();
      up.op = Update::Op::Insert;
      dyn.insert(up.u, up.v, up.w);
      if (marks_left > 0 && coin(rng) * static_cast<double>(ins_left) < static_cast<double>(marks_left)) {
        deletable.emplace_back(up.u, up.v);
        --marks_left;
      }
      --ins_left;
    }
    stream.updates.push_back(up);
  }
  return stream;
}

}  // namespace dyncut
