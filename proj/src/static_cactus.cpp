#include "dyncut/static_cactus.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

#include "dyncut/flow.hpp"

namespace dyncut {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    ++merges_;
    return true;
  }

  std::size_t merges() const { return merges_; }

  // Dense class ids in [0, count).
  std::size_t labels(std::vector<VertexId>& out) {
    const std::size_t n = parent_.size();
    out.assign(n, kNoVertex);
    std::vector<VertexId> id(n, kNoVertex);
    VertexId next = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      const std::uint32_t r = find(x);
      if (id[r] == kNoVertex) id[r] = next++;
      out[x] = id[r];
    }
    return next;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::size_t merges_ = 0;
};

Weight min_degree(const DynGraph& h) {
  Weight best = kUnbounded;
  for (VertexId x = 0; x < h.num_vertices(); ++x) best = std::min(best, h.degree(x));
  return best;
}

struct PhaseEnd {
  VertexId second_last = kNoVertex;
  VertexId last = kNoVertex;
  Weight cut_of_phase = 0;
};

// One maximum-adjacency ordering of a connected graph. Every edge whose
// attachment value q(e) satisfies `contractible` is united in `uf`.
template <typename Pred>
PhaseEnd ma_ordering(const DynGraph& h, Pred contractible, UnionFind& uf) {
  const std::size_t n = h.num_vertices();
  std::vector<Weight> r(n, 0);
  std::vector<bool> done(n, false);
  std::priority_queue<std::pair<Weight, VertexId>> queue;
  queue.emplace(0, 0);
  PhaseEnd end;
  while (!queue.empty()) {
    const auto [key, x] = queue.top();
    queue.pop();
    if (done[x] || key != r[x]) continue;
    done[x] = true;
    end.second_last = end.last;
    end.last = x;
    for (const auto& a : h.arcs(x)) {
      if (done[a.head]) continue;
      r[a.head] += a.weight;
      if (contractible(r[a.head])) uf.unite(x, a.head);
      queue.emplace(r[a.head], a.head);
    }
  }
  end.cut_of_phase = r[end.last];
  return end;
}

bool connected(const DynGraph& g) {
  std::vector<VertexId> comp;
  return connected_components(g, comp) <= 1;
}

// ---------------------------------------------------------------------------
// Chains of nested minimum u-v cuts

struct Chain {
  std::vector<std::vector<VertexId>> blocks;
  std::vector<std::uint32_t> block_of;
  bool total = true;  // false when the middle SCCs are not totally ordered
};

// Reads the chain off a maximum u-v flow held by `net`. Blocks are the
// residual reach of u, the strongly connected components of the rest in
// sinks-first order, and the residual co-reach of v. Every prefix union of
// blocks is a minimum u-v cut.
Chain extract_chain(const DynGraph& h, const FlowNetwork& net, VertexId u, VertexId v) {
  const std::size_t n = h.num_vertices();
  constexpr std::uint32_t kFront = 0xfffffffe, kBack = 0xfffffffd, kNone = 0xffffffff;
  std::vector<std::uint32_t> side(n, kNone);

  std::vector<VertexId> queue{u};
  side[u] = kFront;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId x = queue[qi];
    const auto arcs = h.arcs(x);
    for (std::size_t i = 0; i < arcs.size(); ++i)
      if (side[arcs[i].head] == kNone && net.residual(x, i) > 0) {
        side[arcs[i].head] = kFront;
        queue.push_back(arcs[i].head);
      }
  }
  if (side[v] == kFront) throw std::logic_error("extract_chain: flow is not maximum");
  queue.assign(1, v);
  side[v] = kBack;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const VertexId y = queue[qi];
    for (const auto& a : h.arcs(y))
      if (side[a.head] == kNone && net.residual(a.head, a.twin) > 0) {
        side[a.head] = kBack;
        queue.push_back(a.head);
      }
  }

  // Tarjan over the middle vertices, iterative.
  std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> scc_stack;
  std::vector<std::pair<VertexId, std::uint32_t>> call;
  std::uint32_t counter = 0, num_comps = 0;
  std::vector<std::vector<VertexId>> middle;
  for (VertexId root = 0; root < n; ++root) {
    if (side[root] != kNone || index[root] != kNone) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [x, i] = call.back();
      const auto arcs = h.arcs(x);
      if (i < arcs.size()) {
        const VertexId y = arcs[i].head;
        const bool usable = side[y] == kNone && net.residual(x, i) > 0;
        ++i;
        if (!usable) continue;
        if (index[y] == kNone) {
          index[y] = low[y] = counter++;
          scc_stack.push_back(y);
          on_stack[y] = true;
          call.emplace_back(y, 0);
        } else if (on_stack[y]) {
          low[x] = std::min(low[x], index[y]);
        }
        continue;
      }
      const VertexId done = x;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<VertexId> members;
        VertexId y;
        do {
          y = scc_stack.back();
          scc_stack.pop_back();
          on_stack[y] = false;
          comp[y] = num_comps;
          members.push_back(y);
        } while (y != done);
        middle.push_back(std::move(members));
        ++num_comps;
      }
    }
  }

  Chain chain;
  chain.block_of.assign(n, 0);
  chain.blocks.reserve(middle.size() + 2);
  chain.blocks.emplace_back();
  for (VertexId x = 0; x < n; ++x)
    if (side[x] == kFront) chain.blocks[0].push_back(x);
  for (auto& m : middle) chain.blocks.push_back(std::move(m));
  chain.blocks.emplace_back();
  for (VertexId x = 0; x < n; ++x)
    if (side[x] == kBack) chain.blocks.back().push_back(x);
  for (std::uint32_t b = 0; b < chain.blocks.size(); ++b)
    for (VertexId x : chain.blocks[b]) chain.block_of[x] = b;

  // middle components must form a path: each one reaches its predecessor directly
  std::vector<bool> linked(num_comps, false);
  for (VertexId x = 0; x < n; ++x) {
    if (side[x] != kNone || comp[x] == 0) continue;
    const auto arcs = h.arcs(x);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const VertexId y = arcs[i].head;
      if (side[y] == kNone && comp[y] + 1 == comp[x] && net.residual(x, i) > 0) linked[comp[x]] = true;
    }
  }
  for (std::uint32_t c = 1; c < num_comps; ++c)
    if (!linked[c]) chain.total = false;
  return chain;
}

// ---------------------------------------------------------------------------
// Node pool shared by the recursive construction

struct Payload {
  std::vector<VertexId> members;
  std::vector<NodeId> glue;  // pool nodes to be identified with this vertex's final node
};

void absorb(Payload& into, Payload&& from) {
  if (from.members.size() > into.members.size()) std::swap(into.members, from.members);
  into.members.insert(into.members.end(), from.members.begin(), from.members.end());
  if (from.glue.size() > into.glue.size()) std::swap(into.glue, from.glue);
  into.glue.insert(into.glue.end(), from.glue.begin(), from.glue.end());
}

class NodePool {
 public:
  NodeId add() {
    members_.emplace_back();
    parent_.push_back(static_cast<NodeId>(parent_.size()));
    return parent_.back();
  }

  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[b] = a;
  }

  void assign(NodeId x, Payload&& p) {
    auto& list = members_[x];
    list.insert(list.end(), p.members.begin(), p.members.end());
    for (NodeId g : p.glue) unite(x, g);
  }

  void tree_edge(NodeId a, NodeId b) { tree_.emplace_back(a, b); }
  void cycle(std::vector<NodeId> ring) { cycles_.push_back(std::move(ring)); }

  CactusParts finish(Weight lambda, std::size_t n) {
    CactusParts parts;
    parts.lambda = lambda;
    parts.num_graph_vertices = n;
    std::vector<NodeId> id(parent_.size(), kNoNode);
    for (NodeId x = 0; x < parent_.size(); ++x) {
      const NodeId r = find(x);
      if (id[r] == kNoNode) {
        id[r] = static_cast<NodeId>(parts.members.size());
        parts.members.emplace_back();
      }
      auto& list = parts.members[id[r]];
      list.insert(list.end(), members_[x].begin(), members_[x].end());
    }
    auto map = [&](NodeId x) { return id[find(x)]; };
    for (auto [a, b] : tree_) {
      if (map(a) == map(b)) throw std::logic_error("build_cactus: tree edge collapsed to a loop");
      parts.tree_edges.emplace_back(map(a), map(b));
    }
    for (auto& ring : cycles_) {
      for (NodeId& x : ring) x = map(x);
      parts.cycles.push_back(std::move(ring));
    }
    return parts;
  }

 private:
  std::vector<std::vector<VertexId>> members_;
  std::vector<NodeId> parent_;
  std::vector<std::pair<NodeId, NodeId>> tree_;
  std::vector<std::vector<NodeId>> cycles_;
};

// Lays the chain out in the pool: one node per block, tree edges between
// consecutive blocks, and a cycle for every maximal run of middle blocks in
// which each adjacent pair is itself a minimum cut (any interval of such a run
// then is one too). Returns the node of each block.
//
// A singleton middle block that is a minimum cut on its own but lies outside
// every run hangs off an empty spine node by a tree edge; larger blocks get
// that cut from their own subproblem.
std::vector<NodeId> lay_out_chain(NodePool& pool, const DynGraph& h, const Chain& chain, Weight lambda) {
  const std::size_t k = chain.blocks.size();
  std::vector<Weight> boundary(k, 0), adjacent(k, 0);
  h.for_each_edge([&](VertexId x, VertexId y, Weight w) {
    std::uint32_t bx = chain.block_of[x], by = chain.block_of[y];
    if (bx == by) return;
    boundary[bx] += w;
    boundary[by] += w;
    if (bx > by) std::swap(bx, by);
    if (by == bx + 1) adjacent[bx] += w;
  });

  std::vector<NodeId> node(k);
  for (std::size_t i = 0; i < k; ++i) node[i] = pool.add();

  // pair_min[j]: blocks j and j+1 together form a minimum cut (both middle)
  std::vector<bool> pair_min(k, false);
  for (std::size_t j = 1; j + 2 < k; ++j)
    pair_min[j] = boundary[j] + boundary[j + 1] - 2 * adjacent[j] == lambda;

  std::vector<bool> in_run(k, false);
  for (std::size_t j = 1; j + 2 < k; ++j)
    if (pair_min[j]) in_run[j] = in_run[j + 1] = true;
  std::vector<NodeId> spine = node;
  for (std::size_t j = 1; j + 1 < k; ++j) {
    if (in_run[j] || boundary[j] != lambda || chain.blocks[j].size() != 1) continue;
    spine[j] = pool.add();
    pool.tree_edge(spine[j], node[j]);
  }

  bool prev_cycle = false;
  std::vector<NodeId> open_ring;  // cycle waiting for its right-hand node
  std::size_t i = 0;
  while (i < k) {
    if (i > 0 && pair_min[i]) {
      std::size_t e = i;
      while (pair_min[e]) ++e;  // blocks i..e form the run
      for (std::size_t j = i; j <= e; ++j)
        if (boundary[j] != lambda) throw std::logic_error("build_cactus: cycle block is not a minimum cut");
      NodeId left;
      if (prev_cycle) {
        left = pool.add();
        open_ring.push_back(left);
        pool.cycle(std::move(open_ring));
      } else {
        left = spine[i - 1];
      }
      open_ring = {left};
      for (std::size_t j = i; j <= e; ++j) open_ring.push_back(node[j]);
      prev_cycle = true;
      i = e + 1;
      continue;
    }
    if (prev_cycle) {
      open_ring.push_back(spine[i]);
      pool.cycle(std::move(open_ring));
      open_ring.clear();
    } else if (i > 0) {
      pool.tree_edge(spine[i - 1], spine[i]);
    }
    prev_cycle = false;
    ++i;
  }
  return node;
}

// ---------------------------------------------------------------------------
// Recursive construction

struct Task {
  DynGraph h;
  std::vector<Payload> payload;
};

void contract_classes(Task& task, UnionFind& uf) {
  std::vector<VertexId> label;
  const std::size_t k = uf.labels(label);
  std::vector<Payload> merged(k);
  for (VertexId x = 0; x < task.h.num_vertices(); ++x) absorb(merged[label[x]], std::move(task.payload[x]));
  task.h = quotient(task.h, label, k);
  task.payload = std::move(merged);
}

// Contracts edges that no cut of weight lambda crosses. Returns whether
// anything was contracted.
bool reduce(Task& task, Weight lambda) {
  const DynGraph& h = task.h;
  UnionFind uf(h.num_vertices());
  h.for_each_edge([&](VertexId x, VertexId y, Weight w) {
    const bool heavy = w > lambda;
    const bool dominant = (2 * w > h.degree(x) && h.degree(x) > lambda) || (2 * w > h.degree(y) && h.degree(y) > lambda);
    if (heavy || dominant) uf.unite(x, y);
  });
  if (uf.merges() == 0) {
    const PhaseEnd end = ma_ordering(h, [lambda](Weight q) { return q > lambda; }, uf);
    if (end.cut_of_phase > lambda) uf.unite(end.second_last, end.last);
  }
  if (uf.merges() == 0) return false;
  contract_classes(task, uf);
  return true;
}

}  // namespace

Weight static_min_cut(const DynGraph& g) {
  if (g.num_vertices() <= 1 || !connected(g)) return 0;
  DynGraph h = g;
  Weight best = kUnbounded;
  std::vector<VertexId> label;
  while (h.num_vertices() > 1) {
    best = std::min(best, min_degree(h));
    const std::size_t n = h.num_vertices();
    UnionFind uf(n);
    h.for_each_edge([&](VertexId x, VertexId y, Weight w) {
      if (w >= best) uf.unite(x, y);
    });
    if (uf.merges() == 0) {
      // Padberg-Rinaldi on a matching, so the degrees each test relies on stay put
      std::vector<bool> used(n, false);
      h.for_each_edge([&](VertexId x, VertexId y, Weight w) {
        if (used[x] || used[y] || 2 * w < std::min(h.degree(x), h.degree(y))) return;
        used[x] = used[y] = true;
        uf.unite(x, y);
      });
    }
    if (uf.merges() == 0) {
      const PhaseEnd end = ma_ordering(h, [best](Weight q) { return q >= best; }, uf);
      best = std::min(best, end.cut_of_phase);
      uf.unite(end.second_last, end.last);
    }
    const std::size_t k = uf.labels(label);
    h = quotient(h, label, k);
  }
  return best;
}

Cactus build_cactus(const DynGraph& g, std::uint64_t seed, std::optional<Weight> known_lambda) {
  const std::size_t n = g.num_vertices();
  if (n <= 1 || !connected(g)) return Cactus::components(g);
  const Weight lambda = known_lambda ? *known_lambda : static_min_cut(g);

  std::mt19937_64 rng(seed);
  NodePool pool;
  std::vector<Task> stack;
  {
    Task root;
    root.h = g;
    root.payload.resize(n);
    for (VertexId x = 0; x < n; ++x) root.payload[x].members = {x};
    stack.push_back(std::move(root));
  }

  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    for (;;) {
      const std::size_t size = task.h.num_vertices();
      if (size == 1) {
        pool.assign(pool.add(), std::move(task.payload[0]));
        break;
      }
      if (reduce(task, lambda)) continue;

      VertexId u = static_cast<VertexId>(rng() % size);
      const auto arcs = task.h.arcs(u);
      const VertexId v = arcs[rng() % arcs.size()].head;
      FlowNetwork net(task.h);
      const FlowResult flow = net.max_flow_bounded(u, v, kUnbounded);
      if (flow.value < lambda) throw std::logic_error("build_cactus: flow below lambda");
      if (flow.value > lambda) {
        UnionFind uf(size);
        uf.unite(u, v);
        contract_classes(task, uf);
        continue;
      }

      Chain chain = extract_chain(task.h, net, u, v);
      if (!chain.total) throw std::logic_error("build_cactus: minimum u-v cuts are not nested");
      const std::size_t k = chain.blocks.size();
      if (k == 2 && (chain.blocks[0].size() == 1) != (chain.blocks[1].size() == 1)) {
        // a lone vertex cut off by the only minimum u-v cut: hang it on a
        // tree edge and keep going with the edge contracted
        const VertexId lone = chain.blocks[0].size() == 1 ? u : v;
        const VertexId other = lone == u ? v : u;
        const NodeId leaf = pool.add(), anchor = pool.add();
        pool.assign(leaf, std::move(task.payload[lone]));
        pool.tree_edge(anchor, leaf);
        task.payload[lone] = Payload{};
        task.payload[other].glue.push_back(anchor);
        UnionFind uf(size);
        uf.unite(other, lone);
        contract_classes(task, uf);
        continue;
      }

      const std::vector<NodeId> node = lay_out_chain(pool, task.h, chain, lambda);
      // blocks with several vertices become subproblems with the rest of the graph as one vertex
      std::vector<std::uint32_t> child_of(k, 0xffffffff), local(size, 0);
      std::vector<Task> children;
      for (std::size_t b = 0; b < k; ++b) {
        if (chain.blocks[b].size() == 1) {
          pool.assign(node[b], std::move(task.payload[chain.blocks[b][0]]));
          continue;
        }
        child_of[b] = static_cast<std::uint32_t>(children.size());
        Task child;
        const std::size_t sz = chain.blocks[b].size();
        child.h = DynGraph(sz + 1);
        child.payload.resize(sz + 1);
        for (std::size_t j = 0; j < sz; ++j) {
          const VertexId x = chain.blocks[b][j];
          local[x] = static_cast<std::uint32_t>(j);
          child.payload[j] = std::move(task.payload[x]);
        }
        child.payload[sz].glue = {node[b]};
        children.push_back(std::move(child));
      }
      task.h.for_each_edge([&](VertexId x, VertexId y, Weight w) {
        const std::uint32_t bx = chain.block_of[x], by = chain.block_of[y];
        if (bx == by) {
          if (child_of[bx] != 0xffffffff) children[child_of[bx]].h.insert_edge(local[x], local[y], w);
          return;
        }
        if (child_of[bx] != 0xffffffff)
          children[child_of[bx]].h.insert_edge(local[x], static_cast<VertexId>(chain.blocks[bx].size()), w);
        if (child_of[by] != 0xffffffff)
          children[child_of[by]].h.insert_edge(local[y], static_cast<VertexId>(chain.blocks[by].size()), w);
      });
      for (auto& child : children) stack.push_back(std::move(child));
      break;
    }
  }
  return Cactus(pool.finish(lambda, n));
}

Cactus build_uv_cactus(const DynGraph& g, VertexId u, VertexId v, Weight lambda) {
  if (lambda <= 0) throw GraphError("build_uv_cactus: lambda must be positive");
  FlowNetwork net(g);
  const FlowResult flow = net.max_flow_bounded(u, v, kUnbounded);
  if (flow.value != lambda)
    throw GraphError("build_uv_cactus: lambda(u,v) is " + std::to_string(flow.value) + ", expected " +
                     std::to_string(lambda));
  // Only cuts separating u and v are kept, so the chain is a path of tree
  // edges. The middle components are taken in one topological order; when
  // they are not totally ordered, crossing cuts are left out.
  Chain chain = extract_chain(g, net, u, v);
  CactusParts parts;
  parts.lambda = lambda;
  parts.num_graph_vertices = g.num_vertices();
  parts.members = std::move(chain.blocks);
  for (NodeId b = 1; b < parts.members.size(); ++b) parts.tree_edges.emplace_back(b - 1, b);
  return Cactus(std::move(parts));
}

CutOracleResult oracle_all_min_cuts(const DynGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 20) throw GraphError("oracle_all_min_cuts: n must be at most 20");
  CutOracleResult result;
  if (n <= 1) return result;
  std::vector<std::tuple<VertexId, VertexId, Weight>> edges;
  g.for_each_edge([&](VertexId x, VertexId y, Weight w) { edges.emplace_back(x, y, w); });
  result.lambda = kUnbounded;
  std::vector<std::uint32_t> masks;
  // canonical sides: bit 0 set, complement non-empty
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 1; mask < full; mask += 2) {
    Weight cut = 0;
    for (auto [x, y, w] : edges)
      if (((mask >> x) ^ (mask >> y)) & 1u) cut += w;
    if (cut < result.lambda) {
      result.lambda = cut;
      masks.clear();
    }
    if (cut == result.lambda) masks.push_back(mask);
  }
  for (std::uint32_t mask : masks) {
    std::vector<VertexId> side;
    for (VertexId x = 0; x < n; ++x)
      if ((mask >> x) & 1u) side.push_back(x);
    result.cuts.push_back(std::move(side));
  }
  std::sort(result.cuts.begin(), result.cuts.end());
  return result;
}

}  // namespace dyncut
