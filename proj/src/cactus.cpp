#include "dyncut/cactus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dyncut {

std::vector<NodeId> CactusPath::nodes() const {
  std::vector<NodeId> out;
  if (start == kNoNode) return out;
  out.push_back(start);
  for (const Step& s : steps) out.push_back(s.to);
  return out;
}

Cactus::Cactus(CactusParts parts) : lambda_(parts.lambda) {
  const std::size_t n = parts.num_graph_vertices;
  pi_.assign(n, kNoNode);
  slot_.assign(n, 0);
  nodes_.resize(parts.members.size());
  num_alive_nodes_ = nodes_.size();
  for (NodeId x = 0; x < nodes_.size(); ++x) {
    for (VertexId v : parts.members[x]) {
      if (v >= n || pi_[v] != kNoNode) throw GraphError("cactus members must partition the vertex set");
      pi_[v] = x;
      slot_[v] = static_cast<std::uint32_t>(nodes_[x].members.size());
      nodes_[x].members.push_back(v);
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (pi_[v] == kNoNode) throw GraphError("cactus members must cover every vertex");
  num_nonempty_ = static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& node) { return !node.members.empty(); }));
  for (auto [a, b] : parts.tree_edges) add_tree_edge(a, b);
  for (auto& ring : parts.cycles) add_cycle(std::move(ring));
}

Cactus Cactus::components(const DynGraph& g) {
  std::vector<VertexId> comp;
  const std::size_t k = connected_components(g, comp);
  CactusParts parts;
  parts.lambda = 0;
  parts.num_graph_vertices = g.num_vertices();
  parts.members.resize(k);
  for (VertexId v = 0; v < g.num_vertices(); ++v) parts.members[comp[v]].push_back(v);
  return Cactus(std::move(parts));
}

void Cactus::add_tree_edge(NodeId a, NodeId b) {
  const auto id = static_cast<std::uint32_t>(tree_.size());
  tree_.push_back({a, b, true});
  nodes_[a].tree.push_back(id);
  nodes_[b].tree.push_back(id);
}

void Cactus::add_cycle(std::vector<NodeId> ring) {
  if (ring.size() < 2) return;
  if (ring.size() == 2) {
    add_tree_edge(ring[0], ring[1]);
    return;
  }
  const auto id = static_cast<CycleId>(cycles_.size());
  for (NodeId x : ring) nodes_[x].cycles.push_back(id);
  cycles_.push_back({std::move(ring), true});
}

void Cactus::compact_lists(NodeId x) {
  auto& node = nodes_[x];
  std::erase_if(node.tree, [&](std::uint32_t e) { return !tree_[e].alive; });
  std::erase_if(node.cycles, [&](CycleId c) { return !cycles_[c].alive; });
}

std::size_t Cactus::num_tree_edges() const {
  return static_cast<std::size_t>(std::count_if(tree_.begin(), tree_.end(), [](const TreeEdge& e) { return e.alive; }));
}

std::size_t Cactus::num_cycles() const {
  return static_cast<std::size_t>(std::count_if(cycles_.begin(), cycles_.end(), [](const Cycle& c) { return c.alive; }));
}

std::size_t Cactus::num_edges() const {
  std::size_t m = num_tree_edges();
  for (const Cycle& c : cycles_)
    if (c.alive) m += c.ring.size();
  return m;
}

std::vector<NodeId> Cactus::node_ids() const {
  std::vector<NodeId> ids;
  for (NodeId x = 0; x < nodes_.size(); ++x)
    if (nodes_[x].alive) ids.push_back(x);
  return ids;
}

std::vector<std::pair<NodeId, NodeId>> Cactus::tree_edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const TreeEdge& e : tree_)
    if (e.alive) out.emplace_back(e.a, e.b);
  return out;
}

std::vector<std::vector<NodeId>> Cactus::cycles() const {
  std::vector<std::vector<NodeId>> out;
  for (const Cycle& c : cycles_)
    if (c.alive) out.push_back(c.ring);
  return out;
}

// ---------------------------------------------------------------------------
// Path finding

CactusPath Cactus::find_path(NodeId a, NodeId b) const {
  CactusPath path;
  path.start = a;
  if (a == b) return path;

  struct Visit {
    NodeId prev;
    bool via_cycle;
    std::uint32_t id;
    std::uint32_t dist;
  };
  struct Side {
    std::unordered_map<NodeId, Visit> seen;
    std::unordered_set<CycleId> expanded;
    std::vector<NodeId> frontier;
  };
  Side sides[2];
  sides[0].seen[a] = {kNoNode, false, 0, 0};
  sides[0].frontier = {a};
  sides[1].seen[b] = {kNoNode, false, 0, 0};
  sides[1].frontier = {b};

  NodeId meet = kNoNode;
  while (meet == kNoNode) {
    if (sides[0].frontier.empty() || sides[1].frontier.empty())
      throw GraphError("find_path: nodes lie in different cactus components");
    const int s = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
    Side& me = sides[s];
    const Side& other = sides[1 - s];
    std::vector<NodeId> next;
    auto discover = [&](NodeId y, NodeId from, bool via_cycle, std::uint32_t id) {
      if (me.seen.count(y)) return;
      me.seen[y] = {from, via_cycle, id, me.seen[from].dist + 1};
      next.push_back(y);
    };
    for (NodeId x : me.frontier) {
      for (std::uint32_t e : nodes_[x].tree) {
        if (!tree_[e].alive) continue;
        discover(tree_[e].a == x ? tree_[e].b : tree_[e].a, x, false, e);
      }
      for (CycleId c : nodes_[x].cycles) {
        if (!cycles_[c].alive || !me.expanded.insert(c).second) continue;
        for (NodeId y : cycles_[c].ring)
          if (y != x) discover(y, x, true, c);
      }
    }
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (NodeId y : next) {
      auto it = other.seen.find(y);
      if (it == other.seen.end()) continue;
      const std::uint32_t total = me.seen[y].dist + it->second.dist;
      if (total < best) {
        best = total;
        meet = y;
      }
    }
    me.frontier = std::move(next);
  }

  std::vector<CactusPath::Step> forward;
  for (NodeId y = meet; y != a;) {
    const Visit& v = sides[0].seen.at(y);
    forward.push_back({v.via_cycle, v.prev, y, v.id});
    y = v.prev;
  }
  std::reverse(forward.begin(), forward.end());
  for (NodeId y = meet; y != b;) {
    const Visit& v = sides[1].seen.at(y);
    forward.push_back({v.via_cycle, y, v.prev, v.id});
    y = v.prev;
  }
  // two consecutive moves inside the same cycle collapse into one
  for (const auto& step : forward) {
    if (!path.steps.empty() && step.is_cycle && path.steps.back().is_cycle && path.steps.back().id == step.id) {
      path.steps.back().to = step.to;
      if (path.steps.back().from == path.steps.back().to) path.steps.pop_back();
      continue;
    }
    path.steps.push_back(step);
  }
  return path;
}

// ---------------------------------------------------------------------------
// Contraction

void Cactus::contract_path(const CactusPath& path) {
  if (path.steps.empty()) return;
  std::vector<NodeId> on_path = path.nodes();
  std::sort(on_path.begin(), on_path.end());
  on_path.erase(std::unique(on_path.begin(), on_path.end()), on_path.end());

  NodeId survivor = on_path.front();
  for (NodeId x : on_path)
    if (nodes_[x].members.size() > nodes_[survivor].members.size()) survivor = x;

  std::vector<std::vector<NodeId>> new_rings;
  for (const auto& step : path.steps) {
    if (!step.is_cycle) {
      tree_[step.id].alive = false;
      continue;
    }
    Cycle& cycle = cycles_[step.id];
    const auto& ring = cycle.ring;
    const std::size_t k = ring.size();
    const std::size_t px = static_cast<std::size_t>(std::find(ring.begin(), ring.end(), step.from) - ring.begin());
    const std::size_t py = static_cast<std::size_t>(std::find(ring.begin(), ring.end(), step.to) - ring.begin());
    // the two arcs between entry and exit, each closed up through the merged node
    for (auto [from, to] : {std::pair{px, py}, std::pair{py, px}}) {
      std::vector<NodeId> arc{survivor};
      for (std::size_t i = (from + 1) % k; i != to; i = (i + 1) % k) arc.push_back(ring[i]);
      if (arc.size() >= 2) new_rings.push_back(std::move(arc));
    }
    cycle.alive = false;
  }

  Node& keep = nodes_[survivor];
  for (NodeId x : on_path) {
    if (x == survivor) continue;
    Node& gone = nodes_[x];
    if (!gone.members.empty() && !keep.members.empty()) --num_nonempty_;
    for (VertexId v : gone.members) {
      pi_[v] = survivor;
      slot_[v] = static_cast<std::uint32_t>(keep.members.size());
      keep.members.push_back(v);
    }
    gone.members.clear();
    gone.members.shrink_to_fit();
    for (std::uint32_t e : gone.tree) {
      if (!tree_[e].alive) continue;
      if (tree_[e].a == x) tree_[e].a = survivor;
      if (tree_[e].b == x) tree_[e].b = survivor;
      keep.tree.push_back(e);
    }
    for (CycleId c : gone.cycles) {
      if (!cycles_[c].alive) continue;
      std::replace(cycles_[c].ring.begin(), cycles_[c].ring.end(), x, survivor);
      keep.cycles.push_back(c);
    }
    gone.tree.clear();
    gone.cycles.clear();
    gone.alive = false;
    --num_alive_nodes_;
  }
  for (auto& ring : new_rings) {
    for (NodeId y : ring)
      if (y != survivor && nodes_[y].cycles.size() > 8) compact_lists(y);
    add_cycle(std::move(ring));
  }
  compact_lists(survivor);
}

void Cactus::merge_components(NodeId a, NodeId b) {
  if (lambda_ != 0) throw GraphError("merge_components requires lambda = 0");
  if (a == b) return;
  if (nodes_[a].members.size() < nodes_[b].members.size()) std::swap(a, b);
  Node& keep = nodes_[a];
  if (!keep.members.empty() && !nodes_[b].members.empty()) --num_nonempty_;
  for (VertexId v : nodes_[b].members) {
    pi_[v] = a;
    slot_[v] = static_cast<std::uint32_t>(keep.members.size());
    keep.members.push_back(v);
  }
  nodes_[b].members.clear();
  nodes_[b].alive = false;
  --num_alive_nodes_;
}

NodeId Cactus::split_component(const std::vector<VertexId>& moved) {
  if (lambda_ != 0) throw GraphError("split_component requires lambda = 0");
  if (moved.empty()) throw GraphError("split_component: nothing to move");
  const auto fresh = static_cast<NodeId>(nodes_.size());
  nodes_.emplace_back();
  ++num_alive_nodes_;
  const NodeId old = pi_[moved.front()];
  ++num_nonempty_;
  for (VertexId v : moved) {
    if (pi_[v] != old) throw GraphError("split_component: vertices come from different nodes");
    auto& list = nodes_[old].members;
    const std::uint32_t pos = slot_[v];
    list[pos] = list.back();
    slot_[list[pos]] = pos;
    list.pop_back();
    pi_[v] = fresh;
    slot_[v] = static_cast<std::uint32_t>(nodes_[fresh].members.size());
    nodes_[fresh].members.push_back(v);
  }
  if (nodes_[old].members.empty()) --num_nonempty_;
  return fresh;
}

// ---------------------------------------------------------------------------
// Cut extraction

void Cactus::collect_side(NodeId start, std::uint32_t skip_tree, CycleId skip_cycle,
                          std::vector<VertexId>& out) const {
  std::unordered_set<NodeId> seen{start};
  std::unordered_set<CycleId> expanded;
  std::vector<NodeId> stack{start};
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    out.insert(out.end(), nodes_[x].members.begin(), nodes_[x].members.end());
    for (std::uint32_t e : nodes_[x].tree) {
      if (!tree_[e].alive || e == skip_tree) continue;
      const NodeId y = tree_[e].a == x ? tree_[e].b : tree_[e].a;
      if (seen.insert(y).second) stack.push_back(y);
    }
    for (CycleId c : nodes_[x].cycles) {
      if (!cycles_[c].alive || c == skip_cycle || !expanded.insert(c).second) continue;
      for (NodeId y : cycles_[c].ring)
        if (seen.insert(y).second) stack.push_back(y);
    }
  }
}

std::vector<std::vector<VertexId>> Cactus::enumerate_cuts() const {
  const std::size_t n = pi_.size();
  std::set<std::vector<VertexId>> unique;
  auto emit = [&](std::vector<VertexId> side) {
    if (side.empty() || side.size() >= n) return;
    std::sort(side.begin(), side.end());
    if (side.front() != 0) {
      std::vector<bool> in(n, false);
      for (VertexId v : side) in[v] = true;
      std::vector<VertexId> comp;
      for (VertexId v = 0; v < n; ++v)
        if (!in[v]) comp.push_back(v);
      side = std::move(comp);
    }
    unique.insert(std::move(side));
  };
  for (std::uint32_t e = 0; e < tree_.size(); ++e) {
    if (!tree_[e].alive) continue;
    std::vector<VertexId> side;
    collect_side(tree_[e].a, e, kNoNode, side);
    emit(std::move(side));
  }
  for (CycleId c = 0; c < cycles_.size(); ++c) {
    if (!cycles_[c].alive) continue;
    const auto& ring = cycles_[c].ring;
    std::vector<std::vector<VertexId>> hang(ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i)
      collect_side(ring[i], std::numeric_limits<std::uint32_t>::max(), c, hang[i]);
    // cut edges (i-1,i) and (j,j+1): the arc ring[i..j]
    for (std::size_t i = 0; i < ring.size(); ++i) {
      std::vector<VertexId> side;
      for (std::size_t j = i; j + 1 < ring.size() + i; ++j) {
        const auto& h = hang[j % ring.size()];
        side.insert(side.end(), h.begin(), h.end());
        emit(side);
      }
    }
  }
  return {unique.begin(), unique.end()};
}

namespace {

// Rooted view of a cactus: nodes in BFS order from a root, each cycle hanging
// below the node it was first reached from.
struct RootedCactus {
  std::vector<NodeId> order;
  std::unordered_map<NodeId, std::vector<NodeId>> tree_children;
  std::unordered_map<NodeId, std::vector<std::vector<NodeId>>> cycle_children;  // ring minus top, in order
  std::unordered_map<NodeId, std::int64_t> weight;                               // vertices at or below node
};

}  // namespace

std::vector<VertexId> Cactus::most_balanced_cut() const {
  if (lambda_ == 0 || num_alive_nodes_ < 2) return any_cut();

  NodeId root = kNoNode;
  for (NodeId x = 0; x < nodes_.size(); ++x)
    if (nodes_[x].alive) {
      root = x;
      break;
    }

  RootedCactus view;
  std::unordered_set<NodeId> seen{root};
  std::unordered_set<CycleId> expanded;
  view.order.push_back(root);
  for (std::size_t qi = 0; qi < view.order.size(); ++qi) {
    const NodeId x = view.order[qi];
    for (std::uint32_t e : nodes_[x].tree) {
      if (!tree_[e].alive) continue;
      const NodeId y = tree_[e].a == x ? tree_[e].b : tree_[e].a;
      if (!seen.insert(y).second) continue;
      view.tree_children[x].push_back(y);
      view.order.push_back(y);
    }
    for (CycleId c : nodes_[x].cycles) {
      if (!cycles_[c].alive || !expanded.insert(c).second) continue;
      const auto& ring = cycles_[c].ring;
      const std::size_t top = static_cast<std::size_t>(std::find(ring.begin(), ring.end(), x) - ring.begin());
      std::vector<NodeId> below;
      for (std::size_t i = 1; i < ring.size(); ++i) {
        const NodeId y = ring[(top + i) % ring.size()];
        seen.insert(y);
        below.push_back(y);
        view.order.push_back(y);
      }
      view.cycle_children[x].push_back(std::move(below));
    }
  }

  for (auto it = view.order.rbegin(); it != view.order.rend(); ++it) {
    const NodeId x = *it;
    std::int64_t w = static_cast<std::int64_t>(nodes_[x].members.size());
    if (auto tc = view.tree_children.find(x); tc != view.tree_children.end())
      for (NodeId y : tc->second) w += view.weight[y];
    if (auto cc = view.cycle_children.find(x); cc != view.cycle_children.end())
      for (const auto& ring : cc->second)
        for (NodeId y : ring) w += view.weight[y];
    view.weight[x] = w;
  }

  const auto total = static_cast<std::int64_t>(pi_.size());
  std::int64_t best_score = -1;
  std::vector<NodeId> best_roots;
  auto consider = [&](std::int64_t side, auto&& roots) {
    const std::int64_t score = std::min(side, total - side);
    if (score > best_score) {
      best_score = score;
      best_roots = roots();
    }
  };
  for (const auto& [x, children] : view.tree_children)
    for (NodeId y : children) consider(view.weight[y], [&] { return std::vector<NodeId>{y}; });
  const std::int64_t half = total / 2;
  for (const auto& [x, rings] : view.cycle_children) {
    for (const auto& ring : rings) {
      const std::size_t k = ring.size();
      std::vector<std::int64_t> prefix(k + 1, 0);
      for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + view.weight[ring[i]];
      auto range = [&](std::size_t l, std::size_t r) {
        return [&ring, l, r] { return std::vector<NodeId>(ring.begin() + l, ring.begin() + r + 1); };
      };
      // two pointers: r is the last index with sum(l..r) <= half
      std::size_t r = 0;
      for (std::size_t l = 0; l < k; ++l) {
        if (r < l) r = l;
        while (r + 1 < k && prefix[r + 2] - prefix[l] <= half) ++r;
        consider(prefix[r + 1] - prefix[l], range(l, r));
        if (r + 1 < k) consider(prefix[r + 2] - prefix[l], range(l, r + 1));
      }
    }
  }

  // expand the chosen subtrees downwards
  std::vector<VertexId> side;
  std::vector<NodeId> stack = best_roots;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    side.insert(side.end(), nodes_[x].members.begin(), nodes_[x].members.end());
    if (auto tc = view.tree_children.find(x); tc != view.tree_children.end())
      stack.insert(stack.end(), tc->second.begin(), tc->second.end());
    if (auto cc = view.cycle_children.find(x); cc != view.cycle_children.end())
      for (const auto& ring : cc->second) stack.insert(stack.end(), ring.begin(), ring.end());
  }
  std::sort(side.begin(), side.end());
  return side;
}

std::vector<VertexId> Cactus::any_cut() const {
  std::vector<VertexId> side;
  if (lambda_ == 0) {
    for (const Node& node : nodes_)
      if (node.alive && !node.members.empty()) {
        side = node.members;
        break;
      }
  } else {
    bool found = false;
    for (std::uint32_t e = 0; e < tree_.size() && !found; ++e)
      if (tree_[e].alive) {
        collect_side(tree_[e].b, e, kNoNode, side);
        found = true;
      }
    for (CycleId c = 0; c < cycles_.size() && !found; ++c)
      if (cycles_[c].alive) {
        collect_side(cycles_[c].ring.front(), std::numeric_limits<std::uint32_t>::max(), c, side);
        found = true;
      }
  }
  std::sort(side.begin(), side.end());
  return side;
}

// ---------------------------------------------------------------------------
// Checks and text form

std::string Cactus::validate() const {
  std::ostringstream err;
  const std::size_t n = pi_.size();
  std::size_t covered = 0;
  for (NodeId x = 0; x < nodes_.size(); ++x) {
    const Node& node = nodes_[x];
    if (!node.alive) {
      if (!node.members.empty()) err << "dead node " << x << " has members; ";
      continue;
    }
    for (std::size_t i = 0; i < node.members.size(); ++i) {
      const VertexId v = node.members[i];
      if (v >= n || pi_[v] != x || slot_[v] != i) err << "pi mismatch for vertex " << v << "; ";
    }
    covered += node.members.size();
  }
  if (covered != n) err << "members cover " << covered << " of " << n << " vertices; ";

  std::set<std::pair<NodeId, NodeId>> edges;
  std::size_t m = 0;
  auto add_edge = [&](NodeId a, NodeId b) {
    if (a == b) err << "loop at node " << a << "; ";
    if (a >= nodes_.size() || b >= nodes_.size() || !nodes_[a].alive || !nodes_[b].alive)
      err << "edge touches dead node; ";
    if (!edges.insert(std::minmax(a, b)).second) err << "edge {" << a << "," << b << "} repeated; ";
    ++m;
  };
  for (const TreeEdge& e : tree_)
    if (e.alive) add_edge(e.a, e.b);
  std::size_t num_cycles = 0;
  for (const Cycle& c : cycles_) {
    if (!c.alive) continue;
    ++num_cycles;
    if (c.ring.size() < 3) err << "cycle shorter than 3; ";
    std::set<NodeId> distinct(c.ring.begin(), c.ring.end());
    if (distinct.size() != c.ring.size()) err << "cycle repeats a node; ";
    for (std::size_t i = 0; i < c.ring.size(); ++i) add_edge(c.ring[i], c.ring[(i + 1) % c.ring.size()]);
  }
  if (lambda_ == 0) {
    if (m != 0) err << "lambda = 0 cactus has edges; ";
    return err.str();
  }
  if (num_alive_nodes_ > std::max<std::size_t>(2 * n, 1)) err << "more than 2n nodes; ";
  if (m + 1 != num_alive_nodes_ + num_cycles) err << "edge count is not that of a cactus; ";

  // connectivity and non-empty cut sides via the rooted weights
  std::vector<VertexId> all;
  NodeId root = kNoNode;
  for (NodeId x = 0; x < nodes_.size() && root == kNoNode; ++x)
    if (nodes_[x].alive) root = x;
  if (root == kNoNode) return err.str();
  collect_side(root, std::numeric_limits<std::uint32_t>::max(), kNoNode, all);
  if (all.size() != n) err << "cactus is not connected; ";
  for (std::uint32_t e = 0; e < tree_.size(); ++e) {
    if (!tree_[e].alive) continue;
    std::vector<VertexId> side;
    collect_side(tree_[e].a, e, kNoNode, side);
    if (side.empty() || side.size() >= n) err << "tree edge " << e << " gives an empty side; ";
  }
  for (CycleId c = 0; c < cycles_.size(); ++c) {
    if (!cycles_[c].alive) continue;
    for (NodeId x : cycles_[c].ring) {
      std::vector<VertexId> side;
      collect_side(x, std::numeric_limits<std::uint32_t>::max(), c, side);
      if (side.empty()) err << "cycle " << c << " node " << x << " carries no vertices; ";
    }
  }
  return err.str();
}

void Cactus::write_text(std::ostream& out) const {
  std::vector<NodeId> compact(nodes_.size(), kNoNode);
  NodeId next = 0;
  for (NodeId x = 0; x < nodes_.size(); ++x)
    if (nodes_[x].alive) compact[x] = next++;
  out << "# lambda " << lambda_ << " nodes " << num_alive_nodes_ << " edges " << num_edges() << '\n';
  for (NodeId x = 0; x < nodes_.size(); ++x) {
    if (!nodes_[x].alive) continue;
    std::vector<VertexId> sorted = nodes_[x].members;
    std::sort(sorted.begin(), sorted.end());
    out << compact[x] << ':';
    for (VertexId v : sorted) out << ' ' << v;
    out << '\n';
  }
  for (const TreeEdge& e : tree_)
    if (e.alive) out << compact[e.a] << ' ' << compact[e.b] << " tree\n";
  CycleId cid = 0;
  for (const Cycle& c : cycles_) {
    if (!c.alive) continue;
    for (std::size_t i = 0; i < c.ring.size(); ++i)
      out << compact[c.ring[i]] << ' ' << compact[c.ring[(i + 1) % c.ring.size()]] << " cycle:" << cid << '\n';
    ++cid;
  }
}

std::string Cactus::to_text() const {
  std::ostringstream out;
  write_text(out);
  return out.str();
}

}  // namespace dyncut
