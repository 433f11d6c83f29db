#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dyncut/flow.hpp"
#include "support/oracles.hpp"

using namespace dyncut;
using testing_support::augmenting_path_max_flow;
using testing_support::brute_force_st_cut;
using testing_support::random_graph;

namespace {

std::pair<VertexId, VertexId> random_pair(std::size_t n, std::mt19937_64& rng) {
  const auto s = static_cast<VertexId>(rng() % n);
  auto t = static_cast<VertexId>(rng() % n);
  while (t == s) t = static_cast<VertexId>(rng() % n);
  return {s, t};
}

constexpr Weight kHuge = Weight{1} << 50;

}  // namespace

TEST_CASE("small examples") {
  SUBCASE("single edge") {
    DynGraph g(2);
    g.insert_edge(0, 1, 5);
    FlowNetwork f(g);
    auto r = f.max_flow_bounded(0, 1, kHuge);
    CHECK(r.kind == FlowResult::Kind::Exact);
    CHECK(r.value == 5);
    CHECK(r.source_side == std::vector<VertexId>{0});
  }
  SUBCASE("bound reached on a cycle") {
    DynGraph g(6);
    for (VertexId i = 0; i < 6; ++i) g.insert_edge(i, (i + 1) % 6, 1);
    FlowNetwork f(g);
    auto r = f.max_flow_bounded(0, 3, 2);
    CHECK(r.reached_bound());
    CHECK(r.value == 2);
    r = f.max_flow_bounded(0, 3, 3);
    CHECK(r.kind == FlowResult::Kind::Exact);
    CHECK(r.value == 2);
  }
  SUBCASE("disconnected endpoints") {
    DynGraph g(4);
    g.insert_edge(0, 1, 3);
    g.insert_edge(2, 3, 3);
    FlowNetwork f(g);
    auto r = f.max_flow_bounded(0, 3, 1);
    CHECK(r.kind == FlowResult::Kind::Exact);
    CHECK(r.value == 0);
    CHECK(r.source_side.size() == 2);
  }
}

TEST_CASE("exact value matches augmenting paths and brute force") {
  std::mt19937_64 rng(11);
  int instances = 0;
  for (int round = 0; round < 520; ++round) {
    const std::size_t n = round < 200 ? 3 + rng() % 12 : 15 + rng() % 186;
    const double p = n <= 14 ? 0.2 + 0.1 * static_cast<double>(rng() % 6) : 4.0 / static_cast<double>(n) + 0.05;
    const DynGraph g = random_graph(n, p, 1 + static_cast<Weight>(rng() % 8), rng);
    FlowNetwork f(g);
    const auto [s, t] = random_pair(n, rng);
    const auto r = f.max_flow_bounded(s, t, kHuge);
    REQUIRE(r.kind == FlowResult::Kind::Exact);
    const Weight expected = augmenting_path_max_flow(g, s, t);
    CHECK(r.value == expected);
    CHECK(g.cut_weight(r.source_side) == r.value);
    if (n <= 14) CHECK(r.value == brute_force_st_cut(g, s, t));

    // a bound at or below the maximum flow is always reached
    if (expected > 0) {
      const Weight b = 1 + static_cast<Weight>(rng() % static_cast<std::uint64_t>(expected));
      const auto rb = f.max_flow_bounded(s, t, b, static_cast<std::uint32_t>(rng() % 3));
      CHECK(rb.reached_bound());
      CHECK(rb.value == b);
    }
    const auto above = f.max_flow_bounded(s, t, expected + 1);
    CHECK(above.kind == FlowResult::Kind::Exact);
    CHECK(above.value == expected);
    ++instances;
  }
  CHECK(instances >= 500);
}

TEST_CASE("local relabeling yields a valid labeling") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 4 + rng() % 40;
    const DynGraph g = random_graph(n, 0.3, 1 + static_cast<Weight>(rng() % 5), rng);
    FlowNetwork f(g);
    const auto [s, t] = random_pair(n, rng);
    for (std::uint32_t gamma : {0u, 1u, 2u, static_cast<std::uint32_t>(n - 1)}) {
      f.initialize(s, t, gamma);
      CHECK(f.labeling_violations() == 0);
      CHECK(f.label(t) == 0);
      CHECK(f.label(s) == n);
      for (std::size_t i = 0; i < g.arity(s); ++i) CHECK(f.residual(s, i) == 0);
    }
  }
}

TEST_CASE("implicit reset matches explicit reset") {
  std::mt19937_64 rng(13);
  for (int seq = 0; seq < 100; ++seq) {
    const std::size_t n = 5 + rng() % 25;
    DynGraph g = random_graph(n, 0.35, 4, rng);
    FlowNetwork implicit(g, FlowNetwork::ResetPolicy::Implicit);
    FlowNetwork explicit_reset(g, FlowNetwork::ResetPolicy::Explicit);
    for (int step = 0; step < 20; ++step) {
      // mutate the graph between problems
      const auto [a, b] = random_pair(n, rng);
      if (g.has_edge(a, b) && rng() % 2) g.delete_edge(a, b);
      else g.insert_edge(a, b, 1 + static_cast<Weight>(rng() % 3));

      const auto [s, t] = random_pair(n, rng);
      const Weight bound = rng() % 3 == 0 ? kHuge : 1 + static_cast<Weight>(rng() % 6);
      const auto gamma = static_cast<std::uint32_t>(rng() % 3);
      const auto ri = implicit.max_flow_bounded(s, t, bound, gamma);
      const auto re = explicit_reset.max_flow_bounded(s, t, bound, gamma);
      CHECK(ri.kind == re.kind);
      CHECK(ri.value == re.value);
      CHECK(ri.source_side == re.source_side);
      if (ri.kind == FlowResult::Kind::Exact) CHECK(ri.value == augmenting_path_max_flow(g, s, t));
      else CHECK(augmenting_path_max_flow(g, s, t) >= bound);
    }
  }
}

TEST_CASE("flow conservation after an exact solve") {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 4 + rng() % 30;
    const DynGraph g = random_graph(n, 0.3, 6, rng);
    FlowNetwork f(g);
    const auto [s, t] = random_pair(n, rng);
    const auto r = f.max_flow_bounded(s, t, kHuge);
    REQUIRE(r.kind == FlowResult::Kind::Exact);
    for (VertexId v = 0; v < n; ++v)
      for (std::size_t i = 0; i < g.arity(v); ++i) {
        CHECK(f.flow(v, i) <= g.arcs(v)[i].weight);
        CHECK(f.residual(v, i) >= 0);
      }
  }
}
