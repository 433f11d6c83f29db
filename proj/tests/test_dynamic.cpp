#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dyncut/dynamic.hpp"
#include "dyncut/static_cactus.hpp"
#include "support/oracles.hpp"

using namespace dyncut;
using testing_support::brute_force_lambda;

namespace {

void check_represented_cuts(const DynamicMinCut& d) {
  const Cactus& c = d.cactus();
  REQUIRE(c.validate() == "");
  if (c.lambda() == 0) return;
  for (const auto& side : c.enumerate_cuts()) CHECK(d.graph().cut_weight(side) == c.lambda());
}

// Random update: 60% insertions of weight 1..4, 40% deletions of present edges.
void random_update(DynamicMinCut& d, std::mt19937_64& rng, bool& was_insert) {
  const auto n = static_cast<VertexId>(d.graph().num_vertices());
  std::vector<std::pair<VertexId, VertexId>> present;
  d.graph().for_each_edge([&](VertexId u, VertexId v, Weight) { present.emplace_back(u, v); });
  was_insert = present.empty() || rng() % 10 < 6;
  if (was_insert) {
    VertexId u = static_cast<VertexId>(rng() % n), v = static_cast<VertexId>(rng() % n);
    while (v == u) v = static_cast<VertexId>(rng() % n);
    d.insert(u, v, 1 + static_cast<Weight>(rng() % 4));
  } else {
    const auto [u, v] = present[rng() % present.size()];
    d.erase(u, v);
  }
}

}  // namespace

TEST_CASE("init") {
  DynamicMinCut c5(testing_support::cycle_graph(5));
  CHECK(c5.current_lambda() == 2);
  CHECK(c5.cactus().num_cycles() == 1);
  CHECK(c5.stats().full_recomputes == 1);

  DynGraph parts(4);
  parts.insert_edge(0, 1, 1);
  parts.insert_edge(2, 3, 1);
  DynamicMinCut two(parts);
  CHECK(two.current_lambda() == 0);
  CHECK(two.cactus().num_nodes() == 2);
  CHECK(two.graph().cut_weight(two.current_cut()) == 0);

  DynamicMinCut k4(testing_support::complete_graph(4));
  CHECK(k4.current_lambda() == 3);
  CHECK(k4.cactus().enumerate_cuts().size() == 4);
  CHECK(k4.options().gamma == 1);
  CHECK(k4.options().delta == 2.0);
}

TEST_CASE("insertions") {
  SUBCASE("chord on a cycle keeps lambda") {
    DynamicMinCut d(testing_support::cycle_graph(5));
    d.insert(0, 2, 1);
    CHECK(d.current_lambda() == 2);
    CHECK(d.stats().insert_separated == 1);
    CHECK(d.cactus().locate(0) == d.cactus().locate(2));
    check_represented_cuts(d);
    CHECK(d.cactus().enumerate_cuts() == oracle_all_min_cuts(d.graph()).cuts);
  }
  SUBCASE("chords until a recompute") {
    DynamicMinCut d(testing_support::cycle_graph(5));
    for (VertexId v = 1; v < 5; ++v)
      if (!d.graph().has_edge(0, v)) d.insert(0, v, 1);
    d.insert(1, 3, 1);
    d.insert(2, 4, 1);
    CHECK(d.stats().full_recomputes >= 2);
    CHECK(d.current_lambda() == brute_force_lambda(d.graph()));
  }
  SUBCASE("joining two components") {
    DynGraph g(6);
    for (VertexId b : {0u, 3u}) {
      g.insert_edge(b, b + 1, 1);
      g.insert_edge(b + 1, b + 2, 1);
      g.insert_edge(b, b + 2, 1);
    }
    DynamicMinCut d(g);
    CHECK(d.current_lambda() == 0);
    d.insert(2, 3, 1);
    CHECK(d.current_lambda() == 1);
    CHECK(d.stats().insert_component_merge == 1);
    CHECK(d.cactus().enumerate_cuts() == oracle_all_min_cuts(d.graph()).cuts);
  }
  SUBCASE("insertion inside one node") {
    DynGraph g(5);
    g.insert_edge(0, 1, 1);
    g.insert_edge(2, 3, 1);
    DynamicMinCut d(g);
    d.insert(0, 1, 2);
    CHECK(d.stats().insert_same_node == 1);
    CHECK(d.cactus().num_nodes() == 3);
  }
  SUBCASE("invalid insertions are rejected") {
    DynamicMinCut d(testing_support::cycle_graph(4));
    CHECK_THROWS_AS(d.insert(1, 1, 1), GraphError);
    CHECK_THROWS_AS(d.insert(0, 2, 0), GraphError);
    CHECK(d.stats().insertions == 0);
  }
}

TEST_CASE("deletions") {
  SUBCASE("cycle edge") {
    DynamicMinCut d(testing_support::cycle_graph(5));
    d.erase(0, 1);
    CHECK(d.current_lambda() == 1);
    CHECK(d.stats().exact_results == 1);
    CHECK(d.stats().uv_rebuilds == 1);
    CHECK(d.cache_live());
    check_represented_cuts(d);
    CHECK(d.cactus().enumerate_cuts().size() == 4);
  }
  SUBCASE("complete graph edge") {
    DynamicMinCut d(testing_support::complete_graph(4));
    d.erase(0, 1);
    CHECK(d.current_lambda() == 2);
    check_represented_cuts(d);
  }
  SUBCASE("doubled cycle") {
    DynamicMinCut d(testing_support::cycle_graph(5, 2));
    CHECK(d.current_lambda() == 4);
    d.erase(0, 1);
    CHECK(d.current_lambda() == 2);
  }
  SUBCASE("non-critical edge terminates early") {
    DynGraph g(10);  // two 5-cliques and a bridge
    for (VertexId base : {0u, 5u})
      for (VertexId u = 0; u < 5; ++u)
        for (VertexId v = u + 1; v < 5; ++v) g.insert_edge(base + u, base + v, 1);
    g.insert_edge(4, 5, 1);
    DynamicMinCut d(g);
    d.erase(0, 1);
    CHECK(d.current_lambda() == 1);
    CHECK(d.stats().early_terminations == 1);
    CHECK(!d.cache_live());
  }
  SUBCASE("disconnected graph") {
    DynGraph g(6);
    for (VertexId b : {0u, 3u}) {
      g.insert_edge(b, b + 1, 1);
      g.insert_edge(b + 1, b + 2, 1);
      g.insert_edge(b, b + 2, 1);
    }
    DynamicMinCut d(g);
    d.erase(0, 1);
    CHECK(d.current_lambda() == 0);
    CHECK(d.cactus().num_nodes() == 2);
    CHECK(d.stats().flow_calls == 0);
    d.erase(0, 2);
    CHECK(d.cactus().num_nodes() == 3);
    CHECK(d.cactus().locate(0) != d.cactus().locate(1));
    CHECK(d.cactus().validate() == "");
  }
  SUBCASE("missing edge") {
    DynamicMinCut d(testing_support::path_graph(3));
    CHECK_THROWS_AS(d.erase(0, 2), GraphError);
  }
}

TEST_CASE("cache") {
  SUBCASE("restore on a large cycle") {
    DynamicMinCut d(testing_support::cycle_graph(200));
    for (int i = 0; i < 10; ++i) {
      d.erase(7, 8);
      CHECK(d.current_lambda() == 1);
      d.insert(7, 8, 1);
      CHECK(d.current_lambda() == 2);
    }
    CHECK(d.stats().full_recomputes == 1);
    CHECK(d.stats().cache_restores == 10);
    CHECK(d.cactus().num_cycles() == 1);
    check_represented_cuts(d);
  }
  SUBCASE("too many pending insertions decline the restore") {
    DynGraph g = testing_support::cycle_graph(6);
    DynamicMinCut d(g, {1, 0.5, 1});
    d.erase(0, 1);
    CHECK(d.cache_live());
    d.insert(2, 4, 1);
    d.insert(3, 5, 1);
    d.insert(2, 5, 1);
    CHECK(!d.cache_live());
    d.insert(0, 1, 1);
    CHECK(d.stats().cache_restores == 0);
    CHECK(d.stats().cache_declines == 1);
    CHECK(d.current_lambda() == brute_force_lambda(d.graph()));
  }
  SUBCASE("restored cuts are minimum") {
    DynamicMinCut d(testing_support::cycle_graph(12));
    d.erase(0, 1);
    d.insert(3, 4, 1);
    d.insert(0, 1, 1);
    CHECK(d.stats().cache_restores == 1);
    CHECK(d.current_lambda() == 2);
    check_represented_cuts(d);
  }
  SUBCASE("explicit try_restore_from_cache") {
    DynamicMinCut d(testing_support::cycle_graph(8));
    CHECK(!d.try_restore_from_cache());
    d.erase(0, 1);
    CHECK(!d.try_restore_from_cache());  // lambda is still 1, cache kept
    CHECK(d.cache_live());
  }
}

TEST_CASE("cut queries") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 4 + rng() % 9;
    const DynGraph g = testing_support::random_graph(n, 0.5, 3, rng);
    DynamicMinCut d(g, {1, 2.0, static_cast<std::uint64_t>(round)});
    CHECK(d.graph().cut_weight(d.current_cut()) == d.current_lambda());
    const auto balanced = d.current_most_balanced();
    CHECK(d.graph().cut_weight(balanced) == d.current_lambda());
    if (d.current_lambda() == 0) continue;
    std::size_t best = 0;
    for (const auto& side : oracle_all_min_cuts(g).cuts) best = std::max(best, std::min(side.size(), n - side.size()));
    CHECK(std::min(balanced.size(), n - balanced.size()) == best);
  }
}

TEST_CASE("lambda matches recomputation after every update") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 6 + rng() % 10;
    DynamicMinCut d(testing_support::random_graph(n, 0.3, 1 + round % 3, rng),
                    {static_cast<std::uint32_t>(round % 3), 2.0, static_cast<std::uint64_t>(round)});
    for (int step = 0; step < 300; ++step) {
      const Weight before = d.current_lambda();
      bool was_insert = false;
      random_update(d, rng, was_insert);
      const Weight after = d.current_lambda();
      REQUIRE(after == brute_force_lambda(d.graph()));
      if (was_insert) CHECK(after >= before);
      else CHECK(after <= before);
      CHECK(d.graph().cut_weight(d.current_cut()) == after);
      CHECK(d.graph().cut_weight(d.current_most_balanced()) == after);
      if (step % 25 == 0) check_represented_cuts(d);
    }
    const auto& s = d.stats();
    CHECK(s.early_terminations + s.exact_results == s.flow_calls);
  }
}
