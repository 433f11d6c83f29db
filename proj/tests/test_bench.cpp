#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "dyncut/bench.hpp"
#include "dyncut/io.hpp"
#include "dyncut/static_cactus.hpp"
#include "dyncut/workload.hpp"
#include "support/oracles.hpp"

using namespace dyncut;

namespace {

DynGraph parse(const std::string& text, GraphFormat f) {
  std::istringstream in(text);
  return parse_graph(in, f);
}

UpdateStream parse_updates(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(in);
}

std::size_t error_line(const std::string& text, bool stream) {
  try {
    if (stream) parse_updates(text);
    else parse(text, GraphFormat::Metis);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("graph parsing") {
  SUBCASE("METIS path") {
    const DynGraph g = parse("3 2\n2\n1 3\n2\n", GraphFormat::Metis);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.edge_weight(0, 1) == 1);
    CHECK(g.edge_weight(1, 2) == 1);
  }
  SUBCASE("METIS with weights, comments and isolated vertices") {
    const DynGraph g = parse("% comment\n4 1 1\n2 5\n1 5\n\n\n", GraphFormat::Metis);
    CHECK(g.num_vertices() == 4);
    CHECK(g.edge_weight(0, 1) == 5);
    CHECK(g.degree(3) == 0);
  }
  SUBCASE("METIS with vertex weights") {
    const DynGraph g = parse("2 1 11\n7 2 3\n9 1 3\n", GraphFormat::Metis);
    CHECK(g.edge_weight(0, 1) == 3);
  }
  SUBCASE("edge list") {
    const DynGraph g = parse("0 1 4\n1 2 4\n", GraphFormat::EdgeList);
    CHECK(g.num_vertices() == 3);
    CHECK(g.edge_weight(0, 1) == 4);
    CHECK(g.edge_weight(1, 2) == 4);
  }
  SUBCASE("duplicates merge, self-loops drop") {
    const DynGraph g = parse("# x\n0 1\n1 0\n% y\n2 2 5\n", GraphFormat::EdgeList);
    CHECK(g.num_edges() == 1);
    CHECK(g.edge_weight(0, 1) == 2);
  }
  SUBCASE("errors carry line numbers") {
    CHECK(error_line("3 2\n2\n1 4\n2\n", false) == 3);
    CHECK(error_line("x y\n", false) == 1);
    CHECK(error_line("3 2\n2\n", false) == 2);
    CHECK_THROWS_AS(parse("0 1\n0 x\n", GraphFormat::EdgeList), ParseError);
  }
  SUBCASE("round trip") {
    std::mt19937_64 rng(1);
    const DynGraph g = testing_support::random_graph(20, 0.3, 9, rng);
    for (GraphFormat f : {GraphFormat::Metis, GraphFormat::EdgeList}) {
      std::ostringstream out;
      write_graph(out, g, f);
      const DynGraph h = parse(out.str(), f);
      CHECK(h.num_edges() == g.num_edges());
      g.for_each_edge([&](VertexId u, VertexId v, Weight w) { CHECK(h.edge_weight(u, v) == w); });
    }
  }
}

TEST_CASE("stream parsing") {
  const UpdateStream s = parse_updates("n 3\n1 + 0 1\n1 + 1 2\n2 - 0 1\n");
  CHECK(s.num_vertices == 3);
  CHECK(s.batches().size() == 2);
  DynGraph g(s.num_vertices);
  for (const Update& up : s.updates) apply_update(g, up);
  CHECK(g.num_edges() == 1);
  CHECK(g.has_edge(1, 2));

  CHECK(parse_updates("n 4\n").batches().empty());
  CHECK(error_line("n 3\n2 + 0 1\n1 + 1 2\n", true) == 3);
  CHECK(error_line("n 3\n1 + 0 3\n", true) == 2);
  CHECK(error_line("1 + 0 1\n", true) == 1);
  CHECK(error_line("n 3\n1 * 0 1\n", true) == 2);

  DynGraph h(3);
  const UpdateStream bad = parse_updates("n 3\n# c\n1 - 0 1\n");
  try {
    apply_update(h, bad.updates[0]);
    FAIL("expected a replay error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::ostringstream out;
  write_stream(out, s);
  const UpdateStream again = parse_updates(out.str());
  REQUIRE(again.updates.size() == s.updates.size());
  for (std::size_t i = 0; i < s.updates.size(); ++i) {
    CHECK(again.updates[i].time == s.updates[i].time);
    CHECK(again.updates[i].op == s.updates[i].op);
    CHECK(again.updates[i].u == s.updates[i].u);
    CHECK(again.updates[i].v == s.updates[i].v);
  }
}

TEST_CASE("random workload") {
  const DynGraph g = random_graph_min_degree(400, 2500, 3, 7);
  for (VertexId v = 0; v < g.num_vertices(); ++v) CHECK(g.arity(v) >= 3);

  const Workload ins_only = gen_random_workload(g, 0.04, 0, 1);
  CHECK(ins_only.stream.updates.size() == static_cast<std::size_t>(0.04 * static_cast<double>(g.num_edges())));
  for (const Update& up : ins_only.stream.updates) CHECK(up.op == Update::Op::Insert);

  const Workload dec = gen_random_workload(g, 0, 0.04, 1);
  for (const Update& up : dec.stream.updates) CHECK(up.op == Update::Op::Delete);
  CHECK(dec.initial.num_edges() == g.num_edges());

  const Workload a = gen_random_workload(g, 0.1, 0.1, 5);
  const Workload b = gen_random_workload(g, 0.1, 0.1, 5);
  REQUIRE(a.stream.updates.size() == b.stream.updates.size());
  for (std::size_t i = 0; i < a.stream.updates.size(); ++i) {
    CHECK(a.stream.updates[i].u == b.stream.updates[i].u);
    CHECK(a.stream.updates[i].v == b.stream.updates[i].v);
    CHECK(a.stream.updates[i].op == b.stream.updates[i].op);
  }
  CHECK(a.stream.batches().size() == a.stream.updates.size());

  // every vertex keeps an edge that the stream never touches
  std::vector<std::size_t> touched(g.num_vertices());
  for (const Update& up : a.stream.updates) {
    ++touched[up.u];
    ++touched[up.v];
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) CHECK(touched[v] < g.arity(v));

  CHECK_THROWS(gen_random_workload(g, 0.6, 0.5, 1));
  CHECK_THROWS(gen_random_workload(testing_support::path_graph(4), 0.7, 0, 1));
}

TEST_CASE("worst-case workload") {
  SUBCASE("single chord on a cycle") {
    DynamicMinCut dyn(testing_support::cycle_graph(5));
    const UpdateStream s = gen_worstcase_workload(dyn, 1, 0, 3);
    REQUIRE(s.updates.size() == 1);
    CHECK(dyn.stats().insert_separated == 1);
    CHECK(dyn.cactus().num_nodes() < 5);
  }
  SUBCASE("replay takes the separated branch every time") {
    const DynGraph g = random_graph_min_degree(300, 900, 3, 11);
    DynamicOptions opts;
    opts.seed = 4;
    DynamicMinCut gen(g, opts);
    const UpdateStream s = gen_worstcase_workload(gen, 100, 50, 9);
    CHECK(s.updates.size() == 150);
    std::size_t ins = 0;
    DynGraph replay = g;
    for (const Update& up : s.updates) {
      apply_update(replay, up);
      ins += up.op == Update::Op::Insert;
    }
    CHECK(ins == 100);
    DynamicMinCut fresh(g, opts);
    for (const Update& up : s.updates)
      if (up.op == Update::Op::Insert) fresh.insert(up.u, up.v, up.w);
      else fresh.erase(up.u, up.v);
    CHECK(fresh.stats().insert_separated == 100);
    CHECK(fresh.current_lambda() == static_min_cut(replay));
  }
  SUBCASE("invalid requests") {
    DynamicMinCut dyn(testing_support::cycle_graph(5));
    CHECK_THROWS(gen_worstcase_workload(dyn, 1, 2, 1));
  }
}

TEST_CASE("run_compare") {
  SUBCASE("cycle delete and reinsert") {
    const DynGraph c5 = testing_support::cycle_graph(5);
    const UpdateStream s = parse_updates("n 5\n1 - 0 1\n2 + 0 1 1\n");
    for (RunMode mode : {RunMode::Dynamic, RunMode::Static, RunMode::Both}) {
      RunOptions opts;
      opts.mode = mode;
      const RunReport r = run_compare(c5, s, opts);
      std::vector<Weight> lambdas;
      for (const RunRow& row : r.rows)
        if (row.dynamic == (mode != RunMode::Static)) lambdas.push_back(row.lambda);
      CHECK(lambdas == std::vector<Weight>{2, 1, 2});
      CHECK(r.mismatches == 0);
    }
  }
  SUBCASE("empty stream") {
    RunOptions opts;
    const RunReport r = run_compare(testing_support::cycle_graph(4), parse_updates("n 4\n"), opts);
    CHECK(r.num_batches == 0);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].kind == RunRow::Kind::Init);
  }
  SUBCASE("replay error names the line") {
    RunOptions opts;
    opts.mode = RunMode::Dynamic;
    try {
      run_compare(DynGraph(3), parse_updates("n 3\n1 + 0 1\n2 - 1 2\n"), opts);
      FAIL("expected a replay error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("random workload agrees in both modes") {
    std::mt19937_64 rng(17);
    const DynGraph g = testing_support::random_graph(30, 0.3, 1, rng);
    UpdateStream s{30, {}};
    DynGraph cur = g;
    std::int64_t t = 0;
    while (s.updates.size() < 500) {
      Update up;
      up.time = ++t / 2;  // two updates per batch
      up.u = static_cast<VertexId>(rng() % 30);
      up.v = static_cast<VertexId>(rng() % 30);
      if (up.u == up.v) {
        --t;
        continue;
      }
      up.op = cur.has_edge(up.u, up.v) && rng() % 2 ? Update::Op::Delete : Update::Op::Insert;
      apply_update(cur, up);
      s.updates.push_back(up);
    }
    RunOptions opts;
    const RunReport r = run_compare(g, s, opts);
    CHECK(r.mismatches == 0);
    CHECK(r.static_batches_measured == r.num_batches);
    CHECK(r.speedup() > 0);

    std::ostringstream csv;
    r.write_csv(csv);
    CHECK(csv.str().rfind("update_idx,batch_idx,op,u,v,w,lambda,micros\n", 0) == 0);
    CHECK(csv.str().find("# mismatches=0") != std::string::npos);

    // identical inputs give identical lambda sequences and counters
    const RunReport again = run_compare(g, s, opts);
    CHECK(again.stats.flow_calls == r.stats.flow_calls);
    CHECK(again.stats.full_recomputes == r.stats.full_recomputes);
    REQUIRE(again.rows.size() == r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(again.rows[i].lambda == r.rows[i].lambda);
  }
  SUBCASE("timeout extrapolates") {
    const DynGraph g = random_graph_min_degree(2000, 10000, 3, 2);
    const Workload w = gen_random_workload(g, 0.005, 0.005, 3);
    RunOptions opts;
    opts.timeout_secs = 1e-6;
    const RunReport r = run_compare(w.initial, w.stream, opts);
    CHECK(r.static_extrapolated);
    CHECK(r.static_batches_measured < r.num_batches);
    CHECK(r.static_total_micros() > r.static_batch_micros);
  }
}
