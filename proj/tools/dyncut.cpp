#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dyncut/bench.hpp"
#include "dyncut/io.hpp"
#include "dyncut/static_cactus.hpp"
#include "dyncut/workload.hpp"

using namespace dyncut;

namespace {

constexpr int kExitMismatch = 2;
constexpr int kExitInput = 3;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const char* extension(GraphFormat f) { return f == GraphFormat::Metis ? ".graph" : ".edges"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fully dynamic global minimum cut: benchmarks and tools"};
  app.require_subcommand(1);

  std::string format_name = "metis";
  DynamicOptions dyn_opts;
  double timeout_secs = 0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_name, "Graph file format: metis or edgelist")
        ->check(CLI::IsMember({"metis", "edgelist"}))
        ->capture_default_str();
    cmd->add_option("--gamma", dyn_opts.gamma, "Local relabeling depth of the deletion check")->capture_default_str();
    cmd->add_option("--delta", dyn_opts.delta, "Cache restore threshold (pending insertions per cached node)")
        ->capture_default_str();
    cmd->add_option("--seed", dyn_opts.seed, "Random seed")->capture_default_str();
    cmd->add_option("--timeout-secs", timeout_secs, "Static baseline time budget; 0 means none")
        ->capture_default_str();
  };

  std::string graph_path, stream_path, initial_path, csv_path, cactus_path, out_prefix, mode_name = "both";
  double alpha_ins = 0.01, alpha_del = 0.01;
  std::size_t n_ins = 1000, n_del = 0, gen_n = 0, gen_m = 0, gen_min_degree = 3;

  auto* init_stats = app.add_subcommand("init-stats", "Minimum cut and cactus statistics of a graph");
  init_stats->add_option("graph", graph_path, "Graph file")->required();
  add_common(init_stats);

  auto* run = app.add_subcommand("run", "Replay an update stream in dynamic, static or both modes");
  run->add_option("stream", stream_path, "Update stream file")->required();
  run->add_option("--initial", initial_path, "Initial graph (default: empty on the stream's n vertices)");
  run->add_option("--mode", mode_name, "dynamic, static or both")
      ->check(CLI::IsMember({"dynamic", "static", "both"}))
      ->capture_default_str();
  run->add_option("--csv", csv_path, "Write the CSV report here (default: stdout)");
  run->add_option("--dump-cactus", cactus_path, "Write the final dynamic cactus here");
  add_common(run);

  auto* gen_random = app.add_subcommand("gen-random", "Random insert/delete workload from a graph");
  gen_random->add_option("graph", graph_path, "Graph file")->required();
  gen_random->add_option("--alpha-ins", alpha_ins, "Fraction of edges inserted")->capture_default_str();
  gen_random->add_option("--alpha-del", alpha_del, "Fraction of edges deleted")->capture_default_str();
  gen_random->add_option("--out", out_prefix, "Output prefix")->required();
  add_common(gen_random);

  auto* gen_worst = app.add_subcommand("gen-worstcase", "Adversarial workload of separating insertions");
  gen_worst->add_option("graph", graph_path, "Graph file")->required();
  gen_worst->add_option("--n-ins", n_ins, "Number of insertions")->capture_default_str();
  gen_worst->add_option("--n-del", n_del, "Number of those insertions deleted again")->capture_default_str();
  gen_worst->add_option("--out", out_prefix, "Output prefix")->required();
  add_common(gen_worst);

  auto* gen_graph = app.add_subcommand("gen-graph", "Random G(n,m) graph with a minimum degree");
  gen_graph->add_option("--n", gen_n, "Vertices")->required();
  gen_graph->add_option("--m", gen_m, "Edges before the degree top-up")->required();
  gen_graph->add_option("--min-degree", gen_min_degree, "Minimum degree")->capture_default_str();
  gen_graph->add_option("--out", graph_path, "Output graph file")->required();
  add_common(gen_graph);

  auto* dump = app.add_subcommand("dump-cactus", "Print the minimum cut cactus of a graph");
  dump->add_option("graph", graph_path, "Graph file")->required();
  add_common(dump);

  CLI11_PARSE(app, argc, argv);

  try {
    const GraphFormat format = parse_format(format_name);

    if (*init_stats) {
      const DynGraph g = read_graph(graph_path, format);
      auto start = std::chrono::steady_clock::now();
      const Weight lambda = static_min_cut(g);
      const double t_lambda = seconds_since(start);
      start = std::chrono::steady_clock::now();
      const Cactus c = build_cactus(g, dyn_opts.seed, lambda);
      const double t_cactus = seconds_since(start);
      std::cout << "vertices " << g.num_vertices() << "\nedges " << g.num_edges() << "\nlambda " << lambda
                << "\ncactus_nodes " << c.num_nodes() << "\ncactus_nonempty_nodes " << c.num_nonempty_nodes()
                << "\ncactus_tree_edges " << c.num_tree_edges() << "\ncactus_cycles " << c.num_cycles()
                << "\nstatic_min_cut_secs " << t_lambda << "\nbuild_cactus_secs " << t_cactus << '\n';
      return 0;
    }

    if (*run) {
      const UpdateStream stream = read_stream(stream_path);
      const DynGraph initial = initial_path.empty() ? DynGraph(stream.num_vertices) : read_graph(initial_path, format);
      RunOptions opts;
      opts.mode = parse_mode(mode_name);
      opts.dynamic = dyn_opts;
      opts.timeout_secs = timeout_secs;
      const RunReport report = run_compare(initial, stream, opts);
      if (csv_path.empty()) {
        report.write_csv(std::cout);
      } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        report.write_csv(out);
      }
      if (!cactus_path.empty()) {
        DynamicMinCut dyn(initial, dyn_opts);
        for (const Update& up : stream.updates)
          if (up.op == Update::Op::Insert) dyn.insert(up.u, up.v, up.w);
          else dyn.erase(up.u, up.v);
        std::ofstream out(cactus_path);
        if (!out) throw std::runtime_error("cannot write " + cactus_path);
        dyn.cactus().write_text(out);
      }
      if (report.mismatches > 0) {
        std::cerr << "lambda mismatch: " << report.mismatches << " batches, first at batch "
                  << report.first_mismatch_batch << '\n';
        return kExitMismatch;
      }
      return 0;
    }

    if (*gen_random) {
      const DynGraph g = read_graph(graph_path, format);
      const Workload w = gen_random_workload(g, alpha_ins, alpha_del, dyn_opts.seed);
      write_graph_file(out_prefix + ".initial" + extension(format), w.initial, format);
      write_stream_file(out_prefix + ".stream", w.stream);
      std::cout << "wrote " << w.stream.updates.size() << " updates\n";
      return 0;
    }

    if (*gen_worst) {
      const DynGraph g = read_graph(graph_path, format);
      DynamicMinCut dyn(g, dyn_opts);
      const UpdateStream stream = gen_worstcase_workload(dyn, n_ins, n_del, dyn_opts.seed);
      write_graph_file(out_prefix + ".initial" + extension(format), g, format);
      write_stream_file(out_prefix + ".stream", stream);
      std::cout << "wrote " << stream.updates.size() << " updates\n";
      return 0;
    }

    if (*gen_graph) {
      const DynGraph g = random_graph_min_degree(gen_n, gen_m, gen_min_degree, dyn_opts.seed);
      write_graph_file(graph_path, g, format);
      std::cout << "wrote " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
      return 0;
    }

    if (*dump) {
      const DynGraph g = read_graph(graph_path, format);
      build_cactus(g, dyn_opts.seed).write_text(std::cout);
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
