#include "dyncut/bench.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "dyncut/static_cactus.hpp"

namespace dyncut {

namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

double geomean(const std::vector<RunRow>& rows, bool dynamic) {
  double log_sum = 0;
  std::size_t count = 0;
  for (const RunRow& r : rows) {
    if (r.dynamic != dynamic || r.kind == RunRow::Kind::Init) continue;
    log_sum += std::log(std::max(r.micros, 1e-3));
    ++count;
  }
  return count == 0 ? 0 : std::exp(log_sum / static_cast<double>(count));
}

const char* op_name(RunRow::Kind kind) {
  switch (kind) {
    case RunRow::Kind::Init: return "init";
    case RunRow::Kind::Insert: return "+";
    case RunRow::Kind::Delete: return "-";
    case RunRow::Kind::Batch: return "batch";
  }
  return "?";
}

}  // namespace

RunMode parse_mode(const std::string& name) {
  if (name == "dynamic") return RunMode::Dynamic;
  if (name == "static") return RunMode::Static;
  if (name == "both") return RunMode::Both;
  throw std::invalid_argument("unknown mode '" + name + "' (dynamic|static|both)");
}

double RunReport::static_total_micros() const {
  if (static_batches_measured == 0) return 0;
  if (!static_extrapolated) return static_batch_micros;
  return static_batch_micros / static_cast<double>(static_batches_measured) * static_cast<double>(num_batches);
}

double RunReport::dynamic_total_micros() const { return dynamic_init_micros + dynamic_update_micros; }

double RunReport::speedup() const {
  if (mode != RunMode::Both || dynamic_total_micros() <= 0) return 0;
  return static_total_micros() / dynamic_total_micros();
}

double RunReport::dynamic_geomean_micros() const { return geomean(rows, true); }
double RunReport::static_geomean_micros() const { return geomean(rows, false); }

void RunReport::write_csv(std::ostream& out) const {
  out << "update_idx,batch_idx,op,u,v,w,lambda,micros\n";
  for (const RunRow& r : rows) {
    out << r.update_idx << ',' << r.batch_idx << ',' << (r.dynamic ? "" : "static-") << op_name(r.kind) << ',';
    if (r.kind == RunRow::Kind::Insert || r.kind == RunRow::Kind::Delete) out << r.u << ',' << r.v << ',' << r.w;
    else out << ",,";
    out << ',' << r.lambda << ',' << r.micros << '\n';
  }
  const char* mode_name = mode == RunMode::Dynamic ? "dynamic" : mode == RunMode::Static ? "static" : "both";
  out << "# mode=" << mode_name << '\n'
      << "# updates=" << num_updates << '\n'
      << "# batches=" << num_batches << '\n';
  if (mode != RunMode::Static) {
    out << "# dynamic_init_micros=" << dynamic_init_micros << '\n'
        << "# dynamic_total_micros=" << dynamic_total_micros() << '\n'
        << "# dynamic_geomean_micros=" << dynamic_geomean_micros() << '\n'
        << "# stats.insertions=" << stats.insertions << '\n'
        << "# stats.deletions=" << stats.deletions << '\n'
        << "# stats.flow_calls=" << stats.flow_calls << '\n'
        << "# stats.early_terminations=" << stats.early_terminations << '\n'
        << "# stats.exact_results=" << stats.exact_results << '\n'
        << "# stats.full_recomputes=" << stats.full_recomputes << '\n'
        << "# stats.uv_rebuilds=" << stats.uv_rebuilds << '\n'
        << "# stats.cache_restores=" << stats.cache_restores << '\n'
        << "# stats.cache_declines=" << stats.cache_declines << '\n'
        << "# stats.replayed_insertions=" << stats.replayed_insertions << '\n'
        << "# stats.insert_same_node=" << stats.insert_same_node << '\n'
        << "# stats.insert_separated=" << stats.insert_separated << '\n'
        << "# stats.insert_component_merge=" << stats.insert_component_merge << '\n';
  }
  if (mode != RunMode::Dynamic) {
    out << "# static_init_micros=" << static_init_micros << '\n'
        << "# static_batches_measured=" << static_batches_measured << '\n'
        << "# static_total_micros=" << static_total_micros() << '\n'
        << "# static_extrapolated=" << (static_extrapolated ? 1 : 0) << '\n'
        << "# static_geomean_micros=" << static_geomean_micros() << '\n';
  }
  if (mode == RunMode::Both) {
    out << "# speedup=" << speedup() << '\n' << "# mismatches=" << mismatches << '\n';
    if (mismatches > 0) out << "# first_mismatch_batch=" << first_mismatch_batch << '\n';
  }
}

RunReport run_compare(const DynGraph& initial, const UpdateStream& stream, const RunOptions& options) {
  if (stream.num_vertices != initial.num_vertices())
    throw GraphError("stream declares " + std::to_string(stream.num_vertices) + " vertices, initial graph has " +
                     std::to_string(initial.num_vertices()));
  RunReport report;
  report.mode = options.mode;
  report.num_updates = stream.updates.size();
  const auto batches = stream.batches();
  report.num_batches = batches.size();
  const bool run_dynamic = options.mode != RunMode::Static;
  const bool run_static = options.mode != RunMode::Dynamic;

  std::vector<Weight> dynamic_lambda;  // after each batch
  if (run_dynamic) {
    auto start = Clock::now();
    DynamicMinCut dyn(initial, options.dynamic);
    report.dynamic_init_micros = micros_since(start);
    report.rows.push_back({RunRow::Kind::Init, true, 0, 0, 0, 0, 0, dyn.current_lambda(), report.dynamic_init_micros});
    for (std::size_t b = 0; b < batches.size(); ++b) {
      for (std::size_t i = batches[b].first; i < batches[b].second; ++i) {
        const Update& up = stream.updates[i];
        const bool ins = up.op == Update::Op::Insert;
        if (!ins && !dyn.graph().has_edge(up.u, up.v))
          throw ParseError(up.line, "delete of absent edge (" + std::to_string(up.u) + "," + std::to_string(up.v) + ")");
        start = Clock::now();
        if (ins) dyn.insert(up.u, up.v, up.w);
        else dyn.erase(up.u, up.v);
        const double t = micros_since(start);
        report.dynamic_update_micros += t;
        report.rows.push_back({ins ? RunRow::Kind::Insert : RunRow::Kind::Delete, true, i + 1, b + 1, up.u, up.v,
                               ins ? up.w : 0, dyn.current_lambda(), t});
      }
      dynamic_lambda.push_back(dyn.current_lambda());
    }
    report.stats = dyn.stats();
  }

  if (run_static) {
    DynGraph g = initial;
    auto start = Clock::now();
    const Weight lambda0 = static_min_cut(g);
    report.static_init_micros = micros_since(start);
    report.rows.push_back({RunRow::Kind::Init, false, 0, 0, 0, 0, 0, lambda0, report.static_init_micros});
    for (std::size_t b = 0; b < batches.size(); ++b) {
      for (std::size_t i = batches[b].first; i < batches[b].second; ++i) apply_update(g, stream.updates[i]);
      if (report.static_extrapolated) continue;  // keep the graph consistent for replay errors
      start = Clock::now();
      const Weight lambda = static_min_cut(g);
      const double t = micros_since(start);
      report.static_batch_micros += t;
      ++report.static_batches_measured;
      report.rows.push_back({RunRow::Kind::Batch, false, batches[b].second, b + 1, 0, 0, 0, lambda, t});
      if (run_dynamic && dynamic_lambda[b] != lambda) {
        if (report.mismatches++ == 0) report.first_mismatch_batch = b + 1;
      }
      if (options.timeout_secs > 0 && b + 1 < batches.size() &&
          (report.static_init_micros + report.static_batch_micros) > options.timeout_secs * 1e6)
        report.static_extrapolated = true;
    }
  }
  return report;
}

}  // namespace dyncut
