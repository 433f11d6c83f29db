#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dyncut/dynamic.hpp"
#include "dyncut/io.hpp"

namespace dyncut {

enum class RunMode { Dynamic, Static, Both };

/// "dynamic", "static" or "both"; throws std::invalid_argument otherwise.
RunMode parse_mode(const std::string& name);

struct RunOptions {
  RunMode mode = RunMode::Both;
  DynamicOptions dynamic;
  double timeout_secs = 0;  // static side only; 0 disables
};

struct RunRow {
  enum class Kind { Init, Insert, Delete, Batch };
  Kind kind = Kind::Init;
  bool dynamic = true;  // false for rows of the static baseline
  std::size_t update_idx = 0;  // 1-based; last update of the batch for static rows
  std::size_t batch_idx = 0;   // 1-based; 0 for init rows
  VertexId u = 0, v = 0;
  Weight w = 0;
  Weight lambda = 0;
  double micros = 0;
};

struct RunReport {
  RunMode mode = RunMode::Both;
  std::size_t num_updates = 0;
  std::size_t num_batches = 0;
  std::vector<RunRow> rows;

  double dynamic_init_micros = 0;
  double dynamic_update_micros = 0;  // sum over updates
  double static_init_micros = 0;
  double static_batch_micros = 0;    // sum over measured batches
  std::size_t static_batches_measured = 0;
  bool static_extrapolated = false;  // timeout hit; static total is estimated

  std::size_t mismatches = 0;  // batches where both sides disagree on lambda
  std::size_t first_mismatch_batch = 0;
  DynamicStats stats;

  /// Static time for all batches, extrapolated from the measured ones.
  double static_total_micros() const;
  /// Dynamic time for all updates, the initial cactus included.
  double dynamic_total_micros() const;
  /// static_total / dynamic_total; 0 unless both sides ran.
  double speedup() const;
  double dynamic_geomean_micros() const;
  double static_geomean_micros() const;

  /// `update_idx,batch_idx,op,u,v,w,lambda,micros` rows, then `# key=value`.
  void write_csv(std::ostream& out) const;
};

/**
   Replays `stream` from `initial`. The dynamic side drives one DynamicMinCut
   update by update; the static side recomputes static_min_cut once per
   batch. In both-mode lambda is compared at every batch boundary. After the
   static side exceeds the timeout it stops measuring and the report marks
   its total as extrapolated; lambda comparison covers measured batches only.
   A delete of an absent edge raises ParseError naming the stream line.
 */
RunReport run_compare(const DynGraph& initial, const UpdateStream& stream, const RunOptions& options);

}  // namespace dyncut
