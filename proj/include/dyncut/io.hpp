#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dyncut/graph.hpp"

namespace dyncut {

enum class GraphFormat { Metis, EdgeList };

/// "metis" or "edgelist"; throws std::invalid_argument otherwise.
GraphFormat parse_format(const std::string& name);

/**
   METIS: header `n m [fmt [ncon]]`, then one 1-indexed adjacency line per
   vertex; `%` starts a comment line. Each edge is taken from the line of its
   lower endpoint, so a pair listed twice there is summed.

   Edge list: lines `u v [w]` with 0-indexed vertices, `#` or `%` comments,
   n = largest id + 1. Repeated pairs are summed.

   Self-loops are dropped in both formats. Errors raise ParseError.
 */
DynGraph parse_graph(std::istream& in, GraphFormat format);
DynGraph read_graph(const std::string& path, GraphFormat format);

void write_graph(std::ostream& out, const DynGraph& g, GraphFormat format);
void write_graph_file(const std::string& path, const DynGraph& g, GraphFormat format);

struct Update {
  enum class Op : char { Insert = '+', Delete = '-' };
  std::int64_t time = 0;
  Op op = Op::Insert;
  VertexId u = 0, v = 0;
  Weight w = 1;
  std::size_t line = 0;  // source line, 0 when generated
};

/// Timestamped updates; a batch is a maximal run of equal timestamps.
struct UpdateStream {
  std::size_t num_vertices = 0;
  std::vector<Update> updates;

  /// [begin, end) index ranges of the batches, in order.
  std::vector<std::pair<std::size_t, std::size_t>> batches() const;
};

/// Text form: header `n <count>`, then `t +|- u v [w]` with w defaulting to 1
/// and timestamps nondecreasing; `#` or `%` comments.
UpdateStream parse_stream(std::istream& in);
UpdateStream read_stream(const std::string& path);
void write_stream(std::ostream& out, const UpdateStream& stream);
void write_stream_file(const std::string& path, const UpdateStream& stream);

/// Applies one update to g. A failing update is reported as a ParseError
/// carrying the update's source line.
void apply_update(DynGraph& g, const Update& up);

}  // namespace dyncut
