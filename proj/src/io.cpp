#include "dyncut/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dyncut {

namespace {

bool is_comment_or_blank(const std::string& line, const char* markers) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    for (const char* m = markers; *m; ++m)
      if (c == *m) return true;
    return false;
  }
  return true;
}

std::vector<std::string_view> split(const std::string& line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.emplace_back(line.data() + start, i - start);
  }
  return tokens;
}

template <typename T>
T number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  return value;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

DynGraph parse_metis(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool edge_weights = false;
  std::size_t vertex_weights = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line, "%")) continue;
    const auto tok = split(line);
    if (tok.size() < 2 || tok.size() > 4) throw ParseError(line_no, "METIS header must be 'n m [fmt [ncon]]'");
    n = number<std::size_t>(tok[0], line_no, "vertex count");
    number<std::size_t>(tok[1], line_no, "edge count");
    if (tok.size() >= 3) {
      const std::string fmt(tok[2]);
      if (fmt.empty() || fmt.size() > 3 || fmt.find_first_not_of("01") != std::string::npos)
        throw ParseError(line_no, "bad fmt '" + fmt + "'");
      edge_weights = fmt.back() == '1';
      if (fmt.size() >= 2 && fmt[fmt.size() - 2] == '1') vertex_weights = 1;
    }
    if (tok.size() == 4) vertex_weights = number<std::size_t>(tok[3], line_no, "ncon");
    have_header = true;
  }
  if (!have_header) throw ParseError(line_no, "missing METIS header");

  DynGraph g(n);
  std::unordered_map<VertexId, Weight> row;
  VertexId u = 0;
  while (u < n && std::getline(in, line)) {
    ++line_no;
    // blank lines are isolated vertices; only '%' lines are comments
    if (!line.empty() && is_comment_or_blank(line, "%") && line.find('%') != std::string::npos) continue;
    const auto tok = split(line);
    if (tok.size() < vertex_weights) throw ParseError(line_no, "missing vertex weights");
    const std::size_t rest = tok.size() - vertex_weights;
    const std::size_t stride = edge_weights ? 2 : 1;
    if (rest % stride != 0) throw ParseError(line_no, "neighbor without weight");
    row.clear();
    for (std::size_t i = vertex_weights; i < tok.size(); i += stride) {
      const auto id = number<std::size_t>(tok[i], line_no, "neighbor");
      if (id < 1 || id > n) throw ParseError(line_no, "neighbor " + std::to_string(id) + " out of range");
      const Weight w = edge_weights ? number<Weight>(tok[i + 1], line_no, "edge weight") : 1;
      if (w <= 0) throw ParseError(line_no, "edge weight must be positive");
      const auto v = static_cast<VertexId>(id - 1);
      if (v > u) row[v] += w;
    }
    for (auto [v, w] : row) g.insert_edge(u, v, w);
    ++u;
  }
  if (u < n) throw ParseError(line_no, "expected " + std::to_string(n) + " vertex lines, got " + std::to_string(u));
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_comment_or_blank(line, "%")) throw ParseError(line_no, "trailing data after the last vertex line");
  }
  return g;
}

DynGraph parse_edge_list(std::istream& in) {
  struct Row {
    VertexId u, v;
    Weight w;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line, "#%")) continue;
    const auto tok = split(line);
    if (tok.size() < 2 || tok.size() > 3) throw ParseError(line_no, "edge line must be 'u v [w]'");
    const auto u = number<VertexId>(tok[0], line_no, "vertex");
    const auto v = number<VertexId>(tok[1], line_no, "vertex");
    const Weight w = tok.size() == 3 ? number<Weight>(tok[2], line_no, "edge weight") : 1;
    if (w <= 0) throw ParseError(line_no, "edge weight must be positive");
    if (u == kNoVertex || v == kNoVertex) throw ParseError(line_no, "vertex id too large");
    n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
    if (u != v) rows.push_back({u, v, w});
  }
  DynGraph g(n);
  for (const Row& r : rows) g.insert_edge(r.u, r.v, r.w);
  return g;
}

}  // namespace

GraphFormat parse_format(const std::string& name) {
  if (name == "metis") return GraphFormat::Metis;
  if (name == "edgelist") return GraphFormat::EdgeList;
  throw std::invalid_argument("unknown graph format '" + name + "' (metis|edgelist)");
}

DynGraph parse_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::Metis ? parse_metis(in) : parse_edge_list(in);
}

DynGraph read_graph(const std::string& path, GraphFormat format) {
  auto in = open_in(path);
  return parse_graph(in, format);
}

void write_graph(std::ostream& out, const DynGraph& g, GraphFormat format) {
  if (format == GraphFormat::EdgeList) {
    out << "# n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
    g.for_each_edge([&](VertexId u, VertexId v, Weight w) { out << u << ' ' << v << ' ' << w << '\n'; });
    return;
  }
  out << g.num_vertices() << ' ' << g.num_edges() << " 1\n";
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    bool first = true;
    for (const auto& a : g.arcs(u)) {
      if (!first) out << ' ';
      out << a.head + 1 << ' ' << a.weight;
      first = false;
    }
    out << '\n';
  }
}

void write_graph_file(const std::string& path, const DynGraph& g, GraphFormat format) {
  auto out = open_out(path);
  write_graph(out, g, format);
}

std::vector<std::pair<std::size_t, std::size_t>> UpdateStream::batches() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= updates.size(); ++i)
    if (i == updates.size() || updates[i].time != updates[begin].time) {
      out.emplace_back(begin, i);
      begin = i;
    }
  return out;
}

UpdateStream parse_stream(std::istream& in) {
  UpdateStream stream;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line, "#%")) continue;
    const auto tok = split(line);
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "n") throw ParseError(line_no, "stream must start with 'n <count>'");
      stream.num_vertices = number<std::size_t>(tok[1], line_no, "vertex count");
      have_header = true;
      continue;
    }
    if (tok.size() < 4 || tok.size() > 5) throw ParseError(line_no, "update line must be 't +|- u v [w]'");
    Update up;
    up.line = line_no;
    up.time = number<std::int64_t>(tok[0], line_no, "timestamp");
    if (tok[1] == "+") up.op = Update::Op::Insert;
    else if (tok[1] == "-") up.op = Update::Op::Delete;
    else throw ParseError(line_no, "operation must be '+' or '-'");
    up.u = number<VertexId>(tok[2], line_no, "vertex");
    up.v = number<VertexId>(tok[3], line_no, "vertex");
    up.w = tok.size() == 5 ? number<Weight>(tok[4], line_no, "weight") : 1;
    if (up.u >= stream.num_vertices || up.v >= stream.num_vertices) throw ParseError(line_no, "vertex out of range");
    if (up.u == up.v) throw ParseError(line_no, "self-loop");
    if (up.w <= 0) throw ParseError(line_no, "weight must be positive");
    if (!stream.updates.empty() && up.time < stream.updates.back().time)
      throw ParseError(line_no, "timestamps must be nondecreasing");
    stream.updates.push_back(up);
  }
  if (!have_header) throw ParseError(line_no, "missing 'n <count>' header");
  return stream;
}

UpdateStream read_stream(const std::string& path) {
  auto in = open_in(path);
  return parse_stream(in);
}

void write_stream(std::ostream& out, const UpdateStream& stream) {
  out << "n " << stream.num_vertices << '\n';
  for (const Update& up : stream.updates) {
    out << up.time << ' ' << static_cast<char>(up.op) << ' ' << up.u << ' ' << up.v;
    if (up.op == Update::Op::Insert) out << ' ' << up.w;
    out << '\n';
  }
}

void write_stream_file(const std::string& path, const UpdateStream& stream) {
  auto out = open_out(path);
  write_stream(out, stream);
}

void apply_update(DynGraph& g, const Update& up) {
  try {
    if (up.op == Update::Op::Insert) g.insert_edge(up.u, up.v, up.w);
    else g.delete_edge(up.u, up.v);
  } catch (const GraphError& e) {
    throw ParseError(up.line, e.what());
  }
}

}  // namespace dyncut
