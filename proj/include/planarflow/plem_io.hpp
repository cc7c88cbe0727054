#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "planarflow/instance.hpp"

namespace planarflow {

// PLEM v1
//   plem <n> <m>
//   rot <v> <dart ...>                       one line per vertex
//   edge <id> <u> <v> <cap_uv> <cap_vu>      one line per edge
//   src <v ...>
//   snk <v ...>
// Dart 2*id runs u -> v and carries cap_uv; dart 2*id+1 runs v -> u.
// '#' starts a comment. The writer emits ids in ascending order and each
// rotation starting from its smallest dart.
//
// PFLO v1
//   flow <dart_id> <value>    darts with nonzero flow, ascending
//   value <V>

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view token, std::size_t line_no) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": bad integer '" + std::string(token) + "'");
  }
  return value;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace detail

inline Instance read_plem(std::istream& in) {
  using detail::parse_fail;
  using detail::parse_int;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<VertexId, EdgeId>> header;
  std::vector<std::vector<DartId>> rotation;
  std::vector<char> have_rot, have_edge;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Capacity> capacity;
  std::optional<std::vector<VertexId>> sources, sinks;

  while (std::getline(in, line)) {
    ++line_no;
    auto tok = detail::split_tokens(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok[0] != "plem" || tok.size() != 3) parse_fail(line_no, "expected 'plem <n> <m>' header");
      auto n = parse_int<VertexId>(tok[1], line_no);
      auto m = parse_int<EdgeId>(tok[2], line_no);
      if (n < 1 || m < 0) parse_fail(line_no, "bad sizes");
      header.emplace(n, m);
      rotation.resize(n);
      have_rot.assign(n, 0);
      have_edge.assign(m, 0);
      edges.resize(m);
      capacity.resize(2 * static_cast<std::size_t>(m));
      continue;
    }
    auto [n, m] = *header;
    if (tok[0] == "rot") {
      if (tok.size() < 2) parse_fail(line_no, "rot needs a vertex");
      auto v = parse_int<VertexId>(tok[1], line_no);
      if (v < 0 || v >= n) parse_fail(line_no, "rot vertex out of range");
      if (have_rot[v]) parse_fail(line_no, "duplicate rot for vertex " + std::to_string(v));
      have_rot[v] = 1;
      for (std::size_t i = 2; i < tok.size(); ++i) rotation[v].push_back(parse_int<DartId>(tok[i], line_no));
    } else if (tok[0] == "edge") {
      if (tok.size() != 6) parse_fail(line_no, "edge needs 5 fields");
      auto id = parse_int<EdgeId>(tok[1], line_no);
      if (id < 0 || id >= m) parse_fail(line_no, "edge id out of range");
      if (have_edge[id]) parse_fail(line_no, "duplicate edge " + std::to_string(id));
      have_edge[id] = 1;
      edges[id] = {parse_int<VertexId>(tok[2], line_no), parse_int<VertexId>(tok[3], line_no)};
      capacity[forward_dart(id)] = parse_int<Capacity>(tok[4], line_no);
      capacity[backward_dart(id)] = parse_int<Capacity>(tok[5], line_no);
    } else if (tok[0] == "src" || tok[0] == "snk") {
      auto& target = tok[0] == "src" ? sources : sinks;
      if (target) parse_fail(line_no, "duplicate " + std::string(tok[0]) + " line");
      target.emplace();
      for (std::size_t i = 1; i < tok.size(); ++i) target->push_back(parse_int<VertexId>(tok[i], line_no));
    } else {
      parse_fail(line_no, "unknown keyword '" + std::string(tok[0]) + "'");
    }
  }
  if (!header) throw Error(ErrorCode::parse_error, "missing plem header");
  for (std::size_t v = 0; v < have_rot.size(); ++v) {
    if (!have_rot[v]) throw Error(ErrorCode::parse_error, "missing rot line for vertex " + std::to_string(v));
  }
  for (std::size_t e = 0; e < have_edge.size(); ++e) {
    if (!have_edge[e]) throw Error(ErrorCode::parse_error, "missing edge line " + std::to_string(e));
  }
  if (!sources || !sinks) throw Error(ErrorCode::parse_error, "missing src or snk line");
  auto graph = EmbeddedGraph::build(header->first, std::move(edges), std::move(rotation));
  return make_instance(std::move(graph), std::move(capacity), std::move(*sources), std::move(*sinks));
}

inline void write_plem(std::ostream& out, const Instance& inst) {
  const auto& g = inst.g();
  out << "plem " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "rot " << v;
    for (DartId d : g.rotation(v)) out << ' ' << d;
    out << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    out << "edge " << e << ' ' << u << ' ' << v << ' ' << inst.capacity[forward_dart(e)] << ' '
        << inst.capacity[backward_dart(e)] << '\n';
  }
  out << "src";
  for (VertexId s : inst.sources) out << ' ' << s;
  out << "\nsnk";
  for (VertexId t : inst.sinks) out << ' ' << t;
  out << '\n';
}

inline std::string to_plem(const Instance& inst) {
  std::ostringstream os;
  write_plem(os, inst);
  return os.str();
}

inline Instance parse_plem(const std::string& text) {
  std::istringstream is(text);
  return read_plem(is);
}

inline Instance load_plem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  return read_plem(in);
}

struct FlowDump {
  std::vector<Capacity> flow;  // per dart
  Capacity value = 0;
};

inline void write_pflo(std::ostream& out, std::span<const Capacity> flow, Capacity value) {
  for (std::size_t d = 0; d < flow.size(); ++d) {
    if (flow[d] != 0) out << "flow " << d << ' ' << flow[d] << '\n';
  }
  out << "value " << value << '\n';
}

inline FlowDump read_pflo(std::istream& in, DartId dart_count) {
  using detail::parse_fail;
  using detail::parse_int;
  FlowDump dump;
  dump.flow.assign(dart_count, 0);
  bool have_value = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = detail::split_tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "flow" && tok.size() == 3) {
      auto d = parse_int<DartId>(tok[1], line_no);
      if (d < 0 || d >= dart_count) parse_fail(line_no, "dart out of range");
      dump.flow[d] = parse_int<Capacity>(tok[2], line_no);
    } else if (tok[0] == "value" && tok.size() == 2) {
      dump.value = parse_int<Capacity>(tok[1], line_no);
      have_value = true;
    } else {
      parse_fail(line_no, "expected 'flow <dart> <value>' or 'value <V>'");
    }
  }
  if (!have_value) throw Error(ErrorCode::parse_error, "missing value line");
  return dump;
}

}  // namespace planarflow
