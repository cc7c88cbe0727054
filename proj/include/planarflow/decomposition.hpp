#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "planarflow/instance.hpp"
#include "planarflow/separator.hpp"

namespace planarflow {

struct DivisionParams {
  int p = 4;                    // target number of subpieces per division
  double c_p = 0.5;             // subpiece size bound, as a fraction of the divided piece
  double boundary_coeff = 4.0;  // subpiece boundary bound is boundary_coeff * sqrt(c_p * n)
  int hole_bound = 5;           // t - 1
  VertexId r = 32;              // pieces of at most r vertices are solved directly

  int t() const { return hole_bound + 1; }

  void validate() const {
    if (p < 2 || !(c_p > 0.0 && c_p < 1.0) || hole_bound < 1 || r < 2 || boundary_coeff <= 0.0) {
      throw Error(ErrorCode::invalid_params, "need p >= 2, 0 < c_p < 1, t >= 2, r >= 2, b > 0");
    }
    // A subpiece plus its super sinks must be smaller than the piece it came from.
    if (static_cast<double>(r) < hole_bound / (1.0 - c_p)) {
      throw Error(ErrorCode::invalid_params, "r must be at least (t - 1) / (1 - c_p)");
    }
  }

  /// Parses "p=4,c_p=0.5,r=32,t=6" (any subset; "b" sets boundary_coeff).
  static DivisionParams parse(const std::string& text) {
    DivisionParams out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::invalid_params, "expected key=value in '" + item + "'");
      const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      try {
        if (key == "p") out.p = std::stoi(value);
        else if (key == "c_p") out.c_p = std::stod(value);
        else if (key == "r") out.r = std::stoi(value);
        else if (key == "t") out.hole_bound = std::stoi(value) - 1;
        else if (key == "b") out.boundary_coeff = std::stod(value);
        else throw Error(ErrorCode::invalid_params, "unknown parameter '" + key + "'");
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::invalid_params, "bad value for '" + key + "'");
      }
    }
    out.validate();
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "p=" << p << ",c_p=" << c_p << ",r=" << r << ",t=" << t() << ",b=" << boundary_coeff;
    return os.str();
  }
};

/// A face of a piece whose boundary carries piece-boundary vertices and that
/// is not a face of the graph the piece was cut from. A degenerate hole is a
/// single boundary vertex (an inherited sink) lying on no such face.
struct Hole {
  FaceId face = -1;
  VertexId vertex = kNoVertex;

  bool degenerate() const { return vertex != kNoVertex; }
};

/// A connected, edge-induced subgraph of some parent graph with the inherited
/// embedding. All ids stored here are local to `subgraph` unless the member
/// name says otherwise.
struct Piece {
  std::shared_ptr<const EmbeddedGraph> subgraph;
  std::vector<VertexId> vertex_map;  // local vertex -> parent vertex
  std::vector<EdgeId> edge_map;      // local edge -> parent edge
  std::vector<VertexId> boundary;    // ascending
  std::vector<Hole> holes;
  std::vector<VertexId> sources;     // ascending

  VertexId size() const { return subgraph->vertex_count(); }
  DartId parent_dart(DartId local) const { return 2 * edge_map[edge_of(local)] + (local & 1); }
  bool is_boundary(VertexId v) const { return std::binary_search(boundary.begin(), boundary.end(), v); }
  bool is_source(VertexId v) const { return std::binary_search(sources.begin(), sources.end(), v); }
};

/// One level of splitting: `pieces` cover the parent piece's edges exactly
/// once. Piece maps point into the parent piece's subgraph.
struct Division {
  std::vector<Piece> pieces;
  std::vector<std::vector<VertexId>> separators;  // parent-piece vertex ids
  VertexId parent_size = 0;
  VertexId size_limit = 0;
  double boundary_limit = 0.0;
  int hole_limit = 0;
};

/// The whole graph as a piece: every sink is a boundary vertex and a
/// degenerate hole.
inline Piece whole_graph_piece(const Instance& inst) {
  const auto& g = inst.g();
  Piece piece;
  piece.subgraph = inst.graph;
  piece.vertex_map.resize(g.vertex_count());
  std::iota(piece.vertex_map.begin(), piece.vertex_map.end(), 0);
  piece.edge_map.resize(g.edge_count());
  std::iota(piece.edge_map.begin(), piece.edge_map.end(), 0);
  piece.boundary = inst.sinks;
  for (VertexId t : inst.sinks) piece.holes.push_back({g.face_of(g.rotation(t).front()), t});
  piece.sources = inst.sources;
  return piece;
}

/// Builds the subpiece of `parent` induced by `edges` (parent-local edge
/// ids, which must form a connected subgraph) and computes its boundary and
/// holes relative to `parent`.
inline Piece make_subpiece(const Piece& parent, std::vector<EdgeId> edges) {
  const EmbeddedGraph& pg = *parent.subgraph;
  std::sort(edges.begin(), edges.end());
  std::vector<char> in_piece(pg.edge_count(), 0);
  for (EdgeId e : edges) in_piece[e] = 1;
  std::vector<VertexId> local_of(pg.vertex_count(), kNoVertex);
  std::vector<VertexId> vertices;
  for (EdgeId e : edges) {
    auto [u, v] = pg.endpoints(e);
    for (VertexId x : {u, v}) {
      if (local_of[x] == kNoVertex) {
        local_of[x] = 0;
        vertices.push_back(x);
      }
    }
  }
  std::sort(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < vertices.size(); ++i) local_of[vertices[i]] = static_cast<VertexId>(i);
  std::vector<EdgeId> local_edge(pg.edge_count(), -1);
  std::vector<std::pair<VertexId, VertexId>> local_edges;
  for (EdgeId e : edges) {
    local_edge[e] = static_cast<EdgeId>(local_edges.size());
    auto [u, v] = pg.endpoints(e);
    local_edges.emplace_back(local_of[u], local_of[v]);
  }
  auto to_local = [&](DartId d) { return 2 * local_edge[edge_of(d)] + (d & 1); };
  std::vector<std::vector<DartId>> rotation(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (DartId d : pg.rotation(vertices[i])) {
      if (in_piece[edge_of(d)]) rotation[i].push_back(to_local(d));
    }
  }

  Piece piece;
  piece.subgraph = std::make_shared<const EmbeddedGraph>(
      EmbeddedGraph::build(static_cast<VertexId>(vertices.size()), std::move(local_edges), std::move(rotation)));
  const EmbeddedGraph& g = *piece.subgraph;
  piece.edge_map = edges;
  piece.vertex_map = vertices;
  auto parent_dart = [&](DartId local) { return 2 * edges[edge_of(local)] + (local & 1); };

  std::vector<char> boundary(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexId pv = vertices[v];
    if (parent.is_boundary(pv) || g.degree(v) != pg.degree(pv)) boundary[v] = 1;
    if (boundary[v]) piece.boundary.push_back(v);
    if (parent.is_source(pv)) piece.sources.push_back(v);
  }

  std::vector<char> parent_hole_face(pg.face_count(), 0);
  for (const Hole& h : parent.holes) {
    if (!h.degenerate()) parent_hole_face[h.face] = 1;
  }
  std::vector<char> on_hole(g.vertex_count(), 0);
  for (FaceId f = 0; f < g.face_count(); ++f) {
    bool hole = false;
    for (DartId d : g.face(f)) {
      const DartId pd = parent_dart(d);
      if (pg.next_in_face(pd) != parent_dart(g.next_in_face(d)) || parent_hole_face[pg.face_of(pd)]) {
        hole = true;
        break;
      }
    }
    if (!hole) continue;
    bool touches_boundary = false;
    for (DartId d : g.face(f)) touches_boundary |= boundary[g.tail(d)] != 0;
    if (!touches_boundary) continue;
    piece.holes.push_back({f, kNoVertex});
    for (DartId d : g.face(f)) on_hole[g.tail(d)] = 1;
  }
  for (VertexId v : piece.boundary) {
    if (!on_hole[v]) piece.holes.push_back({g.face_of(g.rotation(v).front()), v});
  }
  return piece;
}

struct PieceBounds {
  bool size_ok = true;
  bool boundary_ok = true;
  bool holes_ok = true;

  bool ok() const { return size_ok && boundary_ok && holes_ok; }
};

inline PieceBounds check_bounds(const Piece& piece, const Division& limits) {
  return {piece.size() <= limits.size_limit,
          static_cast<double>(piece.boundary.size()) <= limits.boundary_limit,
          static_cast<int>(piece.holes.size()) <= limits.hole_limit};
}

namespace detail {

// Connected components of an edge subset of g, as edge lists.
inline std::vector<std::vector<EdgeId>> edge_components(const EmbeddedGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<VertexId> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (EdgeId e : edges) {
    auto [u, v] = g.endpoints(e);
    parent[find(u)] = find(v);
  }
  std::vector<std::int32_t> slot(g.vertex_count(), -1);
  std::vector<std::vector<EdgeId>> out;
  for (EdgeId e : edges) {
    const VertexId root = find(g.endpoints(e).first);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int32_t>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(e);
  }
  return out;
}

// Edges incident to the first BFS vertices until about half the vertices
// are covered, and the rest. The first half is connected.
inline std::pair<std::vector<EdgeId>, std::vector<EdgeId>> bfs_edge_halves(const EmbeddedGraph& g) {
  std::vector<char> taken(g.edge_count(), 0), seen(g.vertex_count(), 0), covered(g.vertex_count(), 0);
  std::vector<VertexId> queue{0};
  seen[0] = 1;
  VertexId covered_count = 0;
  std::pair<std::vector<EdgeId>, std::vector<EdgeId>> out;
  for (std::size_t i = 0; i < queue.size() && 2 * covered_count < g.vertex_count(); ++i) {
    for (DartId d : g.rotation(queue[i])) {
      const VertexId w = g.head(d);
      if (!taken[edge_of(d)]) {
        taken[edge_of(d)] = 1;
        out.first.push_back(edge_of(d));
        for (VertexId x : {queue[i], w}) {
          if (!covered[x]) covered[x] = 1, ++covered_count;
        }
      }
      if (!seen[w]) seen[w] = 1, queue.push_back(w);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!taken[e]) out.second.push_back(e);
  }
  return out;
}

}  // namespace detail

/// Splits `piece` into connected subpieces of at most c_p * n vertices, at
/// most boundary_coeff * sqrt(c_p * n) boundary vertices and at most
/// hole_bound holes, by repeated cycle separators. A piece that violates a
/// bound is cut with vertex, boundary or hole weights, rotating through the
/// three criteria. Throws Error(cannot_satisfy_bounds) when some piece can
/// no longer be cut.
inline Division divide(const Piece& piece, const DivisionParams& params) {
  params.validate();
  const VertexId n = piece.size();
  if (n <= params.r) throw Error(ErrorCode::invalid_params, "piece is already at most r");
  Division division;
  division.parent_size = n;
  division.size_limit = static_cast<VertexId>(std::floor(params.c_p * n));
  division.boundary_limit = params.boundary_coeff * std::sqrt(params.c_p * n);
  division.hole_limit = params.hole_bound;

  struct Work {
    std::vector<EdgeId> edges;  // parent-piece edge ids
    int next_criterion;
  };
  std::vector<Work> work;
  {
    std::vector<EdgeId> all(piece.subgraph->edge_count());
    std::iota(all.begin(), all.end(), 0);
    work.push_back({std::move(all), 0});
  }
  while (!work.empty()) {
    Work item = std::move(work.back());
    work.pop_back();
    Piece current = make_subpiece(piece, item.edges);
    const PieceBounds bounds = check_bounds(current, division);
    if (bounds.ok()) {
      division.pieces.push_back(std::move(current));
      continue;
    }
    const EmbeddedGraph& g = *current.subgraph;
    // Violated criteria first, in rotation order; the others are fallbacks
    // for when those make no progress.
    const bool ok[3] = {bounds.size_ok, bounds.boundary_ok, bounds.holes_ok};
    std::vector<int> order;
    for (int pass = 0; pass < 2; ++pass) {
      for (int a = 0; a < 3; ++a) {
        const int c = (item.next_criterion + a) % 3;
        if (ok[c] == (pass == 1)) order.push_back(c);
      }
    }
    bool split = false;
    for (int criterion : order) {
      if (split) break;
      std::vector<std::int64_t> weights(g.vertex_count(), 0);
      if (criterion == 0) {
        std::fill(weights.begin(), weights.end(), 1);
      } else if (criterion == 1) {
        for (VertexId v : current.boundary) weights[v] = 1;
      } else {
        for (const Hole& h : current.holes) ++weights[h.degenerate() ? h.vertex : g.tail(g.face(h.face).front())];
      }
      const CycleSeparator sep = cycle_separator(g, weights);
      std::vector<EdgeId> inside, outside;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        (sep.edge_side[e] == 2 ? outside : inside).push_back(current.edge_map[e]);
      }
      if (inside.empty() || outside.empty()) continue;
      split = true;
      std::vector<VertexId> separator;
      for (VertexId v : sep.vertices) separator.push_back(current.vertex_map[v]);
      division.separators.push_back(std::move(separator));
      for (auto* side : {&inside, &outside}) {
        // Components are computed in the parent piece's id space.
        for (auto& comp : detail::edge_components(*piece.subgraph, *side)) {
          work.push_back({std::move(comp), (criterion + 1) % 3});
        }
      }
    }
    if (!split) {
      // Tiny pieces can be covered by every fundamental cycle. Fall back to
      // a BFS-grown connected half of the edges and whatever is left over.
      auto halves = detail::bfs_edge_halves(g);
      if (!halves.first.empty() && !halves.second.empty()) {
        split = true;
        for (auto* side : {&halves.first, &halves.second}) {
          for (EdgeId& e : *side) e = current.edge_map[e];
          for (auto& comp : detail::edge_components(*piece.subgraph, *side)) {
            work.push_back({std::move(comp), item.next_criterion});
          }
        }
      }
    }
    if (!split) {
      throw Error(ErrorCode::cannot_satisfy_bounds,
                  "cannot cut a piece of " + std::to_string(current.size()) + " vertices, " +
                      std::to_string(current.boundary.size()) + " boundary vertices, " +
                      std::to_string(current.holes.size()) + " holes");
    }
  }
  std::sort(division.pieces.begin(), division.pieces.end(),
            [](const Piece& a, const Piece& b) { return a.edge_map.front() < b.edge_map.front(); });
  return division;
}

/// P'': the piece plus one super sink per hole, joined from every boundary
/// vertex on that hole and drawn inside the hole's face. Local vertex and
/// edge ids of the piece are kept; super sinks and their edges follow.
struct AugmentedPiece {
  EmbeddedGraph graph;
  std::vector<VertexId> super_sinks;
  std::vector<EdgeId> super_edges;  // oriented boundary vertex -> super sink
};

inline AugmentedPiece attach_super_sinks(const Piece& piece) {
  const EmbeddedGraph& g = *piece.subgraph;
  auto edges = g.edge_list();
  std::vector<std::vector<DartId>> inserted_after(g.dart_count());
  std::vector<std::vector<DartId>> sink_rotations;
  AugmentedPiece out;
  VertexId next_vertex = g.vertex_count();
  std::vector<char> boundary(g.vertex_count(), 0);
  for (VertexId v : piece.boundary) boundary[v] = 1;

  for (const Hole& hole : piece.holes) {
    const VertexId sink = next_vertex++;
    out.super_sinks.push_back(sink);
    std::vector<DartId> sink_darts;
    auto attach = [&](VertexId b, DartId after) {
      const auto e = static_cast<EdgeId>(edges.size());
      edges.emplace_back(b, sink);
      out.super_edges.push_back(e);
      inserted_after[after].push_back(forward_dart(e));
      sink_darts.push_back(backward_dart(e));
    };
    if (hole.degenerate()) {
      attach(hole.vertex, g.rotation(hole.vertex).front());
    } else {
      std::vector<char> done(g.vertex_count(), 0);
      for (DartId d : g.face(hole.face)) {
        const VertexId b = g.head(d);
        if (!boundary[b] || done[b]) continue;
        done[b] = 1;
        attach(b, twin(d));
      }
      std::reverse(sink_darts.begin(), sink_darts.end());
    }
    sink_rotations.push_back(std::move(sink_darts));
  }
  std::vector<std::vector<DartId>> rotation(next_vertex);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (DartId d : g.rotation(v)) {
      rotation[v].push_back(d);
      for (DartId x : inserted_after[d]) rotation[v].push_back(x);
    }
  }
  for (std::size_t i = 0; i < sink_rotations.size(); ++i) rotation[g.vertex_count() + i] = std::move(sink_rotations[i]);
  out.graph = EmbeddedGraph::build(next_vertex, std::move(edges), std::move(rotation));
  return out;
}

/// Nested text dump of a division, for debugging.
inline std::string describe(const Division& division) {
  std::ostringstream os;
  os << "division n=" << division.parent_size << " pieces=" << division.pieces.size()
     << " separators=" << division.separators.size() << " limits(size=" << division.size_limit
     << ", boundary=" << division.boundary_limit << ", holes=" << division.hole_limit << ")\n";
  for (std::size_t i = 0; i < division.pieces.size(); ++i) {
    const Piece& p = division.pieces[i];
    os << "  piece " << i << " vertices=" << p.size() << " edges=" << p.subgraph->edge_count()
       << " boundary=" << p.boundary.size() << " holes=" << p.holes.size() << " sources=" << p.sources.size()
       << '\n';
  }
  return os.str();
}

}  // namespace planarflow
