#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "planarflow/embedded_graph.hpp"

namespace planarflow {

/// A triangulated working copy. Vertices [0, real_vertices) and edges
/// [0, real_edges) are those of the source graph with the same ids and
/// orientation; every face that was not a triangle received one extra
/// "star" vertex joined to each of its corners.
struct Triangulation {
  EmbeddedGraph graph;
  VertexId real_vertices = 0;
  EdgeId real_edges = 0;

  bool is_real(VertexId v) const { return v < real_vertices; }
};

inline Triangulation triangulate(const EmbeddedGraph& g) {
  const VertexId n = g.vertex_count();
  auto edges = g.edge_list();
  std::vector<DartId> inserted_after(g.dart_count(), kNoDart);
  std::vector<std::vector<DartId>> star_rotations;
  VertexId next_vertex = n;
  for (FaceId f = 0; f < g.face_count(); ++f) {
    auto face = g.face(f);
    if (face.size() == 3) continue;
    const VertexId star = next_vertex++;
    std::vector<DartId> star_darts;
    for (DartId d : face) {
      // Corner at head(d), between twin(d) and next_in_face(d).
      const auto e = static_cast<EdgeId>(edges.size());
      edges.emplace_back(g.head(d), star);
      inserted_after[twin(d)] = forward_dart(e);
      star_darts.push_back(backward_dart(e));
    }
    std::reverse(star_darts.begin(), star_darts.end());
    star_rotations.push_back(std::move(star_darts));
  }
  std::vector<std::vector<DartId>> rotation(next_vertex);
  for (VertexId v = 0; v < n; ++v) {
    for (DartId d : g.rotation(v)) {
      rotation[v].push_back(d);
      if (inserted_after[d] != kNoDart) rotation[v].push_back(inserted_after[d]);
    }
  }
  for (std::size_t i = 0; i < star_rotations.size(); ++i) rotation[n + i] = std::move(star_rotations[i]);
  return Triangulation{EmbeddedGraph::build(next_vertex, std::move(edges), std::move(rotation)), n, g.edge_count()};
}

/// A simple cycle of the triangulated working copy whose removal leaves at
/// most two thirds of the total weight strictly inside and strictly outside.
struct CycleSeparator {
  std::vector<VertexId> cycle;     // working-copy ids in cyclic order; ids >= n are star vertices
  std::vector<VertexId> vertices;  // the cycle's vertices of the input graph, in cycle order
  std::vector<char> side;          // per input vertex: 0 on the cycle, 1 inside, 2 outside
  std::vector<char> edge_side;     // per input edge: 0 on the cycle, 1 inside, 2 outside
  std::int64_t inside_weight = 0;
  std::int64_t outside_weight = 0;
  std::int64_t cycle_weight = 0;
  std::int64_t total_weight = 0;
};

namespace detail {

inline std::vector<std::int32_t> bfs_depths(const EmbeddedGraph& g, VertexId root, std::vector<DartId>* parent = nullptr) {
  std::vector<std::int32_t> depth(g.vertex_count(), -1);
  if (parent) parent->assign(g.vertex_count(), kNoDart);
  std::vector<VertexId> queue{root};
  depth[root] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const VertexId v = queue[i];
    for (DartId d : g.rotation(v)) {
      const VertexId w = g.head(d);
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        if (parent) (*parent)[w] = d;
        queue.push_back(w);
      }
    }
  }
  return depth;
}

// Midpoint of a double-sweep BFS path: a cheap approximate centre.
inline VertexId approximate_center(const EmbeddedGraph& g) {
  auto farthest = [&](const std::vector<std::int32_t>& depth) {
    return static_cast<VertexId>(std::max_element(depth.begin(), depth.end()) - depth.begin());
  };
  const VertexId a = farthest(bfs_depths(g, 0));
  std::vector<DartId> parent;
  auto depth = bfs_depths(g, a, &parent);
  VertexId b = farthest(depth);
  for (std::int32_t steps = depth[b] / 2; steps > 0; --steps) b = g.tail(parent[b]);
  return b;
}

}  // namespace detail

/// Fundamental-cycle separator on a triangulation of `g`: BFS tree from an
/// approximate centre, the dual spanning tree of the non-tree edges gives
/// each fundamental cycle's interior as a dual subtree. Among balanced
/// candidates (tried in order of estimated balance) the one with the fewest
/// vertices of `g` wins. Other roots are tried if the first yields nothing.
inline CycleSeparator cycle_separator(const EmbeddedGraph& g, std::span<const std::int64_t> weights) {
  if (static_cast<VertexId>(weights.size()) != g.vertex_count()) {
    throw Error(ErrorCode::invalid_params, "one weight per vertex required");
  }
  const Triangulation tri = triangulate(g);
  const EmbeddedGraph& w = tri.graph;
  const VertexId n = g.vertex_count();
  const VertexId big_n = w.vertex_count();
  const FaceId faces = w.face_count();
  const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  auto weight = [&](VertexId v) { return v < n ? weights[v] : 0; };

  std::vector<VertexId> roots{detail::approximate_center(w), 0};
  for (VertexId r = 1; r < big_n && roots.size() < 8; r += std::max<VertexId>(1, big_n / 6)) roots.push_back(r);

  for (VertexId root : roots) {
    std::vector<DartId> parent;
    const auto depth = detail::bfs_depths(w, root, &parent);
    std::vector<char> tree_edge(w.edge_count(), 0);
    for (VertexId v = 0; v < big_n; ++v) {
      if (parent[v] != kNoDart) tree_edge[edge_of(parent[v])] = 1;
    }

    // Dual spanning tree over the non-tree edges, rooted at face 0.
    std::vector<DartId> face_parent(faces, kNoDart);  // dart of the child face crossing to the parent
    std::vector<FaceId> order{0};
    std::vector<char> reached(faces, 0);
    reached[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (DartId d : w.face(order[i])) {
        if (tree_edge[edge_of(d)]) continue;
        const FaceId other = w.face_of(twin(d));
        if (!reached[other]) {
          reached[other] = 1;
          face_parent[other] = twin(d);
          order.push_back(other);
        }
      }
    }
    // Preorder intervals via an explicit DFS over the dual tree.
    std::vector<std::vector<FaceId>> children(faces);
    for (FaceId f : order) {
      if (face_parent[f] != kNoDart) children[w.face_of(twin(face_parent[f]))].push_back(f);
    }
    std::vector<std::int32_t> tin(faces), tout(faces);
    {
      std::int32_t clock = 0;
      std::vector<std::pair<FaceId, std::size_t>> stack{{0, 0}};
      tin[0] = clock++;
      while (!stack.empty()) {
        auto& [f, i] = stack.back();
        if (i < children[f].size()) {
          const FaceId c = children[f][i++];
          tin[c] = clock++;
          stack.emplace_back(c, 0);
        } else {
          tout[f] = clock;
          stack.pop_back();
        }
      }
    }
    std::vector<FaceId> rep(big_n);
    for (VertexId v = 0; v < big_n; ++v) rep[v] = w.face_of(w.rotation(v).front());
    std::vector<std::int64_t> subtree(faces, 0);
    for (VertexId v = 0; v < n; ++v) subtree[rep[v]] += weights[v];
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (face_parent[*it] != kNoDart) subtree[w.face_of(twin(face_parent[*it]))] += subtree[*it];
    }

    struct Candidate {
      std::int64_t score;
      FaceId child;
    };
    std::vector<Candidate> candidates;
    for (FaceId f = 1; f < faces; ++f) {
      if (face_parent[f] == kNoDart) continue;
      candidates.push_back({std::max(subtree[f], total - subtree[f]), f});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score < b.score; });

    std::vector<char> on_cycle(big_n, 0);
    auto fundamental_cycle = [&](DartId d) {
      // Tree path u -> lca -> v, closed by the non-tree edge (v, u).
      VertexId u = w.tail(d), v = w.head(d);
      std::vector<VertexId> left, right;
      while (depth[u] > depth[v]) { left.push_back(u); u = w.tail(parent[u]); }
      while (depth[v] > depth[u]) { right.push_back(v); v = w.tail(parent[v]); }
      while (u != v) {
        left.push_back(u);
        right.push_back(v);
        u = w.tail(parent[u]);
        v = w.tail(parent[v]);
      }
      left.push_back(u);
      left.insert(left.end(), right.rbegin(), right.rend());
      return left;
    };

    CycleSeparator best;
    FaceId best_child = -1;
    bool found = false;
    int balanced_seen = 0;
    for (const auto& cand : candidates) {
      const DartId d = face_parent[cand.child];
      auto cycle = fundamental_cycle(d);
      std::int64_t cycle_weight = 0, cycle_inside_rep = 0;
      for (VertexId v : cycle) {
        cycle_weight += weight(v);
        if (tin[cand.child] <= tin[rep[v]] && tin[rep[v]] < tout[cand.child]) cycle_inside_rep += weight(v);
      }
      const std::int64_t inside = subtree[cand.child] - cycle_inside_rep;
      const std::int64_t outside = total - inside - cycle_weight;
      if (3 * inside > 2 * total || 3 * outside > 2 * total) continue;
      ++balanced_seen;
      std::size_t real = 0;
      for (VertexId v : cycle) real += v < n;
      if (!found || real < best.vertices.size()) {
        found = true;
        best.cycle = std::move(cycle);
        best.vertices.clear();
        for (VertexId v : best.cycle) {
          if (v < n) best.vertices.push_back(v);
        }
        best.inside_weight = inside;
        best.outside_weight = outside;
        best.cycle_weight = cycle_weight;
        best.total_weight = total;
        best_child = cand.child;
      }
      if (balanced_seen >= 16) break;
    }
    if (!found) continue;

    auto inside_face = [&](FaceId f) { return tin[best_child] <= tin[f] && tin[f] < tout[best_child]; };
    for (VertexId v : best.cycle) on_cycle[v] = 1;
    best.side.assign(n, 0);
    for (VertexId v = 0; v < n; ++v) best.side[v] = on_cycle[v] ? 0 : inside_face(rep[v]) ? 1 : 2;
    best.edge_side.assign(g.edge_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const bool a = inside_face(w.face_of(forward_dart(e)));
      const bool b = inside_face(w.face_of(backward_dart(e)));
      best.edge_side[e] = a && b ? 1 : (!a && !b) ? 2 : 0;
    }
    return best;
  }
  throw Error(ErrorCode::not_connected, "no balanced fundamental cycle found");
}

}  // namespace planarflow
