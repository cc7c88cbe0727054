#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "planarflow/instance.hpp"

namespace planarflow {

enum class GraphKind { grid, triangulation };

/// Portable bounded draws on top of mt19937_64 (the standard distributions
/// are not reproducible across standard libraries).
class SplitRandom {
 public:
  explicit SplitRandom(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// rows x cols grid; neighbours in counter-clockwise order (right, up, left, down).
inline EmbeddedGraph grid_graph(VertexId rows, VertexId cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2) throw Error(ErrorCode::invalid_params, "grid needs two vertices");
  std::vector<std::vector<VertexId>> nbrs(static_cast<std::size_t>(rows) * cols);
  auto id = [cols](VertexId r, VertexId c) { return r * cols + c; };
  for (VertexId r = 0; r < rows; ++r) {
    for (VertexId c = 0; c < cols; ++c) {
      auto& list = nbrs[id(r, c)];
      if (c + 1 < cols) list.push_back(id(r, c + 1));
      if (r + 1 < rows) list.push_back(id(r + 1, c));
      if (c > 0) list.push_back(id(r, c - 1));
      if (r > 0) list.push_back(id(r - 1, c));
    }
  }
  return EmbeddedGraph::from_neighbor_rotations(nbrs);
}

/// Builds the embedding of a closed surface triangulated by consistently
/// oriented triangles. Edge ids are assigned in (min, max) lexicographic order.
inline EmbeddedGraph graph_from_oriented_triangles(VertexId n, const std::vector<std::array<VertexId, 3>>& tris) {
  // succ[y][x] = z for every triangle (x, y, z): around y, z follows x.
  std::vector<std::unordered_map<VertexId, VertexId>> succ(n);
  for (const auto& t : tris) {
    for (int i = 0; i < 3; ++i) succ[t[(i + 1) % 3]][t[i]] = t[(i + 2) % 3];
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId v = 0; v < n; ++v) {
    for (const auto& [u, w] : succ[v]) {
      if (v < u) pairs.emplace_back(v, u);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::unordered_map<VertexId, DartId>> dart_to(n);
  for (EdgeId e = 0; e < static_cast<EdgeId>(pairs.size()); ++e) {
    dart_to[pairs[e].first][pairs[e].second] = forward_dart(e);
    dart_to[pairs[e].second][pairs[e].first] = backward_dart(e);
  }
  std::vector<std::vector<DartId>> rotation(n);
  for (VertexId v = 0; v < n; ++v) {
    if (succ[v].empty()) continue;
    VertexId first = succ[v].begin()->first;
    for (const auto& [u, w] : succ[v]) first = std::min(first, u);
    VertexId cur = first;
    do {
      rotation[v].push_back(dart_to[v].at(cur));
      cur = succ[v].at(cur);
    } while (cur != first && rotation[v].size() <= succ[v].size());
  }
  return EmbeddedGraph::build(n, std::move(pairs), std::move(rotation));
}

/// Random simple triangulation of the sphere on n >= 3 vertices: repeated
/// vertex insertion into a random face, followed by random edge flips.
inline EmbeddedGraph random_triangulation(VertexId n, SplitRandom& rng) {
  if (n < 3) throw Error(ErrorCode::invalid_params, "triangulation needs three vertices");
  std::vector<std::array<VertexId, 3>> tris{{0, 1, 2}, {0, 2, 1}};
  for (VertexId v = 3; v < n; ++v) {
    const auto f = static_cast<std::size_t>(rng.below(tris.size()));
    const auto [a, b, c] = tris[f];
    tris[f] = {a, b, v};
    tris.push_back({b, c, v});
    tris.push_back({c, a, v});
  }
  if (n >= 5) {
    // Directed edge (x, y) -> index of the triangle containing x -> y.
    auto key = [](VertexId x, VertexId y) { return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y); };
    std::unordered_map<std::uint64_t, std::size_t> owner;
    std::vector<int> degree(n, 0);
    for (std::size_t i = 0; i < tris.size(); ++i) {
      for (int k = 0; k < 3; ++k) {
        owner[key(tris[i][k], tris[i][(k + 1) % 3])] = i;
        ++degree[tris[i][k]];
      }
    }
    const auto flips = static_cast<std::size_t>(n);
    for (std::size_t iter = 0; iter < flips; ++iter) {
      const auto i = static_cast<std::size_t>(rng.below(tris.size()));
      const int k = static_cast<int>(rng.below(3));
      const VertexId a = tris[i][k], b = tris[i][(k + 1) % 3], c = tris[i][(k + 2) % 3];
      const std::size_t j = owner.at(key(b, a));
      VertexId d = kNoVertex;
      for (int q = 0; q < 3; ++q) {
        if (tris[j][q] != a && tris[j][q] != b) d = tris[j][q];
      }
      if (d == c || owner.count(key(c, d)) || degree[a] <= 3 || degree[b] <= 3) continue;
      for (auto [x, y] : {std::pair{a, b}, {b, c}, {c, a}}) owner.erase(key(x, y));
      for (auto [x, y] : {std::pair{b, a}, {a, d}, {d, b}}) owner.erase(key(x, y));
      tris[i] = {a, d, c};
      tris[j] = {d, b, c};
      for (std::size_t t : {i, j}) {
        for (int q = 0; q < 3; ++q) owner[key(tris[t][q], tris[t][(q + 1) % 3])] = t;
      }
      --degree[a];
      --degree[b];
      ++degree[c];
      ++degree[d];
    }
  }
  return graph_from_oriented_triangles(n, tris);
}

/// Seeded random instance: capacities in [1, cap_max] on every dart,
/// `source_count` distinct sources and one sink distinct from them.
inline Instance generate_instance(GraphKind kind, VertexId n, std::uint64_t seed, Capacity cap_max,
                                  VertexId source_count) {
  if (n < 2 || source_count < 1 || cap_max < 1) throw Error(ErrorCode::invalid_params, "need n >= 2, sources >= 1, cap_max >= 1");
  SplitRandom rng(seed);
  EmbeddedGraph graph;
  if (kind == GraphKind::grid) {
    const auto rows = static_cast<VertexId>(std::floor(std::sqrt(static_cast<double>(n))));
    const VertexId cols = (n + rows - 1) / rows;
    graph = grid_graph(rows, cols);
  } else if (n == 2) {
    graph = EmbeddedGraph::from_neighbor_rotations({{1}, {0}});
  } else {
    graph = random_triangulation(n, rng);
  }
  const VertexId vertices = graph.vertex_count();
  if (source_count + 1 > vertices) throw Error(ErrorCode::invalid_params, "too many sources for graph size");
  std::vector<Capacity> capacity(graph.dart_count());
  for (auto& c : capacity) c = rng.between(1, cap_max);
  std::vector<VertexId> order(vertices);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<VertexId> sources(order.begin(), order.begin() + source_count);
  std::vector<VertexId> sinks{order[source_count]};
  return make_instance(std::move(graph), std::move(capacity), std::move(sources), std::move(sinks));
}

}  // namespace planarflow
