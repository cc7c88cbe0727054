#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "planarflow/types.hpp"

namespace planarflow {

/// A connected, loop-free planar multigraph given combinatorially by a
/// rotation system. Edge e = (u, v) contributes dart 2e (u -> v) and dart
/// 2e + 1 (v -> u). Faces are the orbits of next_in_face(d) =
/// rot_next(twin(d)). Instances are immutable once built.
class EmbeddedGraph {
 public:
  EmbeddedGraph() = default;

  /// Validates and builds. `rotation[v]` lists the darts leaving v in cyclic
  /// order. Throws Error(dangling_dart) for unknown dart ids and
  /// Error(non_embedding) when the darts are not partitioned by the
  /// rotations or Euler's formula fails.
  static EmbeddedGraph build(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges,
                             std::vector<std::vector<DartId>> rotation) {
    EmbeddedGraph g;
    if (n < 1) throw Error(ErrorCode::non_embedding, "graph has no vertices");
    if (edges.empty()) throw Error(ErrorCode::non_embedding, "graph has no edges");
    if (static_cast<VertexId>(rotation.size()) != n) {
      throw Error(ErrorCode::non_embedding, "rotation count differs from vertex count");
    }
    const auto m = static_cast<EdgeId>(edges.size());
    const DartId darts = 2 * m;
    g.n_ = n;
    g.tail_.resize(darts);
    for (EdgeId e = 0; e < m; ++e) {
      auto [u, v] = edges[e];
      if (u < 0 || u >= n || v < 0 || v >= n) {
        throw Error(ErrorCode::non_embedding, "edge " + std::to_string(e) + " has an unknown endpoint");
      }
      if (u == v) throw Error(ErrorCode::self_loop, "edge " + std::to_string(e) + " is a self-loop");
      g.tail_[forward_dart(e)] = u;
      g.tail_[backward_dart(e)] = v;
    }

    g.rot_next_.assign(darts, kNoDart);
    g.rot_prev_.assign(darts, kNoDart);
    std::vector<char> seen(darts, 0);
    for (VertexId v = 0; v < n; ++v) {
      auto& rot = rotation[v];
      for (DartId d : rot) {
        if (d < 0 || d >= darts) {
          throw Error(ErrorCode::dangling_dart,
                      "rotation of vertex " + std::to_string(v) + " names dart " + std::to_string(d));
        }
        if (seen[d]) throw Error(ErrorCode::non_embedding, "dart " + std::to_string(d) + " listed twice");
        if (g.tail_[d] != v) {
          throw Error(ErrorCode::non_embedding,
                      "dart " + std::to_string(d) + " listed at vertex " + std::to_string(v) +
                          " but leaves vertex " + std::to_string(g.tail_[d]));
        }
        seen[d] = 1;
      }
      // Canonical form: each rotation starts with its smallest dart.
      std::rotate(rot.begin(), std::min_element(rot.begin(), rot.end()), rot.end());
      for (std::size_t i = 0; i < rot.size(); ++i) {
        g.rot_next_[rot[i]] = rot[(i + 1) % rot.size()];
        g.rot_prev_[rot[(i + 1) % rot.size()]] = rot[i];
      }
    }
    for (DartId d = 0; d < darts; ++d) {
      if (!seen[d]) throw Error(ErrorCode::non_embedding, "dart " + std::to_string(d) + " missing from rotations");
    }
    g.rotation_ = std::move(rotation);

    if (!g.connected()) throw Error(ErrorCode::not_connected, "graph is disconnected");
    g.trace_faces();
    const long long euler = static_cast<long long>(n) - m + g.face_count();
    if (euler != 2) {
      throw Error(ErrorCode::non_embedding, "Euler characteristic " + std::to_string(euler) + " != 2");
    }
    return g;
  }

  /// Convenience builder for simple graphs: `neighbors[v]` lists the
  /// neighbours of v in rotation order. Edge ids follow first appearance
  /// while scanning vertices in ascending order.
  static EmbeddedGraph from_neighbor_rotations(const std::vector<std::vector<VertexId>>& neighbors) {
    const auto n = static_cast<VertexId>(neighbors.size());
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::vector<DartId>> rotation(n);
    std::vector<std::vector<std::pair<VertexId, DartId>>> pending(n);  // (u, dart leaving v towards u)
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId u : neighbors[v]) {
        if (u < 0 || u >= n) throw Error(ErrorCode::non_embedding, "unknown neighbour");
        if (u == v) throw Error(ErrorCode::self_loop, "self-loop at vertex " + std::to_string(v));
        DartId d = kNoDart;
        if (u < v) {
          auto& list = pending[v];
          auto it = std::find_if(list.begin(), list.end(), [&](const auto& p) { return p.first == u; });
          if (it == list.end()) throw Error(ErrorCode::non_embedding, "asymmetric neighbour lists");
          d = it->second;
          list.erase(it);
        } else {
          const auto e = static_cast<EdgeId>(edges.size());
          edges.emplace_back(v, u);
          d = forward_dart(e);
          pending[u].emplace_back(v, backward_dart(e));
        }
        rotation[v].push_back(d);
      }
    }
    for (const auto& list : pending) {
      if (!list.empty()) throw Error(ErrorCode::non_embedding, "asymmetric neighbour lists");
    }
    return build(n, std::move(edges), std::move(rotation));
  }

  VertexId vertex_count() const noexcept { return n_; }
  EdgeId edge_count() const noexcept { return static_cast<EdgeId>(tail_.size() / 2); }
  DartId dart_count() const noexcept { return static_cast<DartId>(tail_.size()); }
  FaceId face_count() const noexcept { return static_cast<FaceId>(face_start_.size()) - 1; }

  VertexId tail(DartId d) const { return tail_[d]; }
  VertexId head(DartId d) const { return tail_[twin(d)]; }
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const {
    return {tail_[forward_dart(e)], tail_[backward_dart(e)]};
  }

  std::span<const DartId> rotation(VertexId v) const { return rotation_[v]; }
  std::size_t degree(VertexId v) const { return rotation_[v].size(); }
  DartId rot_next(DartId d) const { return rot_next_[d]; }
  DartId rot_prev(DartId d) const { return rot_prev_[d]; }
  DartId next_in_face(DartId d) const { return rot_next_[twin(d)]; }

  FaceId face_of(DartId d) const { return face_of_[d]; }
  std::span<const DartId> face(FaceId f) const {
    return {face_darts_.data() + face_start_[f], face_darts_.data() + face_start_[f + 1]};
  }
  /// All face cycles, each as its dart sequence.
  std::vector<std::vector<DartId>> faces() const {
    std::vector<std::vector<DartId>> out;
    out.reserve(face_count());
    for (FaceId f = 0; f < face_count(); ++f) {
      auto span = face(f);
      out.emplace_back(span.begin(), span.end());
    }
    return out;
  }

  /// Edge list in id order, as accepted by build().
  std::vector<std::pair<VertexId, VertexId>> edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> out(edge_count());
    for (EdgeId e = 0; e < edge_count(); ++e) out[e] = endpoints(e);
    return out;
  }
  const std::vector<std::vector<DartId>>& rotations() const noexcept { return rotation_; }

  friend bool operator==(const EmbeddedGraph& a, const EmbeddedGraph& b) {
    return a.n_ == b.n_ && a.tail_ == b.tail_ && a.rotation_ == b.rotation_;
  }

 private:
  bool connected() const {
    std::vector<char> seen(n_, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    VertexId count = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (DartId d : rotation_[v]) {
        VertexId w = head(d);
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

  void trace_faces() {
    const DartId darts = dart_count();
    face_of_.assign(darts, -1);
    face_darts_.clear();
    face_darts_.reserve(darts);
    face_start_.assign(1, 0);
    for (DartId start = 0; start < darts; ++start) {
      if (face_of_[start] >= 0) continue;
      const FaceId f = face_count();
      DartId d = start;
      do {
        if (face_of_[d] >= 0) throw Error(ErrorCode::non_embedding, "face traversal revisits a dart");
        face_of_[d] = f;
        face_darts_.push_back(d);
        d = next_in_face(d);
      } while (d != start);
      face_start_.push_back(static_cast<std::int32_t>(face_darts_.size()));
    }
  }

  VertexId n_ = 0;
  std::vector<VertexId> tail_;
  std::vector<std::vector<DartId>> rotation_;
  std::vector<DartId> rot_next_;
  std::vector<DartId> rot_prev_;
  std::vector<FaceId> face_of_;
  std::vector<DartId> face_darts_;
  std::vector<std::int32_t> face_start_{0};
};

}  // namespace planarflow
