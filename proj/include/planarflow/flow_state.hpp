#pragma once

#include <algorithm>
#include <cassert>
#include <deque>
#include <memory>
#include <span>
#include <vector>

#include "planarflow/instance.hpp"

namespace planarflow {

/// Per-dart flow over an embedded graph, kept in net-flow normal form: at
/// most one dart of an edge carries positive flow. Excess (inflow minus
/// outflow) is maintained per vertex.
///
/// Temporary vertices and edges can be appended on top of the graph (super
/// terminals for single-source reductions); they are removed again through
/// TemporaryScope. Ids of temporaries continue after the graph's ids.
class FlowState {
 public:
  FlowState(std::shared_ptr<const EmbeddedGraph> graph, std::vector<Capacity> capacity)
      : graph_(std::move(graph)), capacity_(std::move(capacity)) {
    const auto& g = *graph_;
    assert(static_cast<DartId>(capacity_.size()) == g.dart_count());
    flow_.assign(capacity_.size(), 0);
    excess_.assign(g.vertex_count(), 0);
    head_.resize(capacity_.size());
    for (DartId d = 0; d < g.dart_count(); ++d) head_[d] = g.head(d);
    out_.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      auto rot = g.rotation(v);
      out_[v].assign(rot.begin(), rot.end());
    }
  }

  explicit FlowState(const Instance& inst) : FlowState(inst.graph, inst.capacity) {}

  const EmbeddedGraph& graph() const { return *graph_; }
  const std::shared_ptr<const EmbeddedGraph>& graph_ptr() const { return graph_; }

  /// Vertex and dart counts including temporaries.
  VertexId vertex_count() const { return static_cast<VertexId>(excess_.size()); }
  DartId dart_count() const { return static_cast<DartId>(flow_.size()); }

  VertexId head(DartId d) const { return head_[d]; }
  VertexId tail(DartId d) const { return head_[twin(d)]; }
  std::span<const DartId> out_darts(VertexId v) const { return out_[v]; }

  Capacity capacity(DartId d) const { return capacity_[d]; }
  Capacity flow(DartId d) const { return flow_[d]; }
  Capacity excess(VertexId v) const { return excess_[v]; }
  Capacity residual(DartId d) const { return capacity_[d] - flow_[d] + flow_[twin(d)]; }

  /// Flows on the graph's own darts (temporaries excluded).
  std::span<const Capacity> flows() const { return {flow_.data(), static_cast<std::size_t>(graph_->dart_count())}; }
  std::span<const Capacity> capacities() const {
    return {capacity_.data(), static_cast<std::size_t>(graph_->dart_count())};
  }

  /// Sends `amount` <= residual(d) units along d, cancelling flow on the
  /// opposite dart first.
  void push(DartId d, Capacity amount) {
    assert(amount >= 0 && amount <= residual(d));
    const DartId r = twin(d);
    const Capacity cancel = std::min(amount, flow_[r]);
    flow_[r] -= cancel;
    flow_[d] += amount - cancel;
    excess_[tail(d)] -= amount;
    excess_[head(d)] += amount;
  }

  /// Overwrites one dart's flow without any normalisation; used to load
  /// external flow dumps and to inject faults in tests.
  void set_raw_flow(DartId d, Capacity value) {
    const Capacity delta = value - flow_[d];
    flow_[d] = value;
    excess_[tail(d)] -= delta;
    excess_[head(d)] += delta;
  }

  struct Mark {
    VertexId vertices;
    DartId darts;
  };
  Mark mark() const { return {vertex_count(), dart_count()}; }

  VertexId add_temporary_vertex() {
    excess_.push_back(0);
    out_.emplace_back();
    return vertex_count() - 1;
  }

  /// Adds edge (u, v); returns the dart u -> v. `face` records where the
  /// edge is drawn in the embedding; the flow machinery ignores it.
  DartId add_temporary_edge(VertexId u, VertexId v, Capacity cap_uv, Capacity cap_vu, FaceId face = -1) {
    const DartId d = dart_count();
    capacity_.push_back(cap_uv);
    capacity_.push_back(cap_vu);
    flow_.push_back(0);
    flow_.push_back(0);
    head_.push_back(v);
    head_.push_back(u);
    out_[u].push_back(d);
    out_[v].push_back(d + 1);
    temporary_faces_.push_back(face);
    return d;
  }

  FaceId temporary_face(DartId d) const { return temporary_faces_[(d - graph_->dart_count()) / 2]; }

  /// Removes everything added after `m`. Flow on a removed dart is treated
  /// as never having been sent: the excess it moved is returned to its tail.
  void rollback(Mark m) {
    for (DartId d = dart_count() - 1; d >= m.darts; --d) {
      if (flow_[d] != 0) {
        excess_[head(d)] -= flow_[d];
        excess_[tail(d)] += flow_[d];
      }
    }
    for (DartId d = dart_count() - 1; d >= m.darts; --d) {
      auto& list = out_[tail(d)];
      assert(!list.empty() && list.back() == d);
      list.pop_back();
    }
    capacity_.resize(m.darts);
    flow_.resize(m.darts);
    head_.resize(m.darts);
    temporary_faces_.resize((m.darts - graph_->dart_count()) / 2);
    excess_.resize(m.vertices);
    out_.resize(m.vertices);
  }

 private:
  std::shared_ptr<const EmbeddedGraph> graph_;
  std::vector<Capacity> capacity_;
  std::vector<Capacity> flow_;
  std::vector<Capacity> excess_;
  std::vector<VertexId> head_;
  std::vector<std::vector<DartId>> out_;
  std::vector<FaceId> temporary_faces_;
};

/// Scoped temporaries: everything added through the state while the scope
/// is alive is rolled back on destruction.
class TemporaryScope {
 public:
  explicit TemporaryScope(FlowState& f) : f_(f), mark_(f.mark()) {}
  TemporaryScope(const TemporaryScope&) = delete;
  TemporaryScope& operator=(const TemporaryScope&) = delete;
  ~TemporaryScope() { f_.rollback(mark_); }

 private:
  FlowState& f_;
  FlowState::Mark mark_;
};

/// Vertex bipartition (A, B); `in_a[v]` marks A.
struct Cut {
  std::vector<char> in_a;

  bool contains(VertexId v) const { return in_a[v] != 0; }
};

inline Capacity residual(const FlowState& f, DartId d) { return f.residual(d); }

/// Net inflow into the sink set.
inline Capacity flow_value(const FlowState& f, std::span<const VertexId> sinks) {
  Capacity total = 0;
  for (VertexId t : sinks) total += f.excess(t);
  return total;
}

inline std::vector<char> membership(VertexId n, std::span<const VertexId> vertices) {
  std::vector<char> in(n, 0);
  for (VertexId v : vertices) in[v] = 1;
  return in;
}

struct MaxPreflowCheck {
  bool maximal = true;
  std::vector<DartId> witness;  // residual path ending in a sink when !maximal
};

/// True iff no residual path leads to a sink from a source or from a
/// non-terminal vertex with positive excess.
inline MaxPreflowCheck is_max_preflow(const FlowState& f, std::span<const VertexId> sources,
                                      std::span<const VertexId> sinks) {
  const VertexId n = f.vertex_count();
  auto is_sink = membership(n, sinks);
  auto is_source = membership(n, sources);
  std::vector<DartId> via(n, kNoDart);
  std::vector<char> seen(n, 0);
  std::deque<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    if (is_sink[v]) continue;
    if (is_source[v] || f.excess(v) > 0) {
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (DartId d : f.out_darts(v)) {
      const VertexId w = f.head(d);
      if (seen[w] || f.residual(d) <= 0) continue;
      seen[w] = 1;
      via[w] = d;
      if (is_sink[w]) {
        MaxPreflowCheck out{false, {}};
        for (VertexId x = w; via[x] != kNoDart; x = f.tail(via[x])) out.witness.push_back(via[x]);
        std::reverse(out.witness.begin(), out.witness.end());
        return out;
      }
      queue.push_back(w);
    }
  }
  return {};
}

/// True iff every dart from A to B has zero residual capacity.
inline bool check_cut_saturated(const FlowState& f, const Cut& cut) {
  for (DartId d = 0; d < f.dart_count(); ++d) {
    if (cut.contains(f.tail(d)) && !cut.contains(f.head(d)) && f.residual(d) > 0) return false;
  }
  return true;
}

/// Cancels directed cycles in the support graph (darts with positive flow)
/// until it is acyclic. Excess is unchanged. Returns the number of cycles
/// cancelled.
inline std::size_t cancel_flow_cycles(FlowState& f) {
  const VertexId n = f.vertex_count();
  enum : char { white, gray, black };
  std::vector<char> color(n, white);
  std::vector<std::size_t> next_arc(n, 0);
  std::vector<DartId> path;  // darts of the current DFS path
  std::size_t cancelled = 0;

  for (VertexId root = 0; root < n; ++root) {
    if (color[root] != white) continue;
    std::vector<VertexId> stack{root};
    color[root] = gray;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      auto darts = f.out_darts(v);
      bool descended = false;
      while (next_arc[v] < darts.size()) {
        const DartId d = darts[next_arc[v]];
        if (f.flow(d) <= 0) {
          ++next_arc[v];
          continue;
        }
        const VertexId w = f.head(d);
        if (color[w] == black) {
          ++next_arc[v];
          continue;
        }
        if (color[w] == white) {
          color[w] = gray;
          path.push_back(d);
          stack.push_back(w);
          descended = true;
          break;
        }
        // Back edge: the cycle is the path suffix from w plus d.
        std::size_t w_index = stack.size() - 1;
        while (stack[w_index] != w) --w_index;
        const auto begin = path.begin() + static_cast<std::ptrdiff_t>(w_index);
        Capacity bottleneck = f.flow(d);
        for (auto it = begin; it != path.end(); ++it) bottleneck = std::min(bottleneck, f.flow(*it));
        f.push(twin(d), bottleneck);
        for (auto it = begin; it != path.end(); ++it) f.push(twin(*it), bottleneck);
        ++cancelled;
        // Unwind to the first dart that lost all its flow.
        auto cut = begin;
        while (cut != path.end() && f.flow(*cut) > 0) ++cut;
        while (path.end() != cut) {
          color[stack.back()] = white;
          stack.pop_back();
          path.pop_back();
        }
        descended = true;
        break;
      }
      if (!descended) {
        color[v] = black;
        stack.pop_back();
        if (!path.empty()) path.pop_back();
      }
    }
  }
  return cancelled;
}

/// Turns a preflow with acyclic support into a flow with the same value into
/// the sinks: vertices are visited in reverse topological order of the
/// support graph and each one's excess is removed from its incoming flow.
inline void drain_excess(FlowState& f, std::span<const VertexId> sources, std::span<const VertexId> sinks) {
  const VertexId n = f.vertex_count();
  std::vector<std::int32_t> indegree(n, 0);
  for (DartId d = 0; d < f.dart_count(); ++d) {
    if (f.flow(d) > 0) ++indegree[f.head(d)];
  }
  std::vector<VertexId> order;
  order.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (DartId d : f.out_darts(order[i])) {
      if (f.flow(d) > 0 && --indegree[f.head(d)] == 0) order.push_back(f.head(d));
    }
  }
  if (static_cast<VertexId>(order.size()) != n) throw Error(ErrorCode::cyclic_support, "flow support has a cycle");

  auto terminal = membership(n, sources);
  for (VertexId t : sinks) terminal[t] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (terminal[v]) continue;
    for (DartId out : f.out_darts(v)) {
      if (f.excess(v) <= 0) break;
      const DartId in = twin(out);
      if (f.flow(in) > 0) f.push(out, std::min(f.flow(in), f.excess(v)));
    }
  }
}

}  // namespace planarflow
