#pragma once

#include <concepts>
#include <string>
#include <string_view>
#include <vector>

#include "planarflow/flow_state.hpp"

namespace planarflow {

/// An engine augments a FlowState from s to t until no residual s-t path
/// remains, returning the amount added. On return `reach` marks the
/// vertices residually reachable from s.
template <class E>
concept StFlowEngine = requires(E& engine, FlowState& f, VertexId s, VertexId t, std::vector<char>& reach) {
  { engine.augment(f, s, t, reach) } -> std::same_as<Capacity>;
};

/// Blocking-flow augmentation over BFS level graphs.
class DinicEngine {
 public:
  Capacity augment(FlowState& f, VertexId s, VertexId t, std::vector<char>& reach) {
    const VertexId n = f.vertex_count();
    level_.assign(n, -1);
    next_.assign(n, 0);
    Capacity total = 0;
    while (build_levels(f, s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      total += blocking_flow(f, s, t);
    }
    reach.assign(n, 0);
    for (VertexId v = 0; v < n; ++v) reach[v] = level_[v] >= 0;
    return total;
  }

 private:
  bool build_levels(const FlowState& f, VertexId s, VertexId t) {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    queue_.push_back(s);
    level_[s] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const VertexId v = queue_[head];
      if (level_[t] >= 0 && level_[v] >= level_[t]) break;
      for (DartId d : f.out_darts(v)) {
        const VertexId w = f.head(d);
        if (level_[w] < 0 && f.residual(d) > 0) {
          level_[w] = level_[v] + 1;
          queue_.push_back(w);
        }
      }
    }
    return level_[t] >= 0;
  }

  Capacity blocking_flow(FlowState& f, VertexId s, VertexId t) {
    Capacity total = 0;
    path_.clear();
    VertexId v = s;
    while (true) {
      if (v == t) {
        Capacity bottleneck = f.residual(path_.front());
        for (DartId d : path_) bottleneck = std::min(bottleneck, f.residual(d));
        std::size_t first_saturated = path_.size();
        for (std::size_t i = 0; i < path_.size(); ++i) {
          f.push(path_[i], bottleneck);
          if (first_saturated == path_.size() && f.residual(path_[i]) == 0) first_saturated = i;
        }
        total += bottleneck;
        path_.resize(first_saturated);
        v = path_.empty() ? s : f.head(path_.back());
        continue;
      }
      auto darts = f.out_darts(v);
      bool advanced = false;
      for (auto& i = next_[v]; i < darts.size(); ++i) {
        const DartId d = darts[i];
        const VertexId w = f.head(d);
        if (level_[w] == level_[v] + 1 && f.residual(d) > 0 && (w == t || level_[w] < level_[t])) {
          path_.push_back(d);
          v = w;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (v == s) break;
      level_[v] = -2;  // dead end for this phase
      const DartId back = path_.back();
      path_.pop_back();
      v = f.tail(back);
      ++next_[v];
    }
    return total;
  }

  std::vector<std::int32_t> level_;
  std::vector<std::size_t> next_;
  std::vector<VertexId> queue_;
  std::vector<DartId> path_;
};

/// Shortest augmenting paths, one path per search.
class EdmondsKarpEngine {
 public:
  Capacity augment(FlowState& f, VertexId s, VertexId t, std::vector<char>& reach) {
    const VertexId n = f.vertex_count();
    Capacity total = 0;
    std::vector<DartId> via(n);
    std::vector<VertexId> queue;
    while (true) {
      reach.assign(n, 0);
      std::fill(via.begin(), via.end(), kNoDart);
      queue.assign(1, s);
      reach[s] = 1;
      for (std::size_t i = 0; i < queue.size() && !reach[t]; ++i) {
        for (DartId d : f.out_darts(queue[i])) {
          const VertexId w = f.head(d);
          if (!reach[w] && f.residual(d) > 0) {
            reach[w] = 1;
            via[w] = d;
            queue.push_back(w);
          }
        }
      }
      if (!reach[t]) return total;
      Capacity bottleneck = f.residual(via[t]);
      for (VertexId x = t; x != s; x = f.tail(via[x])) bottleneck = std::min(bottleneck, f.residual(via[x]));
      for (VertexId x = t; x != s; x = f.tail(via[x])) f.push(via[x], bottleneck);
      total += bottleneck;
    }
  }
};

static_assert(StFlowEngine<DinicEngine>);
static_assert(StFlowEngine<EdmondsKarpEngine>);

enum class Engine { dinic, edmonds_karp };

inline Engine parse_engine(std::string_view name) {
  if (name == "dinic") return Engine::dinic;
  if (name == "edmonds-karp" || name == "edmonds_karp") return Engine::edmonds_karp;
  throw Error(ErrorCode::invalid_params, "unknown engine '" + std::string(name) + "'");
}

struct StFlowResult {
  Capacity value = 0;  // flow added by this call
  Cut min_cut;         // residual reachability from s
};

/// Augments `f` to a maximum s-t flow in its residual graph.
inline StFlowResult max_st_flow(FlowState& f, VertexId s, VertexId t, Engine engine = Engine::dinic) {
  if (s == t) throw Error(ErrorCode::invalid_params, "source equals sink");
  StFlowResult out;
  if (engine == Engine::dinic) {
    DinicEngine e;
    out.value = e.augment(f, s, t, out.min_cut.in_a);
  } else {
    EdmondsKarpEngine e;
    out.value = e.augment(f, s, t, out.min_cut.in_a);
  }
  return out;
}

/// Pushes at most `budget` units from p to t through a temporary source
/// attached to p by an arc of capacity `budget`. Returns the amount pushed;
/// excess(p) drops by exactly that amount.
inline Capacity bounded_push(FlowState& f, VertexId p, VertexId t, Capacity budget, Engine engine = Engine::dinic) {
  if (budget <= 0 || p == t) return 0;
  TemporaryScope scope(f);
  const VertexId s = f.add_temporary_vertex();
  const FaceId face = p < f.graph().vertex_count() && f.graph().degree(p) > 0
                          ? f.graph().face_of(f.graph().rotation(p).front())
                          : -1;
  f.add_temporary_edge(s, p, budget, 0, face);
  return max_st_flow(f, s, t, engine).value;
}

}  // namespace planarflow
