#pragma once

#include <deque>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "planarflow/decomposition.hpp"
#include "planarflow/generators.hpp"
#include "planarflow/msmf.hpp"
#include "planarflow/plem_io.hpp"

namespace planarflow {

/// Max-flow value from all sources to all sinks via a super source and a
/// super sink, computed with shortest augmenting paths on a plain arc list.
/// Uses nothing from the embedding and nothing from FlowState.
inline Capacity oracle_value(const Instance& inst) {
  const auto& g = inst.g();
  const VertexId n = g.vertex_count();
  const VertexId source = n, sink = n + 1;
  struct Arc {
    VertexId to;
    Capacity residual;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> out(n + 2);
  auto add = [&](VertexId u, VertexId v, Capacity c) {
    out[u].push_back(arcs.size());
    arcs.push_back({v, c});
    out[v].push_back(arcs.size());
    arcs.push_back({u, 0});
  };
  Capacity infinite = 1;
  for (Capacity c : inst.capacity) infinite += c;
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (inst.capacity[d] > 0) add(g.tail(d), g.head(d), inst.capacity[d]);
  }
  for (VertexId s : inst.sources) add(source, s, infinite);
  for (VertexId t : inst.sinks) add(t, sink, infinite);

  Capacity total = 0;
  std::vector<std::size_t> via(n + 2);
  while (true) {
    std::vector<char> seen(n + 2, 0);
    std::deque<VertexId> queue{source};
    seen[source] = 1;
    while (!queue.empty() && !seen[sink]) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (std::size_t a : out[v]) {
        if (arcs[a].residual > 0 && !seen[arcs[a].to]) {
          seen[arcs[a].to] = 1;
          via[arcs[a].to] = a;
          queue.push_back(arcs[a].to);
        }
      }
    }
    if (!seen[sink]) return total;
    Capacity b = std::numeric_limits<Capacity>::max();
    for (VertexId v = sink; v != source; v = arcs[via[v] ^ 1].to) b = std::min(b, arcs[via[v]].residual);
    for (VertexId v = sink; v != source; v = arcs[via[v] ^ 1].to) {
      arcs[via[v]].residual -= b;
      arcs[via[v] ^ 1].residual += b;
    }
    total += b;
  }
}

struct FlowViolation {
  std::string check;  // "nonnegative", "capacity" or "conservation"
  std::string detail;
};

struct FlowReport {
  std::vector<FlowViolation> violations;
  Capacity value = 0;  // net flow into the sinks

  bool valid() const { return violations.empty(); }
};

/// Checks a per-dart flow vector against the instance: no negative flow,
/// no dart over capacity, conservation at every vertex that is neither a
/// source nor a sink.
inline FlowReport validate_flow(const Instance& inst, std::span<const Capacity> flow) {
  const auto& g = inst.g();
  FlowReport report;
  if (static_cast<DartId>(flow.size()) != g.dart_count()) {
    report.violations.push_back({"shape", "expected " + std::to_string(g.dart_count()) + " darts, got " +
                                              std::to_string(flow.size())});
    return report;
  }
  std::vector<Capacity> excess(g.vertex_count(), 0);
  for (DartId d = 0; d < g.dart_count(); ++d) {
    if (flow[d] < 0) {
      report.violations.push_back({"nonnegative", "dart " + std::to_string(d) + " carries " + std::to_string(flow[d])});
    }
    if (flow[d] > inst.capacity[d]) {
      report.violations.push_back({"capacity", "dart " + std::to_string(d) + " carries " + std::to_string(flow[d]) +
                                                   " > " + std::to_string(inst.capacity[d])});
    }
    excess[g.head(d)] += flow[d];
    excess[g.tail(d)] -= flow[d];
  }
  const auto source = membership(g.vertex_count(), inst.sources);
  const auto sink = membership(g.vertex_count(), inst.sinks);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (sink[v]) report.value += excess[v];
    if (!source[v] && !sink[v] && excess[v] != 0) {
      report.violations.push_back(
          {"conservation", "vertex " + std::to_string(v) + " has net inflow " + std::to_string(excess[v])});
    }
  }
  return report;
}

inline FlowReport validate_flow(const Instance& inst, const FlowState& f) { return validate_flow(inst, f.flows()); }

/// A witness that saturating (source, sink) pairs in an arbitrary order can
/// miss the maximum: sources {s, s2}, sinks {t, t2}, maximum value 3, and
/// the order (s,t), (s2,t2), (s,t2), (s2,t) ends at value 2.
struct PairOrderCounterexample {
  Instance instance;
  VertexId s = 0, s2 = 0, t = 0, t2 = 0;

  std::vector<std::pair<VertexId, VertexId>> bad_order() const { return {{s, t}, {s2, t2}, {s, t2}, {s2, t}}; }
  std::vector<std::pair<VertexId, VertexId>> grouped_order() const { return {{s, t}, {s, t2}, {s2, t}, {s2, t2}}; }
};

namespace detail {

inline bool is_pair_order_counterexample(const Instance& inst, VertexId s, VertexId s2, VertexId t, VertexId t2) {
  if (oracle_value(inst) != 3) return false;
  const std::vector<std::pair<VertexId, VertexId>> order{{s, t}, {s2, t2}, {s, t2}, {s2, t}};
  for (Engine engine : {Engine::dinic, Engine::edmonds_karp}) {
    if (flow_value(pairwise_arbitrary_saturation(inst, order, engine), inst.sinks) != 2) return false;
  }
  return true;
}

}  // namespace detail

/// Bounded search over connected planar graphs on 4..max_vertices vertices
/// (random triangulations with random edge subsets removed) and per-dart
/// capacities in {1, 2, 3}, trying every terminal assignment with s < s2 and
/// t < t2. The result must give 2 under both engines. Throws
/// Error(search_failed) when the budget runs out.
inline PairOrderCounterexample search_pair_order_counterexample(std::uint64_t seed = 1, VertexId max_vertices = 8,
                                                                int graphs_per_size = 400) {
  SplitRandom rng(seed);
  for (VertexId n = 4; n <= max_vertices; ++n) {
    for (int trial = 0; trial < graphs_per_size; ++trial) {
      auto tri = std::make_shared<const EmbeddedGraph>(random_triangulation(n, rng));
      Piece whole;
      whole.subgraph = tri;
      std::vector<EdgeId> keep;
      for (EdgeId e = 0; e < tri->edge_count(); ++e) {
        if (rng.below(3) != 0) keep.push_back(e);
      }
      auto comps = detail::edge_components(*tri, keep);
      if (comps.size() != 1) continue;
      Piece sub = make_subpiece(whole, keep);
      if (sub.size() != n) continue;
      std::vector<Capacity> cap(sub.subgraph->dart_count());
      for (auto& c : cap) c = rng.between(1, 3);
      for (VertexId s = 0; s < n; ++s) {
        for (VertexId s2 = s + 1; s2 < n; ++s2) {
          for (VertexId t = 0; t < n; ++t) {
            for (VertexId t2 = t + 1; t2 < n; ++t2) {
              if (t == s || t == s2 || t2 == s || t2 == s2) continue;
              Instance inst{sub.subgraph, cap, {s, s2}, {t, t2}};
              if (detail::is_pair_order_counterexample(inst, s, s2, t, t2)) return {std::move(inst), s, s2, t, t2};
            }
          }
        }
      }
    }
  }
  throw Error(ErrorCode::search_failed, "no pair-order counterexample within the search bounds");
}

/// The frozen result of search_pair_order_counterexample(1), kept in PLEM v1.
/// tests/fixtures/fig1.plem holds the same text.
inline constexpr const char* kFrozenPairOrderCounterexample = R"(plem 4 3
rot 0 0 2
rot 1 1 4
rot 2 5
rot 3 3
edge 0 0 1 1 1
edge 1 0 3 1 1
edge 2 1 2 3 1
src 0 2
snk 1 3
)";

inline PairOrderCounterexample build_fig1_counterexample() {
  PairOrderCounterexample out{parse_plem(kFrozenPairOrderCounterexample)};
  out.s = out.instance.sources.at(0);
  out.s2 = out.instance.sources.at(1);
  out.t = out.instance.sinks.at(0);
  out.t2 = out.instance.sinks.at(1);
  return out;
}

}  // namespace planarflow
