#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "planarflow/embedded_graph.hpp"

namespace planarflow {

/// A flow problem: an embedded graph, per-dart capacities, and terminal sets.
/// Sources and sinks are kept sorted and duplicate-free.
struct Instance {
  std::shared_ptr<const EmbeddedGraph> graph;
  std::vector<Capacity> capacity;  // per dart
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;

  const EmbeddedGraph& g() const { return *graph; }

  Capacity total_capacity() const { return std::accumulate(capacity.begin(), capacity.end(), Capacity{0}); }

  friend bool operator==(const Instance& a, const Instance& b) {
    return *a.graph == *b.graph && a.capacity == b.capacity && a.sources == b.sources && a.sinks == b.sinks;
  }
};

namespace detail {

inline void normalize_terminals(std::vector<VertexId>& list, VertexId n, const char* what) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  for (VertexId v : list) {
    if (v < 0 || v >= n) throw Error(ErrorCode::invalid_params, std::string(what) + " vertex out of range");
  }
}

}  // namespace detail

inline Instance make_instance(EmbeddedGraph graph, std::vector<Capacity> capacity, std::vector<VertexId> sources,
                              std::vector<VertexId> sinks) {
  if (static_cast<DartId>(capacity.size()) != graph.dart_count()) {
    throw Error(ErrorCode::invalid_params, "capacity vector must have one entry per dart");
  }
  Capacity total = 0;
  for (Capacity c : capacity) {
    if (c < 0) throw Error(ErrorCode::invalid_params, "negative capacity");
    if (c > (Capacity{1} << 52) || total > (Capacity{1} << 60)) {
      throw Error(ErrorCode::invalid_params, "capacity too large");
    }
    total += c;
  }
  detail::normalize_terminals(sources, graph.vertex_count(), "source");
  detail::normalize_terminals(sinks, graph.vertex_count(), "sink");
  for (VertexId t : sinks) {
    if (std::binary_search(sources.begin(), sources.end(), t)) {
      throw Error(ErrorCode::invalid_params, "vertex " + std::to_string(t) + " is both source and sink");
    }
  }
  return Instance{std::make_shared<const EmbeddedGraph>(std::move(graph)), std::move(capacity), std::move(sources),
                  std::move(sinks)};
}

/// Same graph and capacities, different terminals.
inline Instance with_terminals(const Instance& base, std::vector<VertexId> sources, std::vector<VertexId> sinks) {
  detail::normalize_terminals(sources, base.g().vertex_count(), "source");
  detail::normalize_terminals(sinks, base.g().vertex_count(), "sink");
  return Instance{base.graph, base.capacity, std::move(sources), std::move(sinks)};
}

/// A capacity larger than any finite cut of the instance.
inline Capacity never_bottleneck(const std::vector<Capacity>& capacity) {
  return std::accumulate(capacity.begin(), capacity.end(), Capacity{0}) + 1;
}

}  // namespace planarflow
