#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "planarflow/decomposition.hpp"
#include "planarflow/maxflow_st.hpp"
#include "planarflow/plem_io.hpp"

namespace planarflow {

/// Called after every max-flow step of sequential_saturation with the
/// sources whose inner loop has fully finished.
using SaturationStep = std::function<void(const FlowState& f, std::span<const VertexId> finished_sources)>;

/// Augments each source to each sink with a full max-flow call, sources in
/// `source_order` and sinks in `sink_order` (ascending when empty).
inline FlowState sequential_saturation(const Instance& inst, Engine engine = Engine::dinic,
                                       std::span<const VertexId> source_order = {},
                                       std::span<const VertexId> sink_order = {}, const SaturationStep& step = {}) {
  FlowState f(inst);
  const auto sources = source_order.empty() ? std::span<const VertexId>(inst.sources) : source_order;
  const auto sinks = sink_order.empty() ? std::span<const VertexId>(inst.sinks) : sink_order;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (VertexId t : sinks) {
      max_st_flow(f, sources[i], t, engine);
      if (step) step(f, sources.first(i));
    }
  }
  return f;
}

/// Max-flow calls on the given (source, sink) pairs in the given order.
inline FlowState pairwise_arbitrary_saturation(const Instance& inst, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                               Engine engine = Engine::dinic) {
  FlowState f(inst);
  for (auto [s, t] : pairs) max_st_flow(f, s, t, engine);
  return f;
}

struct SolveStats {
  std::size_t levels = 0;            // recursive calls that divided their graph
  std::size_t base_cases = 0;        // calls solved directly
  std::size_t pieces = 0;
  std::size_t max_depth = 0;
  std::size_t cycles_cancelled = 0;  // summed over all Phase 3 runs
  std::size_t cancel_runs_with_cycles = 0;
  std::size_t cut_violations = 0;    // recorded Phase 2 cuts that later lost saturation
};

/// Observation points inside the recursion. Every callback is optional.
struct SolveHooks {
  // After Phase 1: the piece-with-super-sinks instance and its solved flow.
  std::function<void(const Instance& sub, const FlowState& sub_flow, std::size_t depth)> after_phase1;
  // After Phase 2: the level instance, its state, and every source handled so far.
  std::function<void(const Instance& level, const FlowState& f, std::span<const VertexId> handled_sources,
                     std::size_t depth)>
      after_phase2;
  // After Phase 3, with the flow value before it ran.
  std::function<void(const Instance& level, const FlowState& f, Capacity value_before, std::size_t depth)>
      after_phase3;
};

struct SolveOptions {
  Engine engine = Engine::dinic;
  DivisionParams params;
  SolveHooks hooks;
  bool check_cuts = false;        // re-check every Phase 2 cut at the end of that phase
  std::ostream* trace = nullptr;  // PFLO snapshot of the top-level state after every phase
};

namespace detail {

class RecursiveSolver {
 public:
  RecursiveSolver(const SolveOptions& opt, SolveStats& stats) : opt_(opt), stats_(stats) {}

  FlowState solve(const Instance& inst, std::size_t depth) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    const VertexId n = inst.g().vertex_count();
    if (n <= opt_.params.r) {
      ++stats_.base_cases;
      return sequential_saturation(inst, opt_.engine);
    }
    const Piece whole = whole_graph_piece(inst);
    const Division division = divide(whole, opt_.params);
    ++stats_.levels;
    stats_.pieces += division.pieces.size();
    if (opt_.trace && depth == 0) {
      *opt_.trace << "# level depth=" << depth << " n=" << n << " sources=" << inst.sources.size()
                  << " sinks=" << inst.sinks.size() << " pieces=" << division.pieces.size() << '\n';
    }
    FlowState f(inst);
    std::vector<VertexId> handled;
    for (std::size_t i = 0; i < division.pieces.size(); ++i) {
      piece_maxflow(inst, division.pieces[i], f, handled, depth, i);
    }
    return f;
  }

 private:
  void snapshot(const Instance& level, const FlowState& f, std::size_t depth, std::size_t index, int phase) {
    if (!opt_.trace || depth != 0) return;
    *opt_.trace << "# depth=" << depth << " piece=" << index << " phase=" << phase << '\n';
    write_pflo(*opt_.trace, f.flows(), flow_value(f, level.sinks));
  }

  void piece_maxflow(const Instance& level, const Piece& piece, FlowState& f, std::vector<VertexId>& handled,
                     std::size_t depth, std::size_t index) {
    const EmbeddedGraph& pg = *piece.subgraph;

    // Phase 1: interior sources to the piece boundary, inside the piece.
    std::vector<VertexId> interior;
    for (VertexId v : piece.sources) {
      if (!piece.is_boundary(v)) interior.push_back(v);
    }
    if (!interior.empty()) {
      AugmentedPiece aug = attach_super_sinks(piece);
      std::vector<Capacity> cap(aug.graph.dart_count(), 0);
      Capacity sum = 0;
      for (DartId d = 0; d < pg.dart_count(); ++d) {
        cap[d] = f.residual(piece.parent_dart(d));
        sum += cap[d];
      }
      for (EdgeId e : aug.super_edges) cap[forward_dart(e)] = sum + 1;
      Instance sub{std::make_shared<const EmbeddedGraph>(std::move(aug.graph)), std::move(cap), interior,
                   aug.super_sinks};
      const FlowState sub_flow = solve(sub, depth + 1);
      if (opt_.hooks.after_phase1) opt_.hooks.after_phase1(sub, sub_flow, depth);
      for (DartId d = 0; d < pg.dart_count(); ++d) {
        if (sub_flow.flow(d) > 0) f.push(piece.parent_dart(d), sub_flow.flow(d));
      }
    }
    snapshot(level, f, depth, index, 1);

    // Phase 2: from each boundary vertex to each sink of the level.
    std::vector<Cut> cuts;
    for (VertexId b : piece.boundary) {
      const VertexId p = piece.vertex_map[b];
      if (std::binary_search(level.sinks.begin(), level.sinks.end(), p)) continue;
      const bool source = piece.is_source(b);
      for (VertexId t : level.sinks) {
        if (source) {
          auto result = max_st_flow(f, p, t, opt_.engine);
          if (opt_.check_cuts) cuts.push_back(std::move(result.min_cut));
        } else if (f.excess(p) > 0) {
          bounded_push(f, p, t, f.excess(p), opt_.engine);
        }
      }
    }
    for (const Cut& cut : cuts) {
      if (!check_cut_saturated(f, cut)) ++stats_.cut_violations;
    }
    for (VertexId s : piece.sources) handled.push_back(piece.vertex_map[s]);
    std::sort(handled.begin(), handled.end());
    handled.erase(std::unique(handled.begin(), handled.end()), handled.end());
    if (opt_.hooks.after_phase2) opt_.hooks.after_phase2(level, f, handled, depth);
    snapshot(level, f, depth, index, 2);

    // Phase 3: back to a flow, without changing its value.
    const Capacity value = flow_value(f, level.sinks);
    const std::size_t cycles = cancel_flow_cycles(f);
    stats_.cycles_cancelled += cycles;
    stats_.cancel_runs_with_cycles += cycles > 0;
    drain_excess(f, level.sources, level.sinks);
    if (opt_.hooks.after_phase3) opt_.hooks.after_phase3(level, f, value, depth);
    snapshot(level, f, depth, index, 3);
  }

  const SolveOptions& opt_;
  SolveStats& stats_;
};

}  // namespace detail

/// Maximum flow from all sources to all sinks by recursive division. At
/// most t = hole_bound + 1 sinks are accepted.
inline FlowState solve_recursive(const Instance& inst, const SolveOptions& options = {}, SolveStats* stats = nullptr) {
  options.params.validate();
  if (static_cast<int>(inst.sinks.size()) > options.params.t()) {
    throw Error(ErrorCode::too_many_sinks, std::to_string(inst.sinks.size()) + " sinks exceed t = " +
                                               std::to_string(options.params.t()));
  }
  SolveStats local;
  detail::RecursiveSolver solver(options, stats ? *stats : local);
  return solver.solve(inst, 0);
}

}  // namespace planarflow
