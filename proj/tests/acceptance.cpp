// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when a gated criterion fails; the scaling line is reported only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "planarflow/msmf.hpp"
#include "planarflow/oracle.hpp"
#include "test_support.hpp"

using namespace planarflow;
using namespace planarflow::testing;

namespace {

int gated_failures = 0;

void report(bool ok, int id, const std::string& name, const std::string& detail, bool gated = true) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << ' ' << name << (gated ? "" : " (soft)") << ": " << detail << '\n';
  if (!ok && gated) ++gated_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Corpus shared by criteria 1, 4 and 6: grids and triangulations, n <= 200,
// capacities <= 100, 1..10 sources, one sink.
Instance corpus_instance(std::uint64_t seed) {
  SplitRandom rng(seed * 7919);
  const auto n = static_cast<VertexId>(rng.between(12, 200));
  const int sources = static_cast<int>(rng.between(1, 10));
  return generate_instance(seed % 2 ? GraphKind::grid : GraphKind::triangulation, n, seed, 100, sources);
}

std::vector<VertexId> shuffled(std::vector<VertexId> v, SplitRandom& rng) {
  rng.shuffle(v);
  return v;
}

void criterion_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int agree = 0;
  const int total = 500;
  std::string first_bad;
  for (std::uint64_t seed = 1; seed <= total; ++seed) {
    const Instance inst = corpus_instance(seed);
    const Capacity oracle = oracle_value(inst);
    const Capacity recursive = flow_value(solve_recursive(inst), inst.sinks);
    const Capacity sequential = flow_value(sequential_saturation(inst), inst.sinks);
    if (recursive == oracle && sequential == oracle) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = " first mismatch seed " + std::to_string(seed);
    }
  }
  std::ostringstream os;
  os << agree << "/" << total << " instances with recursive == sequential == oracle in " << std::fixed
     << std::setprecision(1) << seconds_since(start) << "s" << first_bad;
  report(agree == total, 1, "oracle equivalence", os.str());
}

void criterion_order_invariance() {
  int consistent = 0;
  const int total = 100;
  for (std::uint64_t seed = 1; seed <= total; ++seed) {
    Instance base = generate_instance(seed % 2 ? GraphKind::grid : GraphKind::triangulation, 60 + seed % 80,
                                      seed + 10000, 50, 6);
    // Two sinks so that the sink order is exercised too.
    SplitRandom rng(seed);
    std::vector<VertexId> others;
    for (VertexId v = 0; v < base.g().vertex_count(); ++v) {
      if (!std::binary_search(base.sources.begin(), base.sources.end(), v) && v != base.sinks[0]) others.push_back(v);
    }
    const Instance inst = with_terminals(base, base.sources, {base.sinks[0], others[rng.below(others.size())]});
    std::set<Capacity> values;
    for (int k = 0; k < 5; ++k) {
      const auto sources = shuffled(inst.sources, rng);
      const auto sinks = shuffled(inst.sinks, rng);
      values.insert(flow_value(sequential_saturation(inst, Engine::dinic, sources, sinks), inst.sinks));
    }
    consistent += values.size() == 1 && *values.begin() == oracle_value(inst);
  }
  report(consistent == total, 2, "sequential saturation order invariance",
         std::to_string(consistent) + "/" + std::to_string(total) + " instances identical across 5 orders");
}

void criterion_pair_order() {
  const auto c = build_fig1_counterexample();
  const Capacity best = oracle_value(c.instance);
  const Capacity bad = flow_value(pairwise_arbitrary_saturation(c.instance, c.bad_order()), c.instance.sinks);
  const Capacity recursive = flow_value(solve_recursive(c.instance), c.instance.sinks);
  report(best == 3 && bad == 2 && recursive == 3, 3, "pair-order counterexample",
         "maximum " + std::to_string(best) + " (expected 3), order (s,t),(s',t'),(s,t'),(s',t) gives " +
             std::to_string(bad) + " (expected 2), recursive " + std::to_string(recursive));
}

// Criteria 4 and 6 observe the same solves of the corpus.
void criteria_phase_invariants() {
  std::size_t maximality_checked = 0, maximality_agree = 0, non_maximal_cases = 0;
  std::size_t phase3_checked = 0, phase3_ok = 0;
  auto maximality = [&](const Instance& level, const FlowState& f, std::span<const VertexId> sources) {
    const bool maximal = is_max_preflow(f, sources, level.sinks).maximal;
    const Capacity best = oracle_value(with_terminals(level, {sources.begin(), sources.end()}, level.sinks));
    const bool at_best = flow_value(f, level.sinks) == best;
    ++maximality_checked;
    maximality_agree += maximal == at_best;
    non_maximal_cases += !maximal;
  };
  SolveOptions opt;
  opt.params.r = 16;
  opt.hooks.after_phase2 = [&](const Instance& level, const FlowState& f, std::span<const VertexId> handled,
                               std::size_t) { maximality(level, f, handled); };
  opt.hooks.after_phase3 = [&](const Instance& level, const FlowState& f, Capacity before, std::size_t) {
    ++phase3_checked;
    phase3_ok += validate_flow(level, f).valid() && flow_value(f, level.sinks) == before;
  };
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const Instance inst = corpus_instance(seed);
    solve_recursive(inst, opt);
    // Intermediate sequential states, where the current source is usually
    // not yet saturated, exercise the other direction of the equivalence.
    if (seed % 5 == 0) {
      sequential_saturation(inst, Engine::dinic, {}, {}, [&](const FlowState& f, std::span<const VertexId> done) {
        std::vector<VertexId> with_current(done.begin(), done.end());
        with_current.push_back(inst.sources[done.size()]);
        std::sort(with_current.begin(), with_current.end());
        maximality(inst, f, with_current);
      });
      // A fresh state is a preflow that is maximal only when the sources cannot reach the sink.
      maximality(inst, FlowState(inst), inst.sources);
    }
  }
  report(maximality_checked > 0 && maximality_agree == maximality_checked && non_maximal_cases > 0, 4,
         "max-preflow check matches the oracle both ways",
         std::to_string(maximality_agree) + "/" + std::to_string(maximality_checked) + " states agree (" +
             std::to_string(non_maximal_cases) + " non-maximal)");
  report(phase3_checked > 0 && phase3_ok == phase3_checked, 6, "preflow to flow conversion",
         std::to_string(phase3_ok) + "/" + std::to_string(phase3_checked) +
             " piece solves end in a valid flow with unchanged value");
}

void criterion_cut_persistence() {
  int violations = 0, augmentations = 0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    SplitRandom rng(static_cast<std::uint64_t>(trial) + 5000);
    const Instance inst = generate_instance(trial % 2 ? GraphKind::grid : GraphKind::triangulation,
                                            static_cast<VertexId>(rng.between(10, 80)), trial + 5000, 20, 1);
    FlowState f(inst);
    const auto result = max_st_flow(f, inst.sources[0], inst.sinks[0]);
    std::vector<VertexId> b_side;
    for (VertexId v = 0; v < f.vertex_count(); ++v) {
      if (!result.min_cut.contains(v)) b_side.push_back(v);
    }
    if (!check_cut_saturated(f, result.min_cut)) ++violations;
    for (int k = 0; k < 8 && b_side.size() >= 2; ++k) {
      const VertexId u = b_side[rng.below(b_side.size())], v = b_side[rng.below(b_side.size())];
      if (u == v) continue;
      auto path = residual_path(f, u, v);
      if (path.empty()) continue;
      const Capacity amount = rng.between(1, bottleneck(f, path));
      for (DartId d : path) f.push(d, amount);
      ++augmentations;
    }
    if (!check_cut_saturated(f, result.min_cut)) ++violations;
  }
  report(violations == 0, 5, "saturated cut persists under augmentations inside B",
         std::to_string(violations) + " violations over " + std::to_string(trials) + " trials, " +
             std::to_string(augmentations) + " augmentations");
}

struct SeparatorCheck {
  bool simple_cycle = true;
  bool balanced = true;
};

SeparatorCheck check_separator(const EmbeddedGraph& g, const std::vector<std::int64_t>& weights) {
  const CycleSeparator sep = cycle_separator(g, weights);
  const Triangulation tri = triangulate(g);
  SeparatorCheck out;
  std::set<std::pair<VertexId, VertexId>> adjacent;
  for (EdgeId e = 0; e < tri.graph.edge_count(); ++e) {
    auto [u, v] = tri.graph.endpoints(e);
    adjacent.insert({std::min(u, v), std::max(u, v)});
  }
  std::set<VertexId> distinct(sep.cycle.begin(), sep.cycle.end());
  out.simple_cycle = distinct.size() == sep.cycle.size() && sep.cycle.size() >= 3;
  for (std::size_t i = 0; i < sep.cycle.size() && out.simple_cycle; ++i) {
    const VertexId a = sep.cycle[i], b = sep.cycle[(i + 1) % sep.cycle.size()];
    out.simple_cycle = adjacent.count({std::min(a, b), std::max(a, b)}) == 1;
  }
  std::int64_t in = 0, outw = 0, total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    total += weights[v];
    if (sep.side[v] == 1) in += weights[v];
    if (sep.side[v] == 2) outw += weights[v];
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (sep.side[u] * sep.side[v] == 2) out.balanced = false;
  }
  out.balanced = out.balanced && 3 * in <= 2 * total && 3 * outw <= 2 * total;
  return out;
}

void criterion_division_bounds() {
  int violations = 0, separators = 0, pieces = 0;
  double worst_boundary_ratio = 0;
  DivisionParams strict;
  strict.c_p = 0.2;
  strict.hole_bound = 3;
  std::ostringstream detail;
  for (VertexId n : {100, 1000, 10000}) {
    const Instance inst = generate_instance(GraphKind::grid, n, 17, 100, 10);
    const auto& g = inst.g();
    // Separators under the three weightings divide() uses.
    const Piece whole = whole_graph_piece(inst);
    std::vector<std::int64_t> uniform(g.vertex_count(), 1), boundary(g.vertex_count(), 0), sixths(g.vertex_count(), 0);
    for (VertexId v : whole.boundary) boundary[v] = 1;
    for (VertexId v = 0; v < g.vertex_count(); v += std::max<VertexId>(1, n / 6)) sixths[v] = 1;
    for (const auto* w : {&uniform, &boundary, &sixths}) {
      const auto check = check_separator(g, *w);
      ++separators;
      violations += !check.simple_cycle + !check.balanced;
    }
    // Grids round n up to a full rectangle, so the bounds use the real size.
    const double size = g.vertex_count();
    detail << "n=" << g.vertex_count() << ":";
    for (const DivisionParams& params : {DivisionParams{}, strict}) {
      const Division division = divide(whole, params);
      for (const Piece& p : division.pieces) {
        ++pieces;
        const double limit = params.boundary_coeff * std::sqrt(params.c_p * size);
        violations += p.size() > static_cast<VertexId>(std::floor(params.c_p * size));
        violations += static_cast<int>(p.holes.size()) > params.hole_bound;
        violations += static_cast<double>(p.boundary.size()) > limit;
        worst_boundary_ratio =
            std::max(worst_boundary_ratio, p.boundary.size() / std::sqrt(static_cast<double>(p.size())));
      }
      detail << ' ' << division.pieces.size();
    }
    detail << " pieces; ";
  }
  detail << separators << " separators, " << pieces << " pieces (c_p 0.5 t 6, c_p 0.2 t 4), " << violations
         << " violations, max boundary/sqrt(size) " << std::fixed << std::setprecision(2) << worst_boundary_ratio
         << " (b=" << DivisionParams{}.boundary_coeff << ")";
  report(violations == 0, 7, "separator and division bounds on grids", detail.str());
}

void criterion_scaling() {
  std::vector<double> xs, ys;
  std::ostringstream detail;
  for (VertexId n : {1000, 10000, 100000}) {
    const Instance inst = generate_instance(GraphKind::grid, n, 1, 100, 10);
    const auto start = std::chrono::steady_clock::now();
    solve_recursive(inst);
    const double t = seconds_since(start);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(std::max(t, 1e-9)));
    detail << "n=" << n << " " << std::fixed << std::setprecision(3) << t << "s, ";
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double num = 0, den = 0;
  for (int i = 0; i < 3; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  const double exponent = num / den;
  detail << "fitted exponent " << std::setprecision(2) << exponent << " (target <= 1.9)";
  report(exponent <= 1.9, 8, "scaling on grids", detail.str(), false);
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_order_invariance();
  criterion_pair_order();
  criteria_phase_invariants();
  criterion_cut_persistence();
  criterion_division_bounds();
  criterion_scaling();
  return gated_failures == 0 ? 0 : 1;
}
