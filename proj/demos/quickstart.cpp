// Builds a small grid instance with three sources, solves it both ways and
// checks the result against the oracle.

#include <iostream>

#include "planarflow/msmf.hpp"
#include "planarflow/oracle.hpp"

using namespace planarflow;

int main() {
  const Instance inst = generate_instance(GraphKind::grid, 400, /*seed=*/7, /*cap_max=*/20, /*source_count=*/3);
  std::cout << "grid with " << inst.g().vertex_count() << " vertices, " << inst.g().edge_count() << " edges, "
            << inst.g().face_count() << " faces\n";

  SolveStats stats;
  const FlowState recursive = solve_recursive(inst, {}, &stats);
  const FlowState sequential = sequential_saturation(inst);
  std::cout << "recursive value  " << flow_value(recursive, inst.sinks) << " (" << stats.levels << " divided levels, "
            << stats.pieces << " pieces, " << stats.base_cases << " base cases)\n";
  std::cout << "sequential value " << flow_value(sequential, inst.sinks) << '\n';
  std::cout << "oracle value     " << oracle_value(inst) << '\n';

  const FlowReport report = validate_flow(inst, recursive);
  std::cout << (report.valid() ? "recursive flow is valid\n" : "recursive flow has violations\n");
  return report.valid() ? 0 : 1;
}
