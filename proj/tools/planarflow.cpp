// planarflow: solve, verify, generate and benchmark planar max-flow instances.
//
//   planarflow solve   <in.plem> [-o out.pflo] [--algorithm recursive|sequential]
//   planarflow verify  <in.plem> [flow.pflo]
//   planarflow gen     --kind grid|triangulation -n N [--seed S] [-o out.plem]
//   planarflow bench   [--sizes 1000,10000,100000] [--seeds 1]
//   planarflow fig1    [--emit] [--search]
//
// Exit codes: 0 ok, 1 a verify check failed, 2 bad input or usage, 3 solver error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planarflow/msmf.hpp"
#include "planarflow/oracle.hpp"
#include "planarflow/plem_io.hpp"

using namespace planarflow;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PLANARFLOW_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("PLANARFLOW_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

Instance load_instance(const std::string& path) {
  try {
    return load_plem(path);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

FlowDump load_flow(const std::string& path, DartId darts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return read_pflo(in, darts);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

DivisionParams parse_params_flag(const std::string& text) {
  try {
    return DivisionParams::parse(text);
  } catch (const Error& e) {
    throw InputError(std::string("--params: ") + e.what());
  }
}

Engine parse_engine_flag(const std::string& text) {
  try {
    return parse_engine(text);
  } catch (const Error& e) {
    throw InputError(std::string("--engine: ") + e.what());
  }
}

FlowState run_solver(const Instance& inst, const std::string& algorithm, const SolveOptions& opt) {
  if (algorithm == "sequential") return sequential_saturation(inst, opt.engine);
  return solve_recursive(inst, opt);
}

int cmd_solve(const std::string& input, const std::string& output, const std::string& algorithm,
              const std::string& engine, const std::string& params, const std::string& trace_path) {
  const Instance inst = load_instance(input);
  SolveOptions opt;
  opt.engine = parse_engine_flag(engine);
  opt.params = parse_params_flag(params);
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw InputError("cannot write " + trace_path);
    opt.trace = &trace;
  }
  FlowState f = run_solver(inst, algorithm, opt);
  const Capacity value = flow_value(f, inst.sinks);
  if (output.empty() || output == "-") {
    write_pflo(std::cout, f.flows(), value);
  } else {
    std::ofstream out(output);
    if (!out) throw InputError("cannot write " + output);
    write_pflo(out, f.flows(), value);
  }
  return 0;
}

int cmd_verify(const std::string& input, const std::string& flow_path) {
  const Instance inst = load_instance(input);
  std::vector<Capacity> flow;
  std::optional<Capacity> claimed;
  if (flow_path.empty()) {
    FlowState f = solve_recursive(inst);
    flow.assign(f.flows().begin(), f.flows().end());
    claimed = flow_value(f, inst.sinks);
  } else {
    FlowDump dump = load_flow(flow_path, inst.g().dart_count());
    flow = std::move(dump.flow);
    claimed = dump.value;
  }
  const FlowReport report = validate_flow(inst, flow);
  const Capacity oracle = oracle_value(inst);
  int failures = 0;
  auto line = [&](bool ok, const std::string& check, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << check << ' ' << detail << '\n';
    failures += !ok;
  };
  for (const char* check : {"nonnegative", "capacity", "conservation"}) {
    std::size_t count = 0;
    std::string first;
    for (const auto& v : report.violations) {
      if (v.check == check) {
        if (count++ == 0) first = v.detail;
      }
    }
    line(count == 0, check, count == 0 ? "ok" : std::to_string(count) + " violations, first: " + first);
  }
  line(*claimed == report.value, "value",
       "claimed " + std::to_string(*claimed) + " computed " + std::to_string(report.value));
  line(report.value == oracle, "oracle", "value " + std::to_string(report.value) + " oracle " + std::to_string(oracle));
  return failures == 0 ? 0 : kExitFail;
}

int cmd_gen(const std::string& kind, VertexId n, std::uint64_t seed, Capacity cap_max, int sources,
            const std::string& output) {
  GraphKind k;
  if (kind == "grid") k = GraphKind::grid;
  else if (kind == "triangulation") k = GraphKind::triangulation;
  else throw InputError("--kind must be grid or triangulation");
  Instance inst = [&] {
    try {
      return generate_instance(k, n, seed, cap_max, sources);
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }();
  if (output.empty() || output == "-") {
    write_plem(std::cout, inst);
  } else {
    std::ofstream out(output);
    if (!out) throw InputError("cannot write " + output);
    write_plem(out, inst);
  }
  return 0;
}

// Least-squares slope of log(seconds) against log(n).
std::optional<double> fit_exponent(const std::vector<double>& n, const std::vector<double>& seconds) {
  if (n.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]), y = std::log(std::max(seconds[i], 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(n.size());
  const double denom = k * sxx - sx * sx;
  if (denom == 0) return std::nullopt;
  return (k * sxy - sx * sy) / denom;
}

int cmd_bench(const std::vector<VertexId>& sizes, int seeds, std::uint64_t seed, int sources, Capacity cap_max,
              const std::string& engine, const std::string& params) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw InputError("--sizes must be ascending");
  }
  SolveOptions opt;
  opt.engine = parse_engine_flag(engine);
  opt.params = parse_params_flag(params);
  std::vector<double> xs, ys;
  std::cout << std::setw(10) << "n" << std::setw(12) << "seconds" << std::setw(14) << "value" << '\n';
  for (VertexId n : sizes) {
    double total = 0;
    Capacity value_sum = 0;
    for (int k = 0; k < seeds; ++k) {
      const Instance inst = generate_instance(GraphKind::grid, n, seed + static_cast<std::uint64_t>(k), cap_max, sources);
      const auto start = std::chrono::steady_clock::now();
      FlowState f = solve_recursive(inst, opt);
      total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      value_sum += flow_value(f, inst.sinks);
    }
    const double mean = total / seeds;
    xs.push_back(static_cast<double>(n));
    ys.push_back(mean);
    std::cout << std::setw(10) << n << std::setw(12) << std::fixed << std::setprecision(4) << mean << std::setw(14)
              << value_sum << '\n';
  }
  const auto exponent = fit_exponent(xs, ys);
  std::cout << "exponent ";
  if (exponent) std::cout << std::setprecision(3) << *exponent << '\n';
  else std::cout << "n/a\n";
  return 0;
}

int cmd_fig1(bool emit, bool search) {
  const auto c = build_fig1_counterexample();
  if (emit) {
    write_plem(std::cout, c.instance);
    return 0;
  }
  const Capacity best = oracle_value(c.instance);
  const Capacity bad = flow_value(pairwise_arbitrary_saturation(c.instance, c.bad_order()), c.instance.sinks);
  const Capacity grouped = flow_value(pairwise_arbitrary_saturation(c.instance, c.grouped_order()), c.instance.sinks);
  std::cout << "sources s=" << c.s << " s'=" << c.s2 << " sinks t=" << c.t << " t'=" << c.t2 << '\n';
  std::cout << "maximum " << best << '\n';
  std::cout << "order (s,t),(s',t'),(s,t'),(s',t) " << bad << '\n';
  std::cout << "order (s,t),(s,t'),(s',t),(s',t') " << grouped << '\n';
  if (search) {
    const auto found = search_pair_order_counterexample(1);
    const bool same = to_plem(found.instance) == to_plem(c.instance);
    std::cout << "search " << (same ? "matches" : "differs from") << " the frozen instance\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar multiple-source maximum flow toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "Random seed (falls back to PLANARFLOW_SEED, then 1)");

  std::string input, output, flow_path, algorithm = "recursive", engine = "dinic", params, trace;
  auto* solve = app.add_subcommand("solve", "Solve an instance and print a PFLO flow dump");
  solve->add_option("input", input, "PLEM instance")->required();
  solve->add_option("-o,--output", output, "Write the flow here instead of stdout");
  solve->add_option("--algorithm", algorithm, "recursive or sequential")
      ->check(CLI::IsMember({"recursive", "sequential"}));
  solve->add_option("--engine", engine, "dinic or edmonds-karp");
  solve->add_option("--params", params, "Division parameters, e.g. p=4,c_p=0.5,r=32,t=6");
  solve->add_option("--trace", trace, "Write PFLO snapshots after each phase to this file");

  auto* verify = app.add_subcommand("verify", "Validate a flow and compare its value with the oracle");
  verify->add_option("input", input, "PLEM instance")->required();
  verify->add_option("flow", flow_path, "PFLO flow; solved on the fly when omitted");

  std::string kind = "grid";
  VertexId n = 100;
  Capacity cap_max = 100;
  int sources = 1;
  auto* gen = app.add_subcommand("gen", "Generate a random instance in PLEM");
  gen->add_option("--kind", kind, "grid or triangulation");
  gen->add_option("-n", n, "Vertex count")->required();
  gen->add_option("--cap-max", cap_max, "Capacities are drawn from [1, cap-max]");
  gen->add_option("--sources", sources, "Number of sources");
  gen->add_option("-o,--output", output, "Write here instead of stdout");

  std::vector<VertexId> sizes{1000, 10000, 100000};
  int seeds = 1;
  int bench_sources = 10;
  auto* bench = app.add_subcommand("bench", "Time the recursive solver on grids and fit a growth exponent");
  bench->add_option("--sizes", sizes, "Ascending vertex counts")->delimiter(',');
  bench->add_option("--seeds", seeds, "Instances per size")->check(CLI::PositiveNumber);
  bench->add_option("--sources", bench_sources, "Sources per instance");
  bench->add_option("--cap-max", cap_max, "Capacities are drawn from [1, cap-max]");
  bench->add_option("--engine", engine, "dinic or edmonds-karp");
  bench->add_option("--params", params, "Division parameters");

  bool emit = false, search = false;
  auto* fig1 = app.add_subcommand("fig1", "Show the pair-order counterexample");
  fig1->add_flag("--emit", emit, "Print the instance as PLEM");
  fig1->add_flag("--search", search, "Rerun the search and compare with the frozen instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    const std::uint64_t seed = resolve_seed(seed_flag);
    if (*solve) return cmd_solve(input, output, algorithm, engine, params, trace);
    if (*verify) return cmd_verify(input, flow_path);
    if (*gen) return cmd_gen(kind, n, seed, cap_max, sources, output);
    if (*bench) return cmd_bench(sizes, seeds, seed, bench_sources, cap_max, engine, params);
    if (*fig1) return cmd_fig1(emit, search);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
