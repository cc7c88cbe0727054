#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "planarflow/generators.hpp"
#include "planarflow/plem_io.hpp"

using namespace planarflow;

TEST_CASE("grid instance of size 9 is a 3x3 grid", "[generators]") {
  auto inst = generate_instance(GraphKind::grid, 9, 1, 10, 2);
  REQUIRE(inst.g().vertex_count() == 9);
  REQUIRE(inst.g().edge_count() == 12);
  REQUIRE(inst.sources.size() == 2);
  REQUIRE(inst.sinks.size() == 1);
  for (Capacity c : inst.capacity) {
    REQUIRE(c >= 1);
    REQUIRE(c <= 10);
  }
  REQUIRE(to_plem(inst) == to_plem(generate_instance(GraphKind::grid, 9, 1, 10, 2)));
  REQUIRE(to_plem(inst) != to_plem(generate_instance(GraphKind::grid, 9, 2, 10, 2)));
}

TEST_CASE("triangulation instance revalidates through the parser", "[generators]") {
  auto inst = generate_instance(GraphKind::triangulation, 100, 7, 100, 5);
  REQUIRE(inst.g().vertex_count() == 100);
  REQUIRE(inst.g().edge_count() == 294);
  auto again = parse_plem(to_plem(inst));
  REQUIRE(again == inst);
}

TEST_CASE("degenerate generator parameters are rejected", "[generators]") {
  REQUIRE_THROWS_AS(generate_instance(GraphKind::grid, 1, 1, 10, 1), Error);
  REQUIRE_THROWS_AS(generate_instance(GraphKind::grid, 9, 1, 0, 1), Error);
  REQUIRE_THROWS_AS(generate_instance(GraphKind::grid, 9, 1, 10, 0), Error);
  REQUIRE_THROWS_AS(generate_instance(GraphKind::grid, 4, 1, 10, 4), Error);
}

TEST_CASE("PLEM round trip is byte identical", "[io]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (auto kind : {GraphKind::grid, GraphKind::triangulation}) {
      auto inst = generate_instance(kind, 30, seed, 20, 3);
      const auto text = to_plem(inst);
      auto parsed = parse_plem(text);
      REQUIRE(parsed == inst);
      REQUIRE(to_plem(parsed) == text);
    }
  }
}

TEST_CASE("PLEM fixtures round trip", "[io]") {
  for (const char* name : {"single_edge.plem", "fig1.plem"}) {
    std::ifstream in(std::string(PLANARFLOW_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto inst = parse_plem(buffer.str());
    REQUIRE(parse_plem(to_plem(inst)) == inst);
  }
}

TEST_CASE("PLEM parser accepts comments and reports bad input", "[io]") {
  const std::string text =
      "# a single edge\n"
      "plem 2 1\n"
      "rot 0 0   # dart 0 leaves vertex 0\n"
      "rot 1 1\n"
      "edge 0 0 1 9 0\n"
      "src 0\n"
      "snk 1\n";
  auto inst = parse_plem(text);
  REQUIRE(inst.capacity == std::vector<Capacity>{9, 0});
  REQUIRE(inst.sources == std::vector<VertexId>{0});

  auto code_of = [](const std::string& bad) {
    try {
      parse_plem(bad);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::search_failed;
  };
  REQUIRE(code_of("plem 2 1\nrot 0 0\nrot 1 1\nedge 0 0 1 x 0\nsrc 0\nsnk 1\n") == ErrorCode::parse_error);
  REQUIRE(code_of("plem 2 1\nrot 0 0\nedge 0 0 1 1 0\nsrc 0\nsnk 1\n") == ErrorCode::parse_error);
  REQUIRE(code_of("plem 2 1\nrot 0 0\nrot 1 1\nedge 0 0 1 1 0\nsnk 1\n") == ErrorCode::parse_error);
  REQUIRE(code_of("plem 2 1\nrot 0 0 5\nrot 1 1\nedge 0 0 1 1 0\nsrc 0\nsnk 1\n") == ErrorCode::dangling_dart);
  REQUIRE(code_of("plem 2 1\nrot 0 0\nrot 1 1\nedge 0 0 1 -1 0\nsrc 0\nsnk 1\n") == ErrorCode::invalid_params);
}

TEST_CASE("PFLO dump round trip", "[io]") {
  std::vector<Capacity> flow{0, 3, 2, 0, 0, 7};
  std::ostringstream os;
  write_pflo(os, flow, 5);
  REQUIRE(os.str() == "flow 1 3\nflow 2 2\nflow 5 7\nvalue 5\n");
  std::istringstream is(os.str());
  auto dump = read_pflo(is, 6);
  REQUIRE(dump.flow == flow);
  REQUIRE(dump.value == 5);
}
