#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "planarflow/generators.hpp"

using namespace planarflow;

namespace {

// Counts faces straight from neighbour rotation lists: the face successor of
// (u -> v) is (v -> w) where w follows u in v's list.
int count_faces_naive(const std::vector<std::vector<VertexId>>& nbrs) {
  std::set<std::pair<VertexId, VertexId>> visited;
  int faces = 0;
  for (VertexId u = 0; u < static_cast<VertexId>(nbrs.size()); ++u) {
    for (VertexId v : nbrs[u]) {
      if (visited.count({u, v})) continue;
      ++faces;
      VertexId a = u, b = v;
      while (!visited.count({a, b})) {
        visited.insert({a, b});
        const auto& around = nbrs[b];
        auto it = std::find(around.begin(), around.end(), a);
        ++it;
        if (it == around.end()) it = around.begin();
        a = b;
        b = *it;
      }
    }
  }
  return faces;
}

std::vector<std::vector<VertexId>> grid_neighbors(int k) {
  std::vector<std::vector<VertexId>> nbrs(k * k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      auto& l = nbrs[r * k + c];
      if (c + 1 < k) l.push_back(r * k + c + 1);
      if (r + 1 < k) l.push_back((r + 1) * k + c);
      if (c > 0) l.push_back(r * k + c - 1);
      if (r > 0) l.push_back((r - 1) * k + c);
    }
  }
  return nbrs;
}

void check_partition(const EmbeddedGraph& g) {
  std::vector<int> hits(g.dart_count(), 0);
  for (FaceId f = 0; f < g.face_count(); ++f) {
    for (DartId d : g.face(f)) {
      ++hits[d];
      REQUIRE(g.face_of(d) == f);
    }
  }
  for (int h : hits) REQUIRE(h == 1);
  std::vector<int> rot_hits(g.dart_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (DartId d : g.rotation(v)) {
      ++rot_hits[d];
      REQUIRE(g.tail(d) == v);
    }
  }
  for (int h : rot_hits) REQUIRE(h == 1);
  REQUIRE(g.vertex_count() - g.edge_count() + g.face_count() == 2);
}

}  // namespace

TEST_CASE("triangle has two faces of length three", "[planar_core]") {
  auto g = EmbeddedGraph::from_neighbor_rotations({{1, 2}, {2, 0}, {0, 1}});
  REQUIRE(g.face_count() == 2);
  for (const auto& f : g.faces()) REQUIRE(f.size() == 3);
  check_partition(g);
}

TEST_CASE("single edge has one face of two darts", "[planar_core]") {
  auto g = EmbeddedGraph::build(2, {{0, 1}}, {{0}, {1}});
  REQUIRE(g.face_count() == 1);
  REQUIRE(g.face(0).size() == 2);
  check_partition(g);
}

TEST_CASE("3x3 grid face count matches the naive traversal", "[planar_core]") {
  auto nbrs = grid_neighbors(3);
  const int expected = count_faces_naive(nbrs);
  REQUIRE(expected == 5);
  auto g = EmbeddedGraph::from_neighbor_rotations(nbrs);
  REQUIRE(g.face_count() == expected);
  REQUIRE(grid_graph(3, 3).face_count() == expected);
  check_partition(g);
}

TEST_CASE("random triangulations satisfy Euler", "[planar_core]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SplitRandom rng(seed);
    auto g = random_triangulation(50, rng);
    REQUIRE(g.vertex_count() == 50);
    REQUIRE(g.edge_count() == 3 * 50 - 6);
    REQUIRE(g.face_count() == 2 - g.vertex_count() + g.edge_count());
    for (const auto& f : g.faces()) REQUIRE(f.size() == 3);
    check_partition(g);
  }
}

TEST_CASE("build rejects malformed embeddings", "[planar_core]") {
  SECTION("unknown dart") {
    REQUIRE_THROWS_MATCHES(EmbeddedGraph::build(2, {{0, 1}}, {{0, 7}, {1}}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::dangling_dart; }));
  }
  SECTION("dart at the wrong vertex") {
    REQUIRE_THROWS_AS(EmbeddedGraph::build(2, {{0, 1}}, {{1}, {0}}), Error);
  }
  SECTION("missing dart") {
    REQUIRE_THROWS_AS(EmbeddedGraph::build(2, {{0, 1}}, {{0}, {}}), Error);
  }
  SECTION("self loop") {
    try {
      EmbeddedGraph::build(1, {{0, 0}}, {{0, 1}});
      FAIL("expected throw");
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::self_loop);
    }
  }
  SECTION("disconnected") {
    try {
      EmbeddedGraph::build(4, {{0, 1}, {2, 3}}, {{0}, {1}, {2}, {3}});
      FAIL("expected throw");
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::not_connected);
    }
  }
  SECTION("non-planar rotation of K4 fails Euler") {
    // K4 with rotations that yield a torus-like embedding.
    try {
      EmbeddedGraph::from_neighbor_rotations({{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}});
      FAIL("expected throw");
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::non_embedding);
    }
  }
}

TEST_CASE("face successor is a permutation of the darts", "[planar_core]") {
  SplitRandom rng(3);
  auto g = random_triangulation(40, rng);
  std::vector<int> image(g.dart_count(), 0);
  for (DartId d = 0; d < g.dart_count(); ++d) ++image[g.next_in_face(d)];
  for (int c : image) REQUIRE(c == 1);
}

TEST_CASE("parallel edges are allowed", "[planar_core]") {
  // Two parallel edges between 0 and 1 bound a digon.
  auto g = EmbeddedGraph::build(2, {{0, 1}, {0, 1}}, {{0, 2}, {1, 3}});
  REQUIRE(g.face_count() == 2);
  check_partition(g);
}
